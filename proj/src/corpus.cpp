#include "univalence/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

namespace univ {

FinCatPtr finset_base() {
  static const FinCatPtr base = std::make_shared<const FinCat>(terminal_category());
  return base;
}

FinCatPtr group_base(const FinGroup& g) {
  const auto n = static_cast<Index>(g.order());
  std::vector<Index> comp(static_cast<std::size_t>(n) * n);
  for (Index f = 0; f < n; ++f)
    for (Index h = 0; h < n; ++h) comp[static_cast<std::size_t>(f) * n + h] = g.mul(h, f);
  return std::make_shared<const FinCat>(std::vector<std::string>{"*"}, g.names(), std::vector<Index>(n, 0),
                                        std::vector<Index>(n, 0), std::vector<Index>{g.identity()}, comp);
}

PresheafPtr finset(Index n) {
  std::vector<std::string> labels;
  for (Index i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  std::vector<Index> id(n);
  std::iota(id.begin(), id.end(), 0);
  return make_presheaf(Presheaf(finset_base(), {n}, {id}, {labels}));
}

PresheafMap single_component_map(const PresheafPtr& e, const PresheafPtr& b, const std::vector<Index>& values) {
  return validate_map(PresheafMap{e, b, {values}});
}

PresheafMap finset_map(const PresheafPtr& e, const PresheafPtr& b, const std::vector<Index>& values) {
  return single_component_map(e, b, values);
}

PresheafMap finset_map(Index e, Index b, const std::vector<Index>& values) {
  return finset_map(finset(e), finset(b), values);
}

PresheafPtr coset_gset(const FinCatPtr& base, const FinGroup& g, const std::vector<Index>& subgroup,
                       const std::string& tag) {
  const auto n = static_cast<Index>(g.order());
  std::vector<Index> coset_of(n, kNone);
  std::vector<Index> reps;
  for (Index k = 0; k < n; ++k) {
    if (coset_of[k] != kNone) continue;
    const auto id = static_cast<Index>(reps.size());
    reps.push_back(k);
    for (Index h : subgroup) coset_of[g.mul(h, k)] = id;
  }
  std::vector<std::vector<Index>> actions(n);
  std::vector<std::string> labels;
  for (Index r : reps) labels.push_back(tag + ":" + g.name(r));
  for (Index m = 0; m < n; ++m)
    for (Index r : reps) actions[m].push_back(coset_of[g.mul(r, m)]);
  return validate_presheaf(Presheaf(base, {static_cast<Index>(reps.size())}, actions, {labels}));
}

PresheafPtr regular_gset(const FinCatPtr& base, const FinGroup& g) {
  return coset_gset(base, g, {g.identity()}, "g");
}

PresheafPtr natural_gset(const FinCatPtr& base, const FinGroup& g) {
  std::vector<std::vector<Index>> perms;
  for (const auto& name : g.names()) {
    if (name.size() < 2 || name.front() != '[' || name.back() != ']')
      throw ValidationError({"element is not a one-line permutation", name});
    std::vector<Index> p;
    std::size_t i = 1;
    while (i < name.size() - 1) {
      std::size_t j = name.find_first_of(",]", i);
      p.push_back(static_cast<Index>(std::stoi(name.substr(i, j - i))) - 1);
      i = j + 1;
    }
    perms.push_back(p);
  }
  const auto deg = static_cast<Index>(perms.front().size());
  std::vector<std::vector<Index>> actions;
  for (const auto& p : perms) {
    std::vector<Index> inv(deg);
    for (Index x = 0; x < deg; ++x) inv[p[x]] = x;
    actions.push_back(inv);
  }
  std::vector<std::string> labels;
  for (Index x = 0; x < deg; ++x) labels.push_back(std::to_string(x + 1));
  return validate_presheaf(Presheaf(base, {deg}, actions, {labels}));
}

PresheafPtr disjoint_union(const std::vector<PresheafPtr>& parts, const FinCatPtr& base) {
  PresheafPtr acc = empty_presheaf(base);
  if (parts.empty()) return acc;
  acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = coproduct(acc, parts[i]).obj;
  return acc;
}

std::vector<std::vector<Index>> subgroup_classes(const FinGroup& g) {
  auto subs = subgroups(g);
  std::vector<std::vector<Index>> reps;
  std::set<std::vector<Index>> seen;
  std::stable_sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  for (const auto& h : subs) {
    if (seen.count(h)) continue;
    reps.push_back(h);
    for (Index k = 0; k < static_cast<Index>(g.order()); ++k) {
      std::vector<Index> conj;
      for (Index x : h) conj.push_back(g.mul(g.mul(k, x), g.inv(k)));
      std::sort(conj.begin(), conj.end());
      seen.insert(conj);
    }
  }
  return reps;
}

Ambient finset_ambient() {
  return {"finset", finset_base(), [](std::size_t bound) {
            std::vector<PresheafPtr> out;
            for (std::size_t n = 0; n <= bound; ++n) out.push_back(finset(static_cast<Index>(n)));
            return out;
          }};
}

Ambient gset_ambient(const FinGroup& g, const std::string& name) {
  auto base = group_base(g);
  auto classes = subgroup_classes(g);
  std::vector<PresheafPtr> orbits;
  std::vector<std::size_t> index;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    orbits.push_back(coset_gset(base, g, classes[i], "o" + std::to_string(i)));
    index.push_back(orbits.back()->size(0));
  }
  return {name, base, [base, orbits, index](std::size_t bound) {
            std::vector<std::pair<std::size_t, PresheafPtr>> found;
            std::vector<std::size_t> pick;
            std::function<void(std::size_t, std::size_t)> go = [&](std::size_t from, std::size_t total) {
              std::vector<PresheafPtr> parts;
              for (std::size_t k : pick) parts.push_back(orbits[k]);
              found.emplace_back(total, disjoint_union(parts, base));
              for (std::size_t k = from; k < orbits.size(); ++k) {
                if (total + index[k] > bound) continue;
                pick.push_back(k);
                go(k, total + index[k]);
                pick.pop_back();
              }
            };
            go(0, 0);
            std::stable_sort(found.begin(), found.end(),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
            std::vector<PresheafPtr> out;
            for (auto& f : found) out.push_back(f.second);
            return out;
          }};
}

std::vector<PresheafPtr> generic_presheaves(const FinCatPtr& basep, std::size_t max_total) {
  const FinCat& b = *basep;
  const auto n = static_cast<Index>(b.num_objects());
  const auto m = static_cast<Index>(b.num_morphisms());
  std::vector<PresheafPtr> out;
  std::vector<Index> sizes(n, 0);
  std::vector<Index> nonid;
  for (Index f = 0; f < m; ++f)
    if (!b.is_identity(f)) nonid.push_back(f);

  auto search = [&]() {
    std::vector<std::vector<Index>> actions(m);
    std::vector<bool> assigned(m, false);
    for (Index c = 0; c < n; ++c) {
      actions[b.identity(c)].resize(sizes[c]);
      std::iota(actions[b.identity(c)].begin(), actions[b.identity(c)].end(), 0);
      assigned[b.identity(c)] = true;
    }
    std::vector<PresheafPtr> local;
    auto consistent = [&]() {
      for (Index f = 0; f < m; ++f) {
        if (!assigned[f]) continue;
        for (Index g = 0; g < m; ++g) {
          if (!assigned[g] || b.tgt(f) != b.src(g)) continue;
          const Index gf = b.compose(f, g);
          if (!assigned[gf]) continue;
          for (Index x = 0; x < sizes[b.tgt(g)]; ++x)
            if (actions[gf][x] != actions[f][actions[g][x]]) return false;
        }
      }
      return true;
    };
    std::function<void(std::size_t)> go = [&](std::size_t k) {
      if (k == nonid.size()) {
        auto p = make_presheaf(Presheaf(basep, sizes, actions));
        for (const auto& q : local)
          if (find_iso(p, q)) return;
        local.push_back(p);
        return;
      }
      const Index f = nonid[k];
      const Index dom = sizes[b.tgt(f)], cod = sizes[b.src(f)];
      if (cod == 0 && dom > 0) return;
      std::vector<Index> digits(dom, 0);
      assigned[f] = true;
      while (true) {
        actions[f] = digits;
        if (consistent()) go(k + 1);
        Index i = 0;
        while (i < dom && ++digits[i] == cod) digits[i++] = 0;
        if (i == dom) break;
      }
      assigned[f] = false;
    };
    go(0);
    out.insert(out.end(), local.begin(), local.end());
  };

  for (std::size_t total = 0; total <= max_total; ++total) {
    std::function<void(Index, std::size_t)> split = [&](Index c, std::size_t left) {
      if (c == n - 1) {
        sizes[c] = static_cast<Index>(left);
        search();
        return;
      }
      for (std::size_t s = 0; s <= left; ++s) {
        sizes[c] = static_cast<Index>(s);
        split(c + 1, left - s);
      }
    };
    if (n > 0) split(0, total);
  }
  return out;
}

Ambient presheaf_ambient(const FinCatPtr& base, const std::string& name) {
  return {name, base, [base](std::size_t bound) { return generic_presheaves(base, bound); }};
}

std::vector<PresheafMap> maps_between(const PresheafPtr& e, const PresheafPtr& b) { return homs(e, b); }

std::vector<PresheafMap> automorphisms(const PresheafPtr& x) {
  HomSearchOptions opts;
  opts.injective = true;
  return homs(x, x, opts);
}

std::vector<std::vector<Index>> canonical_form(const PresheafMap& p, const std::vector<PresheafMap>& aut_e,
                                               const std::vector<PresheafMap>& aut_b) {
  std::vector<std::vector<Index>> best = p.components;
  for (const auto& a : aut_e)
    for (const auto& bb : aut_b) {
      auto c = compose(compose(a, p), bb).components;
      if (c < best) best = std::move(c);
    }
  return best;
}

std::vector<PresheafMap> maps_up_to_iso(const PresheafPtr& e, const PresheafPtr& b) {
  const auto ae = automorphisms(e);
  const auto ab = automorphisms(b);
  std::set<std::vector<std::vector<Index>>> seen;
  std::vector<PresheafMap> out;
  for (const auto& p : maps_between(e, b)) {
    auto c = canonical_form(p, ae, ab);
    if (seen.insert(c).second) out.push_back(PresheafMap{e, b, c});
  }
  std::sort(out.begin(), out.end(),
            [](const PresheafMap& x, const PresheafMap& y) { return x.components < y.components; });
  return out;
}

std::vector<PresheafMap> morphism_corpus(const Ambient& a, std::size_t max_e, std::size_t max_b,
                                         std::size_t max_total) {
  const auto objs = a.objects(std::max(max_e, max_b));
  std::vector<PresheafMap> out;
  for (const auto& b : objs)
    for (const auto& e : objs) {
      const std::size_t se = e->total_size(), sb = b->total_size();
      if (se > max_e || sb > max_b || se + sb > max_total) continue;
      auto ms = maps_up_to_iso(e, b);
      out.insert(out.end(), ms.begin(), ms.end());
    }
  return out;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("UNIVALENCE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace univ
