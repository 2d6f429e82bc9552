#include "univalence/segal.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "univalence/corpus.hpp"

namespace univ {

namespace {

PresheafPtr finite_set(std::size_t n) {
  std::vector<Index> id(n);
  std::iota(id.begin(), id.end(), 0);
  return make_presheaf(Presheaf(finset_base(), {static_cast<Index>(n)}, {id}));
}

PresheafMap set_map(const PresheafPtr& x, const PresheafPtr& y, std::vector<Index> values) {
  return PresheafMap{x, y, {std::move(values)}};
}

std::string name(const char* what, int n, int i) {
  return std::string(what) + "(" + std::to_string(n) + "," + std::to_string(i) + ")";
}

// Edges of an n-cell for n = 1..3, as maps W_n -> W_1.
std::vector<PresheafMap> edge_maps(const SimplicialObject& w, int n) {
  if (n == 1) return {identity_map(w.levels[1])};
  if (n == 2) return {w.d(2, 2), w.d(2, 0)};
  return {compose(w.d(3, 3), w.d(2, 2)), compose(w.d(3, 3), w.d(2, 0)), compose(w.d(3, 0), w.d(2, 0))};
}

std::uint64_t pack(const std::vector<Index>& v) {
  std::uint64_t k = 0;
  for (Index x : v) k = (k << 21) | static_cast<std::uint64_t>(x);
  return k;
}

struct UnionFind {
  std::vector<Index> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Index find(Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<std::size_t> SimplicialObject::sizes() const {
  std::vector<std::size_t> out;
  for (const auto& l : levels) out.push_back(l->total_size());
  return out;
}

std::vector<Violation> simplicial_report(const SimplicialObject& w) {
  std::vector<Violation> out;
  const int top = w.top();
  for (int n = 2; n <= top; ++n)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        if (!(compose(w.d(n, j), w.d(n - 1, i)) == compose(w.d(n, i), w.d(n - 1, j - 1))))
          out.push_back({"d_i d_j = d_(j-1) d_i", name("d", n, j) + " then " + name("d", n - 1, i)});
  for (int n = 0; n + 2 <= top; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        if (!(compose(w.s(n, j), w.s(n + 1, i)) == compose(w.s(n, i), w.s(n + 1, j + 1))))
          out.push_back({"s_i s_j = s_(j+1) s_i", name("s", n, j) + " then " + name("s", n + 1, i)});
  for (int n = 0; n + 1 <= top; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        const PresheafMap lhs = compose(w.s(n, j), w.d(n + 1, i));
        bool ok;
        if (i < j)
          ok = lhs == compose(w.d(n, i), w.s(n - 1, j - 1));
        else if (i == j || i == j + 1)
          ok = lhs == identity_map(w.levels[n]);
        else
          ok = lhs == compose(w.d(n, i - 1), w.s(n - 1, j));
        if (!ok) out.push_back({"d_i s_j", name("s", n, j) + " then " + name("d", n + 1, i)});
      }
  return out;
}

std::vector<Violation> validate_simplicial(const SimplicialObject& w) {
  std::vector<Violation> out;
  const int top = w.top();
  if (top < 0 || top > 3) return {{"levels 0..3 expected", std::to_string(top)}};
  if (static_cast<int>(w.faces.size()) != top + 1 || static_cast<int>(w.degens.size()) < top)
    return {{"face/degeneracy tables have the wrong shape", ""}};
  for (int n = 1; n <= top; ++n) {
    if (static_cast<int>(w.faces[n].size()) != n + 1) return {{"wrong number of faces", std::to_string(n)}};
    for (const auto& f : w.faces[n])
      if (f.source != w.levels[n] || f.target != w.levels[n - 1] || !f.check().empty())
        out.push_back({"face is not a map W_n -> W_(n-1)", std::to_string(n)});
  }
  for (int n = 0; n < top; ++n) {
    if (static_cast<int>(w.degens[n].size()) != n + 1)
      return {{"wrong number of degeneracies", std::to_string(n)}};
    for (const auto& s : w.degens[n])
      if (s.source != w.levels[n] || s.target != w.levels[n + 1] || !s.check().empty())
        out.push_back({"degeneracy is not a map W_n -> W_(n+1)", std::to_string(n)});
  }
  if (!out.empty()) return out;
  return simplicial_report(w);
}

SimplicialObject nerve_of_category(const FinCat& c, int top) {
  SimplicialObject w;
  std::vector<std::unordered_map<std::vector<Index>, Index, VecHash>> index(top + 1);
  w.cells.resize(top + 1);
  for (Index x = 0; x < static_cast<Index>(c.num_objects()); ++x) {
    index[0].emplace(std::vector<Index>{x}, x);
    w.cells[0].push_back({x});
  }
  for (int n = 1; n <= top; ++n)
    for (const auto& prev : w.cells[n - 1]) {
      const Index from = n == 1 ? prev[0] : c.tgt(prev.back());
      for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f) {
        if (c.src(f) != from) continue;
        std::vector<Index> chain = n == 1 ? std::vector<Index>{} : prev;
        chain.push_back(f);
        index[n].emplace(chain, static_cast<Index>(w.cells[n].size()));
        w.cells[n].push_back(std::move(chain));
      }
    }
  for (int n = 0; n <= top; ++n) w.levels.push_back(finite_set(w.cells[n].size()));

  auto vertex = [&](const std::vector<Index>& chain, int k) {
    return k == 0 ? c.src(chain[0]) : c.tgt(chain[k - 1]);
  };
  w.faces.resize(top + 1);
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i <= n; ++i) {
      std::vector<Index> v;
      for (const auto& chain : w.cells[n]) {
        std::vector<Index> out;
        if (n == 1) {
          out = {i == 0 ? c.tgt(chain[0]) : c.src(chain[0])};
        } else if (i == 0) {
          out.assign(chain.begin() + 1, chain.end());
        } else if (i == n) {
          out.assign(chain.begin(), chain.end() - 1);
        } else {
          out.assign(chain.begin(), chain.begin() + i - 1);
          out.push_back(c.compose(chain[i - 1], chain[i]));
          out.insert(out.end(), chain.begin() + i + 1, chain.end());
        }
        v.push_back(index[n - 1].at(out));
      }
      w.faces[n].push_back(set_map(w.levels[n], w.levels[n - 1], std::move(v)));
    }
  w.degens.resize(top);
  for (int n = 0; n < top; ++n)
    for (int i = 0; i <= n; ++i) {
      std::vector<Index> v;
      for (const auto& chain : w.cells[n]) {
        std::vector<Index> out;
        if (n == 0) {
          out = {c.identity(chain[0])};
        } else {
          out = chain;
          out.insert(out.begin() + i, c.identity(vertex(chain, i)));
        }
        v.push_back(index[n + 1].at(out));
      }
      w.degens[n].push_back(set_map(w.levels[n], w.levels[n + 1], std::move(v)));
    }
  return w;
}

SimplicialObject nerve_of_morphism(const InternalCat& ic, int top) {
  SimplicialObject w;
  const PresheafMap idM = identity_map(ic.M);
  w.levels.push_back(ic.B);
  w.faces.resize(top + 1);
  w.degens.resize(top);
  if (top >= 1) {
    w.levels.push_back(ic.M);
    w.faces[1] = {ic.t, ic.s};
    w.degens[0] = {ic.id_map};
  }
  if (top >= 2) {
    const Pullback& c2 = ic.composable;
    w.levels.push_back(c2.obj);
    w.faces[2] = {c2.p2, ic.comp, c2.p1};
    w.degens[1] = {pullback_pairing(c2, compose(ic.s, ic.id_map), idM),
                   pullback_pairing(c2, idM, compose(ic.t, ic.id_map))};
  }
  if (top >= 3) {
    const Pullback& c2 = ic.composable;
    const Pullback c3 = pullback(compose(c2.p2, ic.t), ic.s);
    const PresheafMap m1 = compose(c3.p1, c2.p1), m2 = compose(c3.p1, c2.p2), m3 = c3.p2;
    const PresheafMap p23 = pullback_pairing(c2, m2, m3);
    w.levels.push_back(c3.obj);
    w.faces[3] = {p23, pullback_pairing(c2, compose(c3.p1, ic.comp), m3),
                  pullback_pairing(c2, m1, compose(p23, ic.comp)), c3.p1};
    const PresheafMap a = c2.p1, b = c2.p2;
    const PresheafMap id2 = identity_map(c2.obj);
    w.degens[2] = {
        pullback_pairing(c3, pullback_pairing(c2, compose(compose(a, ic.s), ic.id_map), a), b),
        pullback_pairing(c3, pullback_pairing(c2, a, compose(compose(a, ic.t), ic.id_map)), b),
        pullback_pairing(c3, id2, compose(compose(b, ic.t), ic.id_map))};
  }
  return w;
}

SimplicialObject constant_simplicial(const PresheafPtr& x, int top) {
  SimplicialObject w;
  const PresheafMap id = identity_map(x);
  w.faces.resize(top + 1);
  w.degens.resize(top);
  for (int n = 0; n <= top; ++n) {
    w.levels.push_back(x);
    if (n >= 1) w.faces[n].assign(n + 1, id);
    if (n < top) w.degens[n].assign(n + 1, id);
  }
  return w;
}

SegalVerdict check_segal(const SimplicialObject& w) {
  SegalVerdict v;
  if (w.top() < 2) return v;
  const Pullback p2 = pullback(w.d(1, 0), w.d(1, 1));
  std::vector<std::pair<int, PresheafMap>> spines;
  Pullback p3;
  spines.emplace_back(2, pullback_pairing(p2, w.d(2, 2), w.d(2, 0)));
  if (w.top() >= 3) {
    p3 = pullback(compose(p2.p2, w.d(1, 0)), w.d(1, 1));
    auto e = edge_maps(w, 3);
    spines.emplace_back(3, pullback_pairing(p3, pullback_pairing(p2, e[0], e[1]), e[2]));
  }
  for (const auto& [n, spine] : spines) {
    v.checked.push_back(n);
    for (Index c = 0; c < static_cast<Index>(spine.components.size()); ++c) {
      std::vector<std::vector<Index>> pre(spine.target->size(c));
      for (Index x = 0; x < static_cast<Index>(spine.components[c].size()); ++x)
        pre[spine(c, x)].push_back(x);
      for (Index y = 0; y < static_cast<Index>(pre.size()); ++y)
        if (pre[y].size() != 1) {
          v.pass = false;
          v.level = n;
          v.object = c;
          v.spine = y;
          v.preimages = pre[y];
          return v;
        }
    }
  }
  return v;
}

CompletenessVerdict check_complete(const SimplicialObject& w) {
  if (w.top() < 3) throw NotSegal("completeness needs level 3");
  auto sv = check_segal(w);
  if (!sv.pass) throw NotSegal("Segal condition fails at level " + std::to_string(sv.level));
  const PresheafMap d1d0 = compose(w.d(3, 0), w.d(2, 1));
  const PresheafMap d1d3 = compose(w.d(3, 3), w.d(2, 1));
  const Product w11 = product(w.levels[1], w.levels[1]);
  const Product w00 = product(w.levels[0], w.levels[0]);
  const Pullback sq = pullback(pairing(w11, d1d0, d1d3), product_map(w00, w11, w.s(0, 0), w.s(0, 0)));
  const PresheafMap sss = compose(compose(w.s(0, 0), w.s(1, 0)), w.s(2, 0));
  const PresheafMap id0 = identity_map(w.levels[0]);

  CompletenessVerdict v;
  v.square = sq.obj;
  v.comparison = pullback_pairing(sq, sss, pairing(w00, id0, id0));
  v.complete = is_iso(v.comparison);
  if (!v.complete)
    for (Index c = 0; c < static_cast<Index>(sq.pairs.size()) && v.witness == kNone; ++c) {
      std::vector<bool> hit(sq.obj->size(c), false);
      for (Index x : v.comparison.components[c]) hit[x] = true;
      for (Index y = 0; y < sq.obj->size(c); ++y)
        if (!hit[y]) {
          v.object = c;
          v.witness = y;
          v.witness_cell = {sq.pairs[c][y].first, sq.pairs[c][y].second};
          break;
        }
    }
  return v;
}

HCompletion h_completion(const SimplicialObject& s) {
  const FinCat& base = s.levels[0]->base();
  if (base.num_objects() != 1 || base.num_morphisms() != 1) throw NotSegal("H needs a simplicial set");
  if (s.top() < 2) throw NotSegal("H needs level 2 to compose");
  auto sv = check_segal(s);
  if (!sv.pass) throw NotSegal("not a Segal set: level " + std::to_string(sv.level));
  const int top = s.top();

  const auto& src = s.d(1, 1).components[0];
  const auto& tgt = s.d(1, 0).components[0];
  const auto& ident = s.s(0, 0).components[0];
  const Index n0 = s.levels[0]->size(0), n1 = s.levels[1]->size(0);

  // spines and their inverses per level
  std::vector<std::vector<std::vector<Index>>> edges(top + 1);
  std::vector<std::unordered_map<std::uint64_t, Index>> cell_of(top + 1);
  for (int n = 1; n <= top; ++n) {
    auto em = edge_maps(s, n);
    const Index size = s.levels[n]->size(0);
    edges[n].resize(size);
    for (Index x = 0; x < size; ++x) {
      for (const auto& e : em) edges[n][x].push_back(e(0, x));
      cell_of[n].emplace(pack(edges[n][x]), x);
    }
  }
  auto comp = [&](Index f, Index g) { return s.d(2, 1)(0, cell_of[2].at(pack({f, g}))); };

  // isomorphisms with their inverses, grouped by source
  std::vector<std::vector<Index>> hom(static_cast<std::size_t>(n0) * n0);
  for (Index f = 0; f < n1; ++f) hom[static_cast<std::size_t>(src[f]) * n0 + tgt[f]].push_back(f);
  std::vector<std::vector<std::pair<Index, Index>>> isos_from(n0);
  for (Index f = 0; f < n1; ++f)
    for (Index g : hom[static_cast<std::size_t>(tgt[f]) * n0 + src[f]])
      if (comp(f, g) == ident[src[f]] && comp(g, f) == ident[tgt[f]]) {
        isos_from[src[f]].emplace_back(f, g);
        break;
      }

  HCompletion out;
  out.class_of.resize(top + 1);
  out.representative.resize(top + 1);
  for (int n = 0; n <= top; ++n) {
    const Index size = s.levels[n]->size(0);
    UnionFind uf(size);
    if (n == 0) {
      for (Index v = 0; v < n0; ++v)
        for (auto [u, unused] : isos_from[v]) uf.unite(v, tgt[u]);
    } else {
      for (Index x = 0; x < size; ++x) {
        const auto& e = edges[n][x];
        for (int k = 0; k <= n; ++k) {
          const Index v = k == 0 ? src[e[0]] : tgt[e[k - 1]];
          for (auto [u, uinv] : isos_from[v]) {
            std::vector<Index> moved = e;
            if (k >= 1) moved[k - 1] = comp(e[k - 1], u);
            if (k < n) moved[k] = comp(uinv, e[k]);
            uf.unite(x, cell_of[n].at(pack(moved)));
          }
        }
      }
    }
    std::vector<Index> id_of_root(size, kNone);
    for (Index x = 0; x < size; ++x) {
      const Index r = uf.find(x);
      if (id_of_root[r] == kNone) {
        id_of_root[r] = static_cast<Index>(out.representative[n].size());
        out.representative[n].push_back(x);
      }
      out.class_of[n].push_back(id_of_root[r]);
    }
  }

  SimplicialObject& h = out.h;
  for (int n = 0; n <= top; ++n) h.levels.push_back(finite_set(out.representative[n].size()));
  auto induced = [&](const PresheafMap& m, int from, int to, const std::string& what) {
    std::vector<Index> v;
    for (Index r : out.representative[from]) v.push_back(out.class_of[to][m(0, r)]);
    for (Index x = 0; x < static_cast<Index>(out.class_of[from].size()); ++x)
      if (v[out.class_of[from][x]] != out.class_of[to][m(0, x)])
        throw ValidationError({"induced map not well defined", what});
    return set_map(h.levels[from], h.levels[to], std::move(v));
  };
  h.faces.resize(top + 1);
  h.degens.resize(top);
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i <= n; ++i) h.faces[n].push_back(induced(s.d(n, i), n, n - 1, name("d", n, i)));
  for (int n = 0; n < top; ++n)
    for (int i = 0; i <= n; ++i) h.degens[n].push_back(induced(s.s(n, i), n, n + 1, name("s", n, i)));
  for (int n = 0; n <= top; ++n) out.projection.push_back(set_map(s.levels[n], h.levels[n], out.class_of[n]));
  return out;
}

std::string fiber_equation(const std::string& finset_morphism) {
  const auto gt = finset_morphism.find('>'), colon = finset_morphism.find(':');
  if (gt == std::string::npos || colon == std::string::npos)
    throw ValidationError({"not a finite-set morphism name", finset_morphism});
  const int n = std::stoi(finset_morphism.substr(0, gt));
  const int m = std::stoi(finset_morphism.substr(gt + 1, colon - gt - 1));
  std::vector<int> fibers(m, 0);
  std::stringstream ss(finset_morphism.substr(colon + 1));
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) ++fibers.at(std::stoi(tok) - 1);
  std::sort(fibers.begin(), fibers.end());
  std::string out;
  for (std::size_t i = 0; i < fibers.size(); ++i) out += (i ? "+" : "") + std::to_string(fibers[i]);
  return out + "=" + std::to_string(n);
}

HackneyReport hackney_witness() {
  const FinCat c = finset_category({1, 2, 3, 4});
  const SimplicialObject nerve = nerve_of_category(c, 2);
  const HCompletion hc = h_completion(nerve);
  HackneyReport r;
  r.alpha = finset_morphism_name(3, 2, {1, 1, 2});
  r.alpha2 = finset_morphism_name(3, 2, {1, 2, 2});
  r.beta = finset_morphism_name(4, 3, {1, 2, 3, 3});
  const Index a = c.morphism_at(r.alpha), a2 = c.morphism_at(r.alpha2), b = c.morphism_at(r.beta);
  const Index ab = c.compose(b, a), a2b = c.compose(b, a2);

  std::vector<Index> cell1(c.num_morphisms());
  for (Index k = 0; k < static_cast<Index>(nerve.cells[1].size()); ++k) cell1[nerve.cells[1][k][0]] = k;
  auto cls = [&](Index f) { return hc.class_of[1][cell1[f]]; };
  auto label = [&](Index f) {
    return fiber_equation(c.morphism_name(nerve.cells[1][hc.representative[1][cls(f)]][0]));
  };
  r.class_alpha = label(a);
  r.class_alpha2 = label(a2);
  r.class_beta = label(b);
  r.class_alpha_beta = label(ab);
  r.class_alpha2_beta = label(a2b);
  r.same_class_level1 = cls(a) == cls(a2);
  r.composites_differ = cls(ab) != cls(a2b);

  const SegalVerdict sv = check_segal(hc.h);
  r.segal_fails_level2 = !sv.pass && sv.level == 2;
  Index x = kNone, y = kNone;
  for (Index k = 0; k < static_cast<Index>(nerve.cells[2].size()); ++k) {
    if (nerve.cells[2][k] == std::vector<Index>{b, a}) x = k;
    if (nerve.cells[2][k] == std::vector<Index>{b, a2}) y = k;
  }
  r.witness_a = hc.class_of[2][x];
  r.witness_b = hc.class_of[2][y];
  r.h_sizes = hc.h.sizes();
  return r;
}

}  // namespace univ
