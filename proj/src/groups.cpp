#include "univalence/groups.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace univ {

namespace {

std::string one_line(const std::vector<Index>& perm) {
  std::string s = "[";
  for (std::size_t i = 0; i < perm.size(); ++i) s += (i ? "," : "") + std::to_string(perm[i] + 1);
  return s + "]";
}

// Extends generator images to a homomorphism by walking the Cayley graph.
std::optional<std::vector<Index>> extend(const FinGroup& a, const FinGroup& b,
                                         const std::vector<Index>& gens,
                                         const std::vector<Index>& images) {
  std::vector<Index> map(a.order(), kNone);
  map[a.identity()] = b.identity();
  std::vector<Index> queue{a.identity()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Index x = queue[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Index y = a.mul(x, gens[i]);
      Index val = b.mul(map[x], images[i]);
      if (map[y] == kNone) {
        map[y] = val;
        queue.push_back(y);
      } else if (map[y] != val) {
        return std::nullopt;
      }
    }
  }
  if (queue.size() != a.order()) return std::nullopt;
  return map;
}

// Backtracks over images of a generating set; `accept` filters candidate images.
void for_each_generator_assignment(const FinGroup& a, const FinGroup& b,
                                   const std::function<bool(Index gen, Index img)>& accept,
                                   const std::function<bool(const std::vector<Index>&)>& visit) {
  const auto gens = generating_set(a);
  std::vector<Index> images(gens.size());
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == gens.size()) {
      auto m = extend(a, b, gens, images);
      if (m) return visit(*m);
      return true;
    }
    for (Index y = 0; y < static_cast<Index>(b.order()); ++y) {
      if (!accept(gens[i], y)) continue;
      images[i] = y;
      if (!go(i + 1)) return false;
    }
    return true;
  };
  go(0);
}

std::vector<Index> order_profile(const FinGroup& g) {
  std::vector<Index> out;
  for (Index x = 0; x < static_cast<Index>(g.order()); ++x) out.push_back(g.element_order(x));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Violation> group_report(const std::vector<std::vector<Index>>& table) {
  std::vector<Violation> out;
  const auto n = static_cast<Index>(table.size());
  if (n == 0) return {{"empty group", ""}};
  for (Index a = 0; a < n; ++a) {
    if (static_cast<Index>(table[a].size()) != n) return {{"table is not square", std::to_string(a)}};
    for (Index b = 0; b < n; ++b)
      if (table[a][b] < 0 || table[a][b] >= n)
        return {{"product out of range", std::to_string(a) + "*" + std::to_string(b)}};
  }
  Index e = kNone;
  for (Index x = 0; x < n && e == kNone; ++x) {
    bool ok = true;
    for (Index y = 0; y < n && ok; ++y) ok = table[x][y] == y && table[y][x] == y;
    if (ok) e = x;
  }
  if (e == kNone) return {{"no identity element", ""}};
  for (Index x = 0; x < n; ++x) {
    bool has = false;
    for (Index y = 0; y < n && !has; ++y) has = table[x][y] == e && table[y][x] == e;
    if (!has) out.push_back({"missing inverse", std::to_string(x)});
  }
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          out.push_back({"associativity",
                         std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c)});
          return out;
        }
  return out;
}

FinGroup FinGroup::from_table(std::vector<std::string> names, std::vector<std::vector<Index>> table,
                              std::string label) {
  if (names.size() != table.size()) throw ValidationError({"names/table size mismatch", ""});
  auto report = group_report(table);
  if (!report.empty()) throw ValidationError(report.front());
  FinGroup g;
  g.names_ = std::move(names);
  g.table_ = std::move(table);
  g.label_ = std::move(label);
  const auto n = static_cast<Index>(g.names_.size());
  for (Index x = 0; x < n; ++x) {
    bool ok = true;
    for (Index y = 0; y < n && ok; ++y) ok = g.table_[x][y] == y;
    if (ok) {
      g.identity_ = x;
      break;
    }
  }
  g.inverse_.assign(n, kNone);
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y)
      if (g.table_[x][y] == g.identity_) g.inverse_[x] = y;
  return g;
}

Index FinGroup::element_order(Index a) const {
  Index k = 1;
  for (Index x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

std::optional<Index> FinGroup::find(const std::string& name) const {
  for (Index i = 0; i < static_cast<Index>(names_.size()); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

bool FinGroup::is_abelian() const {
  for (Index a = 0; a < static_cast<Index>(order()); ++a)
    for (Index b = a + 1; b < static_cast<Index>(order()); ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

FinGroup trivial_group() { return FinGroup::from_table({"e"}, {{0}}, "1"); }

FinGroup cyclic_group(int n) {
  std::vector<std::string> names;
  std::vector<std::vector<Index>> t(n, std::vector<Index>(n));
  for (int a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return FinGroup::from_table(names, t, n == 1 ? "1" : "Z/" + std::to_string(n));
}

FinGroup dihedral_group(int n) {
  // element (f, a) = s^f r^a at index f*n + a
  const int m = 2 * n;
  std::vector<std::string> names;
  std::vector<std::vector<Index>> t(m, std::vector<Index>(m));
  for (int x = 0; x < m; ++x) {
    names.push_back((x < n ? "r" : "sr") + std::to_string(x % n));
    for (int y = 0; y < m; ++y) {
      int f1 = x / n, a1 = x % n, f2 = y / n, a2 = y % n;
      int f = f1 ^ f2;
      int a = ((f2 ? -a1 : a1) + a2 + n) % n;
      t[x][y] = f * n + a;
    }
  }
  return FinGroup::from_table(names, t, "D" + std::to_string(n));
}

FinGroup quaternion_group() {
  // unit u in {1,i,j,k} as 0..3, sign s; index = s*4 + u
  const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  const char* unit_names[4] = {"1", "i", "j", "k"};
  std::vector<std::string> names;
  std::vector<std::vector<Index>> t(8, std::vector<Index>(8));
  for (int x = 0; x < 8; ++x) {
    names.push_back(std::string(x / 4 ? "-" : "") + unit_names[x % 4]);
    for (int y = 0; y < 8; ++y) {
      int u1 = x % 4, u2 = y % 4;
      int s = (x / 4) ^ (y / 4) ^ sign[u1][u2];
      t[x][y] = s * 4 + unit[u1][u2];
    }
  }
  return FinGroup::from_table(names, t, "Q8");
}

FinGroup symmetric_group(int n) {
  std::vector<Index> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> gens;
  if (n >= 2) {
    std::vector<int> swap(n), cycle(n);
    for (int i = 0; i < n; ++i) {
      swap[i] = i + 1;
      cycle[i] = (i + 1) % n + 1;
    }
    std::swap(swap[0], swap[1]);
    gens = {swap, cycle};
  }
  return permutation_group(n, gens, n <= 1 ? "1" : "S" + std::to_string(n));
}

FinGroup permutation_group(int degree, const std::vector<std::vector<int>>& generators,
                           std::string label) {
  std::vector<std::vector<Index>> gens;
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != degree) throw ValidationError({"generator has wrong degree", ""});
    std::vector<Index> p(degree);
    std::vector<bool> seen(degree, false);
    for (int i = 0; i < degree; ++i) {
      if (g[i] < 1 || g[i] > degree || seen[g[i] - 1])
        throw ValidationError({"generator is not a permutation", std::to_string(i)});
      seen[g[i] - 1] = true;
      p[i] = g[i] - 1;
    }
    gens.push_back(p);
  }
  std::vector<Index> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<Index>> elems{id};
  std::vector<std::vector<Index>> queue{id};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : gens) {
      std::vector<Index> c(degree);
      for (int i = 0; i < degree; ++i) c[i] = queue[head][g[i]];
      if (elems.insert(c).second) queue.push_back(c);
    }
  }
  std::vector<std::vector<Index>> list(elems.begin(), elems.end());
  std::map<std::vector<Index>, Index> idx;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < list.size(); ++i) {
    idx[list[i]] = static_cast<Index>(i);
    names.push_back(one_line(list[i]));
  }
  std::vector<std::vector<Index>> t(list.size(), std::vector<Index>(list.size()));
  for (std::size_t a = 0; a < list.size(); ++a)
    for (std::size_t b = 0; b < list.size(); ++b) {
      std::vector<Index> c(degree);
      for (int i = 0; i < degree; ++i) c[i] = list[a][list[b][i]];  // a after b
      t[a][b] = idx.at(c);
    }
  return FinGroup::from_table(names, t, std::move(label));
}

FinGroup direct_product(const FinGroup& a, const FinGroup& b) {
  const auto m = static_cast<Index>(b.order());
  const auto n = static_cast<Index>(a.order()) * m;
  std::vector<std::string> names;
  std::vector<std::vector<Index>> t(n, std::vector<Index>(n));
  for (Index x = 0; x < n; ++x) {
    names.push_back("(" + a.name(x / m) + "," + b.name(x % m) + ")");
    for (Index y = 0; y < n; ++y) t[x][y] = a.mul(x / m, y / m) * m + b.mul(x % m, y % m);
  }
  return FinGroup::from_table(names, t, a.label() + " x " + b.label());
}

std::vector<Index> generated_subgroup(const FinGroup& g, const std::vector<Index>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<Index> queue{g.identity()};
  in[g.identity()] = true;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Index s : gens) {
      Index y = g.mul(queue[head], s);
      if (!in[y]) {
        in[y] = true;
        queue.push_back(y);
      }
    }
  std::sort(queue.begin(), queue.end());
  return queue;
}

std::vector<Index> generating_set(const FinGroup& g) {
  std::vector<Index> gens;
  auto current = generated_subgroup(g, gens);
  while (current.size() < g.order()) {
    Index best = kNone;
    for (Index x = 0; x < static_cast<Index>(g.order()); ++x) {
      if (std::binary_search(current.begin(), current.end(), x)) continue;
      if (best == kNone || g.element_order(x) > g.element_order(best)) best = x;
    }
    gens.push_back(best);
    current = generated_subgroup(g, gens);
  }
  for (std::size_t i = 0; i < gens.size();) {
    auto rest = gens;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (generated_subgroup(g, rest).size() == g.order())
      gens = rest;
    else
      ++i;
  }
  return gens;
}

std::vector<Index> center(const FinGroup& g) {
  std::vector<Index> out;
  for (Index z = 0; z < static_cast<Index>(g.order()); ++z) {
    bool central = true;
    for (Index h = 0; h < static_cast<Index>(g.order()) && central; ++h)
      central = g.mul(z, h) == g.mul(h, z);
    if (central) out.push_back(z);
  }
  return out;
}

bool is_normal(const FinGroup& g, const std::vector<Index>& subgroup) {
  std::vector<bool> in(g.order(), false);
  for (Index x : subgroup) in[x] = true;
  for (Index x = 0; x < static_cast<Index>(g.order()); ++x)
    for (Index n : subgroup)
      if (!in[g.mul(g.mul(x, n), g.inv(x))]) return false;
  return true;
}

std::vector<std::vector<Index>> subgroups(const FinGroup& g) {
  std::set<std::vector<Index>> seen;
  std::vector<std::vector<Index>> queue{generated_subgroup(g, {})};
  seen.insert(queue.front());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto s = queue[head];
    for (Index x = 0; x < static_cast<Index>(g.order()); ++x) {
      if (std::binary_search(s.begin(), s.end(), x)) continue;
      auto gens = s;
      gens.push_back(x);
      auto t = generated_subgroup(g, gens);
      if (seen.insert(t).second) queue.push_back(t);
    }
  }
  std::sort(queue.begin(), queue.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return queue;
}

FinGroup subgroup_group(const FinGroup& g, const std::vector<Index>& subgroup) {
  std::map<Index, Index> pos;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < subgroup.size(); ++i) {
    pos[subgroup[i]] = static_cast<Index>(i);
    names.push_back(g.name(subgroup[i]));
  }
  std::vector<std::vector<Index>> t(subgroup.size(), std::vector<Index>(subgroup.size()));
  for (std::size_t a = 0; a < subgroup.size(); ++a)
    for (std::size_t b = 0; b < subgroup.size(); ++b) {
      auto it = pos.find(g.mul(subgroup[a], subgroup[b]));
      if (it == pos.end()) throw ValidationError({"subset is not closed under multiplication", ""});
      t[a][b] = it->second;
    }
  return FinGroup::from_table(names, t);
}

FinGroup quotient(const FinGroup& g, const std::vector<Index>& normal, std::vector<Index>* projection) {
  if (!is_normal(g, normal)) throw ValidationError({"quotient by a non-normal subgroup", ""});
  std::vector<Index> coset(g.order(), kNone);
  std::vector<Index> reps;
  for (Index x = 0; x < static_cast<Index>(g.order()); ++x) {
    if (coset[x] != kNone) continue;
    for (Index n : normal) coset[g.mul(x, n)] = static_cast<Index>(reps.size());
    reps.push_back(x);
  }
  std::vector<std::string> names;
  std::vector<std::vector<Index>> t(reps.size(), std::vector<Index>(reps.size()));
  for (std::size_t a = 0; a < reps.size(); ++a) {
    names.push_back(g.name(reps[a]) + "N");
    for (std::size_t b = 0; b < reps.size(); ++b) t[a][b] = coset[g.mul(reps[a], reps[b])];
  }
  if (projection) *projection = coset;
  return FinGroup::from_table(names, t);
}

bool is_homomorphism(const FinGroup& a, const FinGroup& b, const std::vector<Index>& map) {
  if (map.size() != a.order()) return false;
  for (Index x : map)
    if (x < 0 || x >= static_cast<Index>(b.order())) return false;
  for (Index x = 0; x < static_cast<Index>(a.order()); ++x)
    for (Index y = 0; y < static_cast<Index>(a.order()); ++y)
      if (map[a.mul(x, y)] != b.mul(map[x], map[y])) return false;
  return true;
}

std::vector<std::vector<Index>> homomorphisms(const FinGroup& a, const FinGroup& b) {
  std::vector<std::vector<Index>> out;
  for_each_generator_assignment(
      a, b, [&](Index gen, Index img) { return a.element_order(gen) % b.element_order(img) == 0; },
      [&](const std::vector<Index>& m) {
        out.push_back(m);
        return true;
      });
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<Index>> find_isomorphism(const FinGroup& a, const FinGroup& b) {
  if (a.order() != b.order() || order_profile(a) != order_profile(b)) return std::nullopt;
  std::optional<std::vector<Index>> found;
  for_each_generator_assignment(
      a, b, [&](Index gen, Index img) { return a.element_order(gen) == b.element_order(img); },
      [&](const std::vector<Index>& m) {
        std::vector<bool> hit(b.order(), false);
        for (Index y : m) hit[y] = true;
        if (std::all_of(hit.begin(), hit.end(), [](bool h) { return h; })) {
          found = m;
          return false;
        }
        return true;
      });
  return found;
}

Automorphisms automorphisms(const FinGroup& g, std::size_t budget) {
  if (g.order() > budget)
    throw BudgetExceeded("Aut computation for a group of order " + std::to_string(g.order()) +
                         " exceeds budget " + std::to_string(budget));
  std::vector<std::vector<Index>> maps;
  for_each_generator_assignment(
      g, g, [&](Index gen, Index img) { return g.element_order(gen) == g.element_order(img); },
      [&](const std::vector<Index>& m) {
        std::vector<bool> hit(g.order(), false);
        for (Index y : m) hit[y] = true;
        if (std::all_of(hit.begin(), hit.end(), [](bool h) { return h; })) maps.push_back(m);
        return true;
      });
  std::sort(maps.begin(), maps.end());
  std::map<std::vector<Index>, Index> idx;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    idx[maps[i]] = static_cast<Index>(i);
    names.push_back(one_line(maps[i]));
  }
  std::vector<std::vector<Index>> t(maps.size(), std::vector<Index>(maps.size()));
  for (std::size_t a = 0; a < maps.size(); ++a)
    for (std::size_t b = 0; b < maps.size(); ++b) {
      std::vector<Index> c(g.order());
      for (std::size_t x = 0; x < g.order(); ++x) c[x] = maps[a][maps[b][x]];
      t[a][b] = idx.at(c);
    }
  Automorphisms aut;
  aut.group = FinGroup::from_table(names, t, "Aut(" + g.label() + ")");
  aut.maps = std::move(maps);
  for (Index x = 0; x < static_cast<Index>(g.order()); ++x) {
    std::vector<Index> c(g.order());
    for (Index h = 0; h < static_cast<Index>(g.order()); ++h) c[h] = g.mul(g.mul(x, h), g.inv(x));
    aut.theta.push_back(idx.at(c));
  }
  return aut;
}

InnOut inn_out(const Automorphisms& aut) {
  InnOut r;
  r.inner = aut.theta;
  std::sort(r.inner.begin(), r.inner.end());
  r.inner.erase(std::unique(r.inner.begin(), r.inner.end()), r.inner.end());
  r.out = quotient(aut.group, r.inner, &r.projection);
  r.out.set_label("Out");
  return r;
}

CompletenessCertificate is_complete(const FinGroup& g, std::size_t budget) {
  CompletenessCertificate c;
  c.center_order = center(g).size();
  auto aut = automorphisms(g, budget);
  auto io = inn_out(aut);
  c.aut_order = aut.group.order();
  c.inner_order = io.inner.size();
  c.out_order = io.out.order();
  std::set<Index> image(aut.theta.begin(), aut.theta.end());
  c.theta_injective = image.size() == g.order();
  c.theta_surjective = image.size() == aut.group.order();
  c.by_center_and_out = c.center_order == 1 && c.out_order == 1;
  c.by_theta = c.theta_injective && c.theta_surjective;
  return c;
}

AutomorphismTower automorphism_tower(const FinGroup& g, int max_steps, std::size_t budget) {
  AutomorphismTower tower;
  tower.stages.push_back(g);
  while (true) {
    const FinGroup& cur = tower.stages.back();
    auto cert = is_complete(cur, budget);
    if (cert.complete()) {
      tower.stabilized = true;
      break;
    }
    if (tower.steps >= max_steps) break;
    auto aut = automorphisms(cur, budget);
    tower.theta_injective.push_back(cert.theta_injective);
    tower.stages.push_back(aut.group);
    ++tower.steps;
  }
  return tower;
}

EquivalenceGroupoid eq_bg(const FinGroup& g, std::size_t budget) {
  EquivalenceGroupoid out;
  auto aut = automorphisms(g, budget);
  const auto n = static_cast<Index>(aut.maps.size());
  out.num_functors = aut.maps.size();
  std::map<std::vector<Index>, Index> idx;
  for (Index i = 0; i < n; ++i) idx[aut.maps[i]] = i;

  // A natural isomorphism phi => psi is an element h with psi = c_h o phi.
  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<Index(Index)> find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Index i = 0; i < n; ++i) {
    for (Index h = 0; h < static_cast<Index>(g.order()); ++h) {
      std::vector<Index> psi(g.order());
      for (Index x = 0; x < static_cast<Index>(g.order()); ++x)
        psi[x] = g.mul(g.mul(h, aut.maps[i][x]), g.inv(h));
      Index a = find(i), b = find(idx.at(psi));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<Index, Index> component;
  std::vector<Index> reps;
  for (Index i = 0; i < n; ++i) {
    if (component.emplace(find(i), static_cast<Index>(reps.size())).second) reps.push_back(i);
  }
  std::vector<std::string> names;
  std::vector<std::vector<Index>> t(reps.size(), std::vector<Index>(reps.size()));
  for (std::size_t a = 0; a < reps.size(); ++a) {
    names.push_back("[" + one_line(aut.maps[reps[a]]) + "]");
    for (std::size_t b = 0; b < reps.size(); ++b) {
      std::vector<Index> c(g.order());
      for (std::size_t x = 0; x < g.order(); ++x) c[x] = aut.maps[reps[a]][aut.maps[reps[b]][x]];
      t[a][b] = component.at(find(idx.at(c)));
    }
  }
  out.pi0 = FinGroup::from_table(names, t, "pi0");

  std::vector<Index> loops;
  for (Index h = 0; h < static_cast<Index>(g.order()); ++h) {
    bool fixes = true;
    for (Index x = 0; x < static_cast<Index>(g.order()) && fixes; ++x)
      fixes = g.mul(g.mul(h, x), g.inv(h)) == x;
    if (fixes) loops.push_back(h);
  }
  out.pi1 = subgroup_group(g, loops);
  out.pi1.set_label("pi1");

  auto io = inn_out(aut);
  out.pi0_matches_out = isomorphic(out.pi0, io.out);
  out.pi1_matches_center = isomorphic(out.pi1, subgroup_group(g, center(g)));
  return out;
}

GroupPullback grp_pullback(const GroupHom& f, const GroupHom& g) {
  if (f.target->table() != g.target->table())
    throw ValidationError({"pullback of homomorphisms with different targets", ""});
  GroupPullback pb;
  const FinGroup& a = *f.source;
  const FinGroup& b = *g.source;
  for (Index y = 0; y < static_cast<Index>(a.order()); ++y)
    for (Index z = 0; z < static_cast<Index>(b.order()); ++z)
      if (f.map[y] == g.map[z]) pb.pairs.emplace_back(y, z);
  std::map<std::pair<Index, Index>, Index> idx;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < pb.pairs.size(); ++i) {
    idx[pb.pairs[i]] = static_cast<Index>(i);
    names.push_back("(" + a.name(pb.pairs[i].first) + "," + b.name(pb.pairs[i].second) + ")");
    pb.proj1.push_back(pb.pairs[i].first);
    pb.proj2.push_back(pb.pairs[i].second);
  }
  std::vector<std::vector<Index>> t(pb.pairs.size(), std::vector<Index>(pb.pairs.size()));
  for (std::size_t i = 0; i < pb.pairs.size(); ++i)
    for (std::size_t j = 0; j < pb.pairs.size(); ++j)
      t[i][j] = idx.at({a.mul(pb.pairs[i].first, pb.pairs[j].first),
                        b.mul(pb.pairs[i].second, pb.pairs[j].second)});
  pb.group = FinGroup::from_table(names, t);
  return pb;
}

namespace {

// Fills an n x n table with identity 0 row/column, Latin and associative.
class TableSearch {
 public:
  explicit TableSearch(int n) : n_(n), t_(n, std::vector<Index>(n, kNone)) {
    for (int x = 0; x < n; ++x) {
      t_[0][x] = x;
      t_[x][0] = x;
    }
    row_.assign(n, 0);
    col_.assign(n, 0);
    for (int x = 0; x < n; ++x) {
      row_[x] |= 1u << x;
      col_[x] |= 1u << x;
    }
    for (int a = 1; a < n; ++a)
      for (int b = 1; b < n; ++b) cells_.emplace_back(a, b);
  }

  void run(const std::function<void(const std::vector<std::vector<Index>>&)>& visit) {
    visit_ = &visit;
    fill(0);
  }

 private:
  bool consistent(int a, int b) const {
    const Index v = t_[a][b];
    for (int z = 0; z < n_; ++z) {
      Index w = t_[b][z];
      if (t_[v][z] != kNone && w != kNone && t_[a][w] != kNone && t_[v][z] != t_[a][w]) return false;
    }
    for (int x = 0; x < n_; ++x) {
      Index u = t_[x][a];
      if (u != kNone && t_[u][b] != kNone && t_[x][v] != kNone && t_[u][b] != t_[x][v]) return false;
    }
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y) {
        if (t_[x][y] == a) {
          Index w = t_[y][b];
          if (w != kNone && t_[x][w] != kNone && t_[x][w] != v) return false;
        }
        if (t_[x][y] == b) {
          Index u = t_[a][x];
          if (u != kNone && t_[u][y] != kNone && t_[u][y] != v) return false;
        }
      }
    return true;
  }

  void fill(std::size_t k) {
    if (k == cells_.size()) {
      if (group_report(t_).empty()) (*visit_)(t_);
      return;
    }
    auto [a, b] = cells_[k];
    for (int v = 0; v < n_; ++v) {
      const unsigned bit = 1u << v;
      if ((row_[a] & bit) || (col_[b] & bit)) continue;
      t_[a][b] = v;
      row_[a] |= bit;
      col_[b] |= bit;
      if (consistent(a, b)) fill(k + 1);
      row_[a] &= ~bit;
      col_[b] &= ~bit;
      t_[a][b] = kNone;
    }
  }

  int n_;
  std::vector<std::vector<Index>> t_;
  std::vector<unsigned> row_, col_;
  std::vector<std::pair<int, int>> cells_;
  const std::function<void(const std::vector<std::vector<Index>>&)>* visit_ = nullptr;
};

std::string known_label(const FinGroup& g) {
  std::vector<FinGroup> named;
  const int n = static_cast<int>(g.order());
  named.push_back(cyclic_group(n));
  if (n == 4) named.push_back(direct_product(cyclic_group(2), cyclic_group(2)));
  if (n == 6) named.push_back(symmetric_group(3));
  if (n == 8) {
    named.push_back(direct_product(cyclic_group(4), cyclic_group(2)));
    named.push_back(direct_product(direct_product(cyclic_group(2), cyclic_group(2)), cyclic_group(2)));
    named.push_back(dihedral_group(4));
    named.push_back(quaternion_group());
  }
  for (const auto& h : named)
    if (isomorphic(g, h)) return h.label();
  return "G" + std::to_string(n);
}

}  // namespace

std::vector<FinGroup> groups_of_order(int n) {
  if (n < 1) return {};
  if (n == 1) return {trivial_group()};
  if (n > 16) throw BudgetExceeded("table enumeration beyond order 16");
  std::vector<FinGroup> found;
  TableSearch search(n);
  search.run([&](const std::vector<std::vector<Index>>& t) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    auto g = FinGroup::from_table(names, t);
    for (const auto& h : found)
      if (isomorphic(g, h)) return;
    found.push_back(std::move(g));
  });
  for (auto& g : found) g.set_label(known_label(g));
  std::sort(found.begin(), found.end(),
            [](const FinGroup& a, const FinGroup& b) { return a.label() < b.label(); });
  return found;
}

std::vector<FinGroup> small_groups(int max_order, int budget) {
  if (max_order > budget)
    throw BudgetExceeded("small_groups(" + std::to_string(max_order) + ") exceeds budget " +
                         std::to_string(budget));
  std::vector<FinGroup> out;
  for (int n = 1; n <= max_order; ++n) {
    auto gs = groups_of_order(n);
    out.insert(out.end(), gs.begin(), gs.end());
  }
  return out;
}

bool is_cartesian_group_square(const GroupHom& q, const GroupHom& p, const GroupSquare& s) {
  const FinGroup& y = *q.source;
  const FinGroup& x = *q.target;
  const FinGroup& h = *p.source;
  for (Index e = 0; e < static_cast<Index>(y.order()); ++e)
    if (p.map[s.v[e]] != s.u[q.map[e]]) return false;
  std::size_t pullback = 0;
  for (Index a = 0; a < static_cast<Index>(x.order()); ++a)
    for (Index b = 0; b < static_cast<Index>(h.order()); ++b)
      if (s.u[a] == p.map[b]) ++pullback;
  if (pullback != y.order()) return false;
  std::set<std::pair<Index, Index>> image;
  for (Index e = 0; e < static_cast<Index>(y.order()); ++e) image.emplace(q.map[e], s.v[e]);
  return image.size() == y.order();
}

GroupRefutation grp_univalence_refute(const GroupHom& p, const std::vector<FinGroupPtr>& catalog) {
  GroupRefutation r;
  std::vector<FinGroupPtr> groups = catalog;
  groups.push_back(p.source);
  groups.push_back(p.target);
  r.catalog_size = groups.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = 0; j < groups.size(); ++j) pairs.emplace_back(i, j);
  std::stable_sort(pairs.begin(), pairs.end(), [&](auto a, auto b) {
    return groups[a.first]->order() + groups[a.second]->order() <
           groups[b.first]->order() + groups[b.second]->order();
  });
  std::map<std::size_t, std::vector<std::vector<Index>>> into_g, into_h;
  auto homs_to = [&](std::map<std::size_t, std::vector<std::vector<Index>>>& cache, std::size_t i,
                     const FinGroup& t) -> const std::vector<std::vector<Index>>& {
    auto it = cache.find(i);
    if (it == cache.end()) it = cache.emplace(i, homomorphisms(*groups[i], t)).first;
    return it->second;
  };
  for (auto [yi, xi] : pairs) {
    const auto qs = homomorphisms(*groups[yi], *groups[xi]);
    const auto& us = homs_to(into_g, xi, *p.target);
    const auto& vs = homs_to(into_h, yi, *p.source);
    for (const auto& qm : qs) {
      ++r.homs_tested;
      GroupHom q{groups[yi], groups[xi], qm};
      std::vector<GroupSquare> found;
      for (const auto& u : us) {
        for (const auto& v : vs) {
          GroupSquare s{u, v};
          if (is_cartesian_group_square(q, p, s)) {
            found.push_back(s);
            if (found.size() == 2) break;
          }
        }
        if (found.size() == 2) break;
      }
      if (found.size() == 2) {
        r.refuted = true;
        r.witness_q = q;
        r.first = found[0];
        r.second = found[1];
        return r;
      }
    }
  }
  return r;
}

std::string describe_hom(const GroupHom& h) {
  std::ostringstream os;
  os << (h.source->label().empty() ? "G" : h.source->label()) << " -> "
     << (h.target->label().empty() ? "G" : h.target->label()) << " {";
  for (std::size_t i = 0; i < h.map.size(); ++i)
    os << (i ? ", " : "") << h.source->name(static_cast<Index>(i)) << "->" << h.target->name(h.map[i]);
  os << "}";
  return os.str();
}

}  // namespace univ
