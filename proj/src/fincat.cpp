#include "univalence/fincat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace univ {

FinCat::FinCat(std::vector<std::string> objects, std::vector<std::string> morphisms,
               std::vector<Index> src, std::vector<Index> tgt,
               std::vector<Index> identities, std::vector<Index> composition)
    : objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      src_(std::move(src)),
      tgt_(std::move(tgt)),
      identities_(std::move(identities)),
      composition_(std::move(composition)) {
  index();
}

void FinCat::index() {
  const std::size_t n = objects_.size();
  hom_.assign(n * n, {});
  into_.assign(n, {});
  for (Index f = 0; f < static_cast<Index>(morphisms_.size()); ++f) {
    hom_[static_cast<std::size_t>(src_[f]) * n + tgt_[f]].push_back(f);
    into_[tgt_[f]].push_back(f);
  }
  object_ids_.clear();
  morphism_ids_.clear();
  for (Index i = 0; i < static_cast<Index>(n); ++i) object_ids_.emplace(objects_[i], i);
  for (Index i = 0; i < static_cast<Index>(morphisms_.size()); ++i)
    morphism_ids_.emplace(morphisms_[i], i);
}

std::optional<Index> FinCat::find_object(const std::string& name) const {
  auto it = object_ids_.find(name);
  if (it == object_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<Index> FinCat::find_morphism(const std::string& name) const {
  auto it = morphism_ids_.find(name);
  if (it == morphism_ids_.end()) return std::nullopt;
  return it->second;
}

Index FinCat::object_at(const std::string& name) const {
  auto r = find_object(name);
  if (!r) throw UnknownIdError("unknown object id '" + name + "'");
  return *r;
}

Index FinCat::morphism_at(const std::string& name) const {
  auto r = find_morphism(name);
  if (!r) throw UnknownIdError("unknown morphism id '" + name + "'");
  return *r;
}

RawCategory FinCat::to_raw() const {
  RawCategory raw;
  raw.objects = objects_;
  for (std::size_t f = 0; f < morphisms_.size(); ++f)
    raw.morphisms.push_back({morphisms_[f], objects_[src_[f]], objects_[tgt_[f]]});
  for (std::size_t c = 0; c < objects_.size(); ++c)
    raw.identities[objects_[c]] = morphisms_[identities_[c]];
  for (Index f = 0; f < static_cast<Index>(morphisms_.size()); ++f) {
    for (Index b = 0; b < static_cast<Index>(objects_.size()); ++b) {
      for (Index g : hom(tgt_[f], b)) {
        raw.composition.push_back({morphisms_[f], morphisms_[g], morphisms_[compose(f, g)]});
      }
    }
  }
  return raw;
}

std::vector<Violation> FinCat::check_laws() const {
  std::vector<Violation> out;
  const auto m = static_cast<Index>(morphisms_.size());
  for (Index f = 0; f < m; ++f) {
    for (Index g = 0; g < m; ++g) {
      Index h = compose(f, g);
      bool composable = tgt_[f] == src_[g];
      if (composable && h == kNone) {
        out.push_back({"missing composite", morphisms_[f] + " ; " + morphisms_[g]});
      } else if (!composable && h != kNone) {
        out.push_back({"composite of non-composable pair", morphisms_[f] + " ; " + morphisms_[g]});
      } else if (composable && (src_[h] != src_[f] || tgt_[h] != tgt_[g])) {
        out.push_back({"composite has wrong source/target",
                       morphisms_[f] + " ; " + morphisms_[g] + " = " + morphisms_[h]});
      }
    }
  }
  if (!out.empty()) return out;
  for (Index f = 0; f < m; ++f) {
    if (compose(identities_[src_[f]], f) != f)
      out.push_back({"left unit", morphisms_[identities_[src_[f]]] + " ; " + morphisms_[f]});
    if (compose(f, identities_[tgt_[f]]) != f)
      out.push_back({"right unit", morphisms_[f] + " ; " + morphisms_[identities_[tgt_[f]]]});
  }
  for (Index f = 0; f < m; ++f) {
    for (Index b = 0; b < static_cast<Index>(objects_.size()); ++b) {
      for (Index g : hom(tgt_[f], b)) {
        Index fg = compose(f, g);
        for (Index c = 0; c < static_cast<Index>(objects_.size()); ++c) {
          for (Index h : hom(b, c)) {
            if (compose(fg, h) != compose(f, compose(g, h))) {
              out.push_back({"associativity",
                             morphisms_[f] + " ; " + morphisms_[g] + " ; " + morphisms_[h]});
            }
          }
        }
      }
    }
  }
  return out;
}

std::vector<Violation> category_report(const RawCategory& raw) {
  std::vector<Violation> out;
  std::map<std::string, Index> obj;
  for (const auto& o : raw.objects) {
    if (!obj.emplace(o, static_cast<Index>(obj.size())).second)
      out.push_back({"duplicate object id", o});
  }
  std::map<std::string, Index> mor;
  std::vector<Index> src, tgt;
  std::vector<std::string> names;
  for (const auto& m : raw.morphisms) {
    auto s = obj.find(m.src);
    auto t = obj.find(m.tgt);
    if (s == obj.end() || t == obj.end()) {
      out.push_back({"unknown source/target object", m.id});
      continue;
    }
    if (!mor.emplace(m.id, static_cast<Index>(names.size())).second) {
      out.push_back({"duplicate morphism id", m.id});
      continue;
    }
    names.push_back(m.id);
    src.push_back(s->second);
    tgt.push_back(t->second);
  }
  if (!out.empty()) return out;

  std::vector<Index> ids(raw.objects.size(), kNone);
  for (const auto& [o, f] : raw.identities) {
    auto oi = obj.find(o);
    auto fi = mor.find(f);
    if (oi == obj.end()) {
      out.push_back({"identity for unknown object", o});
      continue;
    }
    if (fi == mor.end()) {
      out.push_back({"unknown identity morphism", o + " -> " + f});
      continue;
    }
    if (src[fi->second] != oi->second || tgt[fi->second] != oi->second) {
      out.push_back({"identity is not an endomorphism", o + " -> " + f});
      continue;
    }
    ids[oi->second] = fi->second;
  }
  for (std::size_t c = 0; c < ids.size(); ++c)
    if (ids[c] == kNone) out.push_back({"missing identity", raw.objects[c]});
  if (!out.empty()) return out;

  const std::size_t m = names.size();
  std::vector<Index> comp(m * m, kNone);
  for (const auto& e : raw.composition) {
    auto f = mor.find(e.first);
    auto g = mor.find(e.then);
    auto h = mor.find(e.result);
    if (f == mor.end() || g == mor.end() || h == mor.end()) {
      out.push_back({"composition entry with unknown id", e.first + " ; " + e.then + " = " + e.result});
      continue;
    }
    Index& slot = comp[static_cast<std::size_t>(f->second) * m + g->second];
    if (slot != kNone && slot != h->second) {
      out.push_back({"conflicting composition entries", e.first + " ; " + e.then});
      continue;
    }
    slot = h->second;
  }
  if (!out.empty()) return out;

  FinCat c(raw.objects, names, src, tgt, ids, comp);
  return c.check_laws();
}

FinCat validate_category(const RawCategory& raw) {
  auto report = category_report(raw);
  if (!report.empty()) throw ValidationError(report.front());
  std::map<std::string, Index> obj;
  for (const auto& o : raw.objects) obj.emplace(o, static_cast<Index>(obj.size()));
  std::map<std::string, Index> mor;
  std::vector<std::string> names;
  std::vector<Index> src, tgt;
  for (const auto& mm : raw.morphisms) {
    mor.emplace(mm.id, static_cast<Index>(names.size()));
    names.push_back(mm.id);
    src.push_back(obj.at(mm.src));
    tgt.push_back(obj.at(mm.tgt));
  }
  std::vector<Index> ids(raw.objects.size());
  for (const auto& [o, f] : raw.identities) ids[obj.at(o)] = mor.at(f);
  const std::size_t m = names.size();
  std::vector<Index> comp(m * m, kNone);
  for (const auto& e : raw.composition)
    comp[static_cast<std::size_t>(mor.at(e.first)) * m + mor.at(e.then)] = mor.at(e.result);
  return FinCat(raw.objects, names, src, tgt, ids, comp);
}

std::optional<Index> inverse_of(const FinCat& c, Index f) {
  if (f < 0 || f >= static_cast<Index>(c.num_morphisms()))
    throw UnknownIdError("unknown morphism index " + std::to_string(f));
  for (Index g : c.hom(c.tgt(f), c.src(f))) {
    if (c.compose(f, g) == c.identity(c.src(f)) && c.compose(g, f) == c.identity(c.tgt(f)))
      return g;
  }
  return std::nullopt;
}

bool is_iso(const FinCat& c, Index f) { return inverse_of(c, f).has_value(); }

bool is_iso(const FinCat& c, const std::string& morphism_id) {
  return is_iso(c, c.morphism_at(morphism_id));
}

std::vector<std::vector<Index>> iso_classes(const FinCat& c) {
  const auto n = static_cast<Index>(c.num_objects());
  std::vector<Index> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<Index(Index)> find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f) {
    if (c.src(f) != c.tgt(f) && is_iso(c, f)) {
      Index a = find(c.src(f)), b = find(c.tgt(f));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<Index, std::vector<Index>> groups;
  for (Index x = 0; x < n; ++x) groups[find(x)].push_back(x);
  std::vector<std::vector<Index>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

bool has_nontrivial_isos(const FinCat& c) {
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f)
    if (!c.is_identity(f) && is_iso(c, f)) return true;
  return false;
}

bool is_zero_category(const FinCat& c) {
  const auto n = static_cast<Index>(c.num_objects());
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      if (c.hom(a, b).size() > 1) return false;
  return true;
}

bool is_poset_category(const FinCat& c) {
  if (!is_zero_category(c)) return false;
  const auto n = static_cast<Index>(c.num_objects());
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b)
      if (!c.hom(a, b).empty() && !c.hom(b, a).empty()) return false;
  return true;
}

std::vector<Violation> functor_report(const FinFunctor& fn) {
  std::vector<Violation> out;
  const FinCat& s = *fn.source;
  const FinCat& t = *fn.target;
  if (fn.object_map.size() != s.num_objects() || fn.morphism_map.size() != s.num_morphisms()) {
    out.push_back({"functor map size mismatch", ""});
    return out;
  }
  for (Index f = 0; f < static_cast<Index>(s.num_morphisms()); ++f) {
    Index g = fn.morphism_map[f];
    if (t.src(g) != fn.object_map[s.src(f)] || t.tgt(g) != fn.object_map[s.tgt(f)])
      out.push_back({"functor breaks source/target", s.morphism_name(f)});
  }
  for (Index c = 0; c < static_cast<Index>(s.num_objects()); ++c)
    if (fn.morphism_map[s.identity(c)] != t.identity(fn.object_map[c]))
      out.push_back({"functor breaks identity", s.object_name(c)});
  if (!out.empty()) return out;
  for (Index f = 0; f < static_cast<Index>(s.num_morphisms()); ++f) {
    for (Index b = 0; b < static_cast<Index>(s.num_objects()); ++b) {
      for (Index g : s.hom(s.tgt(f), b)) {
        if (fn.morphism_map[s.compose(f, g)] !=
            t.compose(fn.morphism_map[f], fn.morphism_map[g]))
          out.push_back({"functor breaks composition", s.morphism_name(f) + " ; " + s.morphism_name(g)});
      }
    }
  }
  return out;
}

Preorder Preorder::from_pairs(std::vector<std::string> carrier,
                              const std::vector<std::pair<std::string, std::string>>& pairs) {
  Preorder p;
  p.carrier = std::move(carrier);
  std::map<std::string, Index> ids;
  for (std::size_t i = 0; i < p.carrier.size(); ++i) {
    if (!ids.emplace(p.carrier[i], static_cast<Index>(i)).second)
      throw ValidationError({"duplicate carrier element", p.carrier[i]});
  }
  p.leq.assign(p.carrier.size(), std::vector<bool>(p.carrier.size(), false));
  for (std::size_t i = 0; i < p.carrier.size(); ++i) p.leq[i][i] = true;
  for (const auto& [a, b] : pairs) {
    auto ia = ids.find(a), ib = ids.find(b);
    if (ia == ids.end() || ib == ids.end())
      throw ValidationError({"relation mentions unknown element", a + " <= " + b});
    p.leq[ia->second][ib->second] = true;
  }
  return p;
}

bool Preorder::is_reflexive() const {
  for (std::size_t x = 0; x < size(); ++x)
    if (!leq[x][x]) return false;
  return true;
}

bool Preorder::is_transitive() const {
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y = 0; y < size(); ++y)
      if (leq[x][y])
        for (std::size_t z = 0; z < size(); ++z)
          if (leq[y][z] && !leq[x][z]) return false;
  return true;
}

bool Preorder::is_antisymmetric() const {
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y = x + 1; y < size(); ++y)
      if (leq[x][y] && leq[y][x]) return false;
  return true;
}

std::vector<Violation> Preorder::report() const {
  std::vector<Violation> out;
  for (std::size_t x = 0; x < size(); ++x)
    if (!leq[x][x]) out.push_back({"reflexivity", carrier[x]});
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y = 0; y < size(); ++y)
      if (leq[x][y])
        for (std::size_t z = 0; z < size(); ++z)
          if (leq[y][z] && !leq[x][z])
            out.push_back({"transitivity", carrier[x] + " <= " + carrier[y] + " <= " + carrier[z]});
  return out;
}

PosetQuotient preorder_to_poset(const Preorder& p) {
  PosetQuotient q;
  q.projection.assign(p.size(), kNone);
  std::vector<Index> reps;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (q.projection[x] != kNone) continue;
    auto cls = static_cast<Index>(reps.size());
    reps.push_back(static_cast<Index>(x));
    for (std::size_t y = x; y < p.size(); ++y)
      if (p.leq[x][y] && p.leq[y][x]) q.projection[y] = cls;
  }
  for (Index r : reps) q.poset.carrier.push_back("[" + p.carrier[r] + "]");
  q.poset.leq.assign(reps.size(), std::vector<bool>(reps.size(), false));
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b)
      q.poset.leq[a][b] = p.leq[reps[a]][reps[b]];
  return q;
}

bool preorders_isomorphic(const Preorder& a, const Preorder& b) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  std::vector<Index> perm(n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      bool ok = a.leq[i][i] == b.leq[j][j];
      for (std::size_t k = 0; ok && k < i; ++k)
        ok = a.leq[i][k] == b.leq[j][perm[k]] && a.leq[k][i] == b.leq[perm[k]][j];
      if (!ok) continue;
      used[j] = true;
      perm[i] = static_cast<Index>(j);
      if (go(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return go(0);
}

FinCat preorder_category(const Preorder& p) {
  const std::size_t n = p.size();
  std::vector<std::string> names;
  std::vector<Index> src, tgt;
  std::vector<std::vector<Index>> id(n, std::vector<Index>(n, kNone));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (p.leq[x][y]) {
        id[x][y] = static_cast<Index>(names.size());
        names.push_back(p.carrier[x] + "<=" + p.carrier[y]);
        src.push_back(static_cast<Index>(x));
        tgt.push_back(static_cast<Index>(y));
      }
  std::vector<Index> ids(n);
  for (std::size_t x = 0; x < n; ++x) ids[x] = id[x][x];
  const std::size_t m = names.size();
  std::vector<Index> comp(m * m, kNone);
  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t g = 0; g < m; ++g)
      if (tgt[f] == src[g]) comp[f * m + g] = id[src[f]][tgt[g]];
  return FinCat(p.carrier, names, src, tgt, ids, comp);
}

Preorder category_preorder(const FinCat& c) {
  if (!is_zero_category(c)) throw ValidationError({"not a zero category", "some hom-set has two elements"});
  Preorder p;
  p.carrier = c.object_names();
  p.leq.assign(c.num_objects(), std::vector<bool>(c.num_objects(), false));
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f) p.leq[c.src(f)][c.tgt(f)] = true;
  return p;
}

FinCat terminal_category() {
  return FinCat({"*"}, {"id*"}, {0}, {0}, {0}, {0});
}

FinCat discrete_category(const std::vector<std::string>& objects) {
  const std::size_t n = objects.size();
  std::vector<std::string> names;
  std::vector<Index> src, ids, comp(n * n, kNone);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("id" + objects[i]);
    src.push_back(static_cast<Index>(i));
    ids.push_back(static_cast<Index>(i));
    comp[i * n + i] = static_cast<Index>(i);
  }
  return FinCat(objects, names, src, src, ids, comp);
}

namespace {

// Shared core of finset_category and subsets_category: objects are finite
// sets given by explicit element lists, morphisms are all functions.
FinCat function_category(const std::vector<std::string>& object_names,
                         const std::vector<std::vector<int>>& elements,
                         const std::function<std::string(Index, Index, const std::vector<int>&)>& name) {
  const auto n = static_cast<Index>(object_names.size());
  std::vector<std::string> names;
  std::vector<Index> src, tgt;
  std::vector<std::vector<int>> values;  // positions into target element list
  std::vector<Index> ids(n, kNone);
  std::map<std::tuple<Index, Index, std::vector<int>>, Index> lookup;
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const std::size_t k = elements[a].size(), m = elements[b].size();
      if (m == 0 && k > 0) continue;
      std::vector<int> v(k, 0);
      while (true) {
        std::vector<int> shown(k);
        for (std::size_t i = 0; i < k; ++i) shown[i] = elements[b][v[i]];
        auto f = static_cast<Index>(names.size());
        names.push_back(name(a, b, shown));
        src.push_back(a);
        tgt.push_back(b);
        values.push_back(v);
        lookup.emplace(std::make_tuple(a, b, v), f);
        if (a == b) {
          bool ident = true;
          for (std::size_t i = 0; i < k; ++i) ident = ident && v[i] == static_cast<int>(i);
          if (ident) ids[a] = f;
        }
        std::size_t i = 0;
        while (i < k && ++v[i] == static_cast<int>(m)) v[i++] = 0;
        if (i == k) break;
      }
    }
  }
  const std::size_t mm = names.size();
  std::vector<Index> comp(mm * mm, kNone);
  for (std::size_t f = 0; f < mm; ++f) {
    for (std::size_t g = 0; g < mm; ++g) {
      if (tgt[f] != src[g]) continue;
      std::vector<int> v(values[f].size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = values[g][values[f][i]];
      comp[f * mm + g] = lookup.at(std::make_tuple(src[f], tgt[g], v));
    }
  }
  return FinCat(object_names, names, src, tgt, ids, comp);
}

}  // namespace

std::string finset_morphism_name(int n, int m, const std::vector<int>& values) {
  std::ostringstream os;
  os << n << ">" << m << ":";
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
  return os.str();
}

FinCat finset_category(const std::vector<int>& sizes) {
  std::vector<std::string> objs;
  std::vector<std::vector<int>> elems;
  for (int n : sizes) {
    objs.push_back("[" + std::to_string(n) + "]");
    std::vector<int> e(n);
    std::iota(e.begin(), e.end(), 1);
    elems.push_back(e);
  }
  return function_category(objs, elems, [&](Index a, Index b, const std::vector<int>& v) {
    return finset_morphism_name(sizes[a], sizes[b], v);
  });
}

FinCat subsets_category(int n) {
  std::vector<std::string> objs;
  std::vector<std::vector<int>> elems;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> e;
    std::string name = "{";
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) {
        if (!e.empty()) name += ",";
        e.push_back(i + 1);
        name += std::to_string(i + 1);
      }
    objs.push_back(name + "}");
    elems.push_back(e);
  }
  return function_category(objs, elems, [&](Index a, Index b, const std::vector<int>& v) {
    std::string s = objs[a] + ">" + objs[b] + ":";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  });
}

FinCat renamed(const FinCat& c, const std::string& prefix) {
  RawCategory raw = c.to_raw();
  for (auto& o : raw.objects) o = prefix + o;
  for (auto& m : raw.morphisms) {
    m.id = prefix + m.id;
    m.src = prefix + m.src;
    m.tgt = prefix + m.tgt;
  }
  std::map<std::string, std::string> ids;
  for (auto& [o, f] : raw.identities) ids[prefix + o] = prefix + f;
  raw.identities = std::move(ids);
  for (auto& e : raw.composition) {
    e.first = prefix + e.first;
    e.then = prefix + e.then;
    e.result = prefix + e.result;
  }
  return validate_category(raw);
}

}  // namespace univ
