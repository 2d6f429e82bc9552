#include "univalence/presheaf.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace univ {

namespace {

void require_same_base(const Presheaf& a, const Presheaf& b, const char* what) {
  if (!same_base(a.base(), b.base())) throw ValidationError({"base mismatch", what});
}

// Position of each morphism inside hom(src, tgt).
std::vector<Index> hom_positions(const FinCat& c) {
  std::vector<Index> pos(c.num_morphisms(), kNone);
  for (Index a = 0; a < static_cast<Index>(c.num_objects()); ++a)
    for (Index b = 0; b < static_cast<Index>(c.num_objects()); ++b) {
      const auto& h = c.hom(a, b);
      for (std::size_t i = 0; i < h.size(); ++i) pos[h[i]] = static_cast<Index>(i);
    }
  return pos;
}

struct SubPresheaf {
  PresheafPtr obj;
  PresheafMap incl;
};

SubPresheaf sub_presheaf(const PresheafPtr& x, const std::vector<std::vector<bool>>& members) {
  const FinCat& base = x->base();
  const auto n = static_cast<Index>(base.num_objects());
  std::vector<std::vector<Index>> newidx(n), incl(n);
  std::vector<Index> sizes(n, 0);
  for (Index c = 0; c < n; ++c) {
    newidx[c].assign(x->size(c), kNone);
    for (Index e = 0; e < x->size(c); ++e)
      if (members[c][e]) {
        newidx[c][e] = sizes[c]++;
        incl[c].push_back(e);
      }
  }
  std::vector<std::vector<Index>> actions(base.num_morphisms());
  for (Index f = 0; f < static_cast<Index>(base.num_morphisms()); ++f) {
    const Index d = base.tgt(f);
    for (Index e : incl[d]) {
      Index r = newidx[base.src(f)][x->act(f, e)];
      if (r == kNone) throw ValidationError({"subset not closed under restriction", base.morphism_name(f)});
      actions[f].push_back(r);
    }
  }
  std::vector<std::vector<std::string>> labels;
  if (x->has_labels()) {
    labels.resize(n);
    for (Index c = 0; c < n; ++c)
      for (Index e : incl[c]) labels[c].push_back(x->label(c, e));
  }
  auto obj = make_presheaf(Presheaf(x->base_ptr(), sizes, std::move(actions), std::move(labels)));
  return {obj, PresheafMap{obj, x, std::move(incl)}};
}

class HomSearch {
 public:
  HomSearch(const Presheaf& x, const Presheaf& y, const HomSearchOptions& opts)
      : x_(x), y_(y), opts_(opts) {
    const FinCat& base = x.base();
    const auto n = static_cast<Index>(base.num_objects());
    phi_.resize(n);
    used_.resize(n);
    std::vector<Index> objs(n);
    std::iota(objs.begin(), objs.end(), 0);
    std::stable_sort(objs.begin(), objs.end(), [&](Index a, Index b) {
      return base.into(a).size() > base.into(b).size();
    });
    for (Index c = 0; c < n; ++c) {
      phi_[c].assign(x.size(c), kNone);
      used_[c].assign(y.size(c), 0);
    }
    for (Index c : objs)
      for (Index e = 0; e < x.size(c); ++e) order_.emplace_back(c, e);
  }

  std::size_t run(const std::function<bool(const std::vector<std::vector<Index>>&)>& visit) {
    for (Index c = 0; c < static_cast<Index>(phi_.size()); ++c)
      if (x_.size(c) > 0 && y_.size(c) == 0) return 0;
    visit_ = &visit;
    rec(0);
    return visited_;
  }

 private:
  bool assign(Index c, Index e, Index v) {
    stack_.clear();
    stack_.push_back({c, e, v});
    const FinCat& base = x_.base();
    while (!stack_.empty()) {
      auto [cc, xe, ye] = stack_.back();
      stack_.pop_back();
      Index& slot = phi_[cc][xe];
      if (slot == ye) continue;
      if (slot != kNone) return false;
      if (opts_.allow && !opts_.allow(cc, xe, ye)) return false;
      if (opts_.injective && used_[cc][ye]) return false;
      slot = ye;
      if (opts_.injective) used_[cc][ye] = 1;
      trail_.emplace_back(cc, xe);
      for (Index f : base.into(cc)) {
        if (base.is_identity(f)) continue;
        stack_.push_back({base.src(f), x_.act(f, xe), y_.act(f, ye)});
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [c, e] = trail_.back();
      trail_.pop_back();
      if (opts_.injective) used_[c][phi_[c][e]] = 0;
      phi_[c][e] = kNone;
    }
  }

  void rec(std::size_t k) {
    while (k < order_.size() && phi_[order_[k].first][order_[k].second] != kNone) ++k;
    if (k == order_.size()) {
      ++visited_;
      if (!(*visit_)(phi_)) stop_ = true;
      return;
    }
    auto [c, e] = order_[k];
    for (Index v = 0; v < y_.size(c) && !stop_; ++v) {
      const std::size_t mark = trail_.size();
      if (assign(c, e, v)) rec(k + 1);
      undo(mark);
    }
  }

  struct Item {
    Index c, x, y;
  };

  const Presheaf& x_;
  const Presheaf& y_;
  const HomSearchOptions& opts_;
  std::vector<std::vector<Index>> phi_;
  std::vector<std::vector<char>> used_;
  std::vector<std::pair<Index, Index>> order_;
  std::vector<std::pair<Index, Index>> trail_;
  std::vector<Item> stack_;
  const std::function<bool(const std::vector<std::vector<Index>>&)>* visit_ = nullptr;
  std::size_t visited_ = 0;
  bool stop_ = false;
};

}  // namespace

Presheaf::Presheaf(FinCatPtr base, std::vector<Index> sizes, std::vector<std::vector<Index>> actions,
                   std::vector<std::vector<std::string>> labels)
    : base_(std::move(base)),
      sizes_(std::move(sizes)),
      actions_(std::move(actions)),
      labels_(std::move(labels)) {}

std::size_t Presheaf::total_size() const {
  std::size_t t = 0;
  for (Index s : sizes_) t += static_cast<std::size_t>(s);
  return t;
}

std::string Presheaf::label(Index c, Index x) const {
  if (has_labels()) return labels_[c][x];
  return std::to_string(x);
}

std::optional<Index> Presheaf::find_label(Index c, const std::string& l) const {
  for (Index x = 0; x < size(c); ++x)
    if (label(c, x) == l) return x;
  return std::nullopt;
}

std::vector<Violation> Presheaf::check() const {
  std::vector<Violation> out;
  const FinCat& b = *base_;
  if (sizes_.size() != b.num_objects()) {
    out.push_back({"wrong number of object sets", std::to_string(sizes_.size())});
    return out;
  }
  if (actions_.size() != b.num_morphisms()) {
    out.push_back({"wrong number of actions", std::to_string(actions_.size())});
    return out;
  }
  if (has_labels()) {
    for (Index c = 0; c < static_cast<Index>(b.num_objects()); ++c) {
      if (labels_[c].size() != static_cast<std::size_t>(sizes_[c])) {
        out.push_back({"label count", b.object_name(c)});
        continue;
      }
      std::set<std::string> seen(labels_[c].begin(), labels_[c].end());
      if (seen.size() != labels_[c].size()) out.push_back({"duplicate element id", b.object_name(c)});
    }
  }
  for (Index f = 0; f < static_cast<Index>(b.num_morphisms()); ++f) {
    const auto& a = actions_[f];
    if (a.size() != static_cast<std::size_t>(sizes_[b.tgt(f)])) {
      out.push_back({"action has wrong domain size", b.morphism_name(f)});
      continue;
    }
    for (Index v : a)
      if (v < 0 || v >= sizes_[b.src(f)]) {
        out.push_back({"action leaves its codomain", b.morphism_name(f)});
        break;
      }
  }
  if (!out.empty()) return out;
  for (Index c = 0; c < static_cast<Index>(b.num_objects()); ++c)
    for (Index x = 0; x < sizes_[c]; ++x)
      if (act(b.identity(c), x) != x) out.push_back({"identity action", b.object_name(c) + ":" + label(c, x)});
  for (Index f = 0; f < static_cast<Index>(b.num_morphisms()); ++f)
    for (Index g = 0; g < static_cast<Index>(b.num_morphisms()); ++g) {
      if (b.tgt(f) != b.src(g)) continue;
      const Index gf = b.compose(f, g);
      for (Index x = 0; x < sizes_[b.tgt(g)]; ++x)
        if (act(gf, x) != act(f, act(g, x)))
          out.push_back({"functoriality", b.morphism_name(f) + " ; " + b.morphism_name(g) + " at " +
                                              label(b.tgt(g), x)});
    }
  return out;
}

PresheafPtr make_presheaf(Presheaf p) { return std::make_shared<const Presheaf>(std::move(p)); }

PresheafPtr validate_presheaf(Presheaf p) {
  auto report = p.check();
  if (!report.empty()) throw ValidationError(report.front());
  return make_presheaf(std::move(p));
}

bool same_base(const FinCat& a, const FinCat& b) {
  if (&a == &b) return true;
  if (a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms()) return false;
  if (a.object_names() != b.object_names() || a.morphism_names() != b.morphism_names()) return false;
  for (Index f = 0; f < static_cast<Index>(a.num_morphisms()); ++f)
    if (a.src(f) != b.src(f) || a.tgt(f) != b.tgt(f)) return false;
  return true;
}

std::vector<Violation> PresheafMap::check() const {
  std::vector<Violation> out;
  if (!same_base(source->base(), target->base())) {
    out.push_back({"base mismatch", "map"});
    return out;
  }
  const FinCat& b = source->base();
  if (components.size() != b.num_objects()) {
    out.push_back({"wrong number of components", std::to_string(components.size())});
    return out;
  }
  for (Index c = 0; c < static_cast<Index>(b.num_objects()); ++c) {
    if (components[c].size() != static_cast<std::size_t>(source->size(c))) {
      out.push_back({"component has wrong domain size", b.object_name(c)});
      return out;
    }
    for (Index v : components[c])
      if (v < 0 || v >= target->size(c)) {
        out.push_back({"component leaves its codomain", b.object_name(c)});
        return out;
      }
  }
  for (Index f = 0; f < static_cast<Index>(b.num_morphisms()); ++f) {
    const Index c = b.src(f), d = b.tgt(f);
    for (Index x = 0; x < source->size(d); ++x)
      if (components[c][source->act(f, x)] != target->act(f, components[d][x]))
        out.push_back({"naturality", b.morphism_name(f) + " at " + source->label(d, x)});
  }
  return out;
}

bool operator==(const PresheafMap& a, const PresheafMap& b) { return a.components == b.components; }

PresheafMap identity_map(const PresheafPtr& x) {
  PresheafMap m{x, x, {}};
  for (Index c = 0; c < static_cast<Index>(x->base().num_objects()); ++c) {
    m.components.emplace_back(x->size(c));
    std::iota(m.components.back().begin(), m.components.back().end(), 0);
  }
  return m;
}

PresheafMap compose(const PresheafMap& first, const PresheafMap& then) {
  if (first.target->sizes() != then.source->sizes())
    throw ValidationError({"composition of non-composable maps", ""});
  PresheafMap m{first.source, then.target, first.components};
  for (std::size_t c = 0; c < m.components.size(); ++c)
    for (auto& v : m.components[c]) v = then.components[c][v];
  return m;
}

PresheafMap validate_map(PresheafMap m) {
  auto report = m.check();
  if (!report.empty()) throw ValidationError(report.front());
  return m;
}

PresheafPtr terminal(const FinCatPtr& base) {
  std::vector<Index> sizes(base->num_objects(), 1);
  std::vector<std::vector<Index>> actions(base->num_morphisms(), std::vector<Index>{0});
  std::vector<std::vector<std::string>> labels(base->num_objects(), std::vector<std::string>{"*"});
  return make_presheaf(Presheaf(base, sizes, actions, labels));
}

PresheafPtr empty_presheaf(const FinCatPtr& base) {
  std::vector<Index> sizes(base->num_objects(), 0);
  std::vector<std::vector<Index>> actions(base->num_morphisms());
  return make_presheaf(Presheaf(base, sizes, actions));
}

PresheafPtr representable(const FinCatPtr& base, Index c) {
  const FinCat& b = *base;
  const auto pos = hom_positions(b);
  const auto n = static_cast<Index>(b.num_objects());
  std::vector<Index> sizes(n);
  std::vector<std::vector<std::string>> labels(n);
  for (Index d = 0; d < n; ++d) {
    sizes[d] = static_cast<Index>(b.hom(d, c).size());
    for (Index h : b.hom(d, c)) labels[d].push_back(b.morphism_name(h));
  }
  std::vector<std::vector<Index>> actions(b.num_morphisms());
  for (Index f = 0; f < static_cast<Index>(b.num_morphisms()); ++f)
    for (Index h : b.hom(b.tgt(f), c)) actions[f].push_back(pos[b.compose(f, h)]);
  return make_presheaf(Presheaf(base, sizes, actions, labels));
}

PresheafMap to_terminal(const PresheafPtr& x) {
  PresheafMap m{x, terminal(x->base_ptr()), {}};
  for (Index c = 0; c < static_cast<Index>(x->base().num_objects()); ++c)
    m.components.emplace_back(x->size(c), 0);
  return m;
}

Product product(const PresheafPtr& x, const PresheafPtr& y) {
  require_same_base(*x, *y, "product");
  const FinCat& b = x->base();
  const auto n = static_cast<Index>(b.num_objects());
  std::vector<Index> sizes(n);
  for (Index c = 0; c < n; ++c) sizes[c] = x->size(c) * y->size(c);
  std::vector<std::vector<Index>> actions(b.num_morphisms());
  for (Index f = 0; f < static_cast<Index>(b.num_morphisms()); ++f) {
    const Index c = b.src(f), d = b.tgt(f);
    actions[f].resize(sizes[d]);
    for (Index a = 0; a < x->size(d); ++a)
      for (Index e = 0; e < y->size(d); ++e)
        actions[f][a * y->size(d) + e] = x->act(f, a) * y->size(c) + y->act(f, e);
  }
  std::vector<std::vector<std::string>> labels;
  if (x->has_labels() || y->has_labels()) {
    labels.resize(n);
    for (Index c = 0; c < n; ++c)
      for (Index a = 0; a < x->size(c); ++a)
        for (Index e = 0; e < y->size(c); ++e)
          labels[c].push_back("(" + x->label(c, a) + "," + y->label(c, e) + ")");
  }
  auto obj = make_presheaf(Presheaf(x->base_ptr(), sizes, std::move(actions), std::move(labels)));
  Product p{obj, {obj, x, {}}, {obj, y, {}}};
  for (Index c = 0; c < n; ++c) {
    p.p1.components.emplace_back(sizes[c]);
    p.p2.components.emplace_back(sizes[c]);
    for (Index i = 0; i < sizes[c]; ++i) {
      p.p1.components[c][i] = i / y->size(c);
      p.p2.components[c][i] = i % y->size(c);
    }
  }
  return p;
}

PresheafMap pairing(const Product& p, const PresheafMap& f, const PresheafMap& g) {
  PresheafMap m{f.source, p.obj, f.components};
  for (std::size_t c = 0; c < m.components.size(); ++c)
    for (std::size_t i = 0; i < m.components[c].size(); ++i)
      m.components[c][i] = p.pair(static_cast<Index>(c), f.components[c][i], g.components[c][i]);
  return m;
}

PresheafMap product_map(const Product& from, const Product& to, const PresheafMap& f,
                        const PresheafMap& g) {
  return pairing(to, compose(from.p1, f), compose(from.p2, g));
}

Index Pullback::find(Index c, Index a, Index b) const {
  const Index ny = p2.target->size(c);
  if (a < 0 || b < 0 || a >= p1.target->size(c) || b >= ny) return kNone;
  return lookup_[c][static_cast<std::size_t>(a) * ny + b];
}

Pullback pullback(const PresheafMap& f, const PresheafMap& g) {
  require_same_base(*f.target, *g.target, "pullback");
  if (f.target->sizes() != g.target->sizes()) throw ValidationError({"pullback of maps with different targets", ""});
  const PresheafPtr& x = f.source;
  const PresheafPtr& y = g.source;
  const FinCat& b = x->base();
  const auto n = static_cast<Index>(b.num_objects());
  Pullback pb;
  pb.pairs.resize(n);
  pb.lookup_.resize(n);
  std::vector<Index> sizes(n);
  for (Index c = 0; c < n; ++c) {
    pb.lookup_[c].assign(static_cast<std::size_t>(x->size(c)) * y->size(c), kNone);
    // Bucket Y by image to avoid the quadratic scan.
    std::vector<std::vector<Index>> by_image(f.target->size(c));
    for (Index e = 0; e < y->size(c); ++e) by_image[g(c, e)].push_back(e);
    for (Index a = 0; a < x->size(c); ++a)
      for (Index e : by_image[f(c, a)]) {
        pb.lookup_[c][static_cast<std::size_t>(a) * y->size(c) + e] = static_cast<Index>(pb.pairs[c].size());
        pb.pairs[c].emplace_back(a, e);
      }
    sizes[c] = static_cast<Index>(pb.pairs[c].size());
  }
  std::vector<std::vector<Index>> actions(b.num_morphisms());
  for (Index m = 0; m < static_cast<Index>(b.num_morphisms()); ++m) {
    const Index c = b.src(m), d = b.tgt(m);
    actions[m].reserve(sizes[d]);
    for (auto [a, e] : pb.pairs[d])
      actions[m].push_back(pb.lookup_[c][static_cast<std::size_t>(x->act(m, a)) * y->size(c) + y->act(m, e)]);
  }
  std::vector<std::vector<std::string>> labels;
  if (x->has_labels() || y->has_labels()) {
    labels.resize(n);
    for (Index c = 0; c < n; ++c)
      for (auto [a, e] : pb.pairs[c]) labels[c].push_back("(" + x->label(c, a) + "," + y->label(c, e) + ")");
  }
  pb.obj = make_presheaf(Presheaf(x->base_ptr(), sizes, std::move(actions), std::move(labels)));
  pb.p1 = {pb.obj, x, {}};
  pb.p2 = {pb.obj, y, {}};
  for (Index c = 0; c < n; ++c) {
    pb.p1.components.emplace_back();
    pb.p2.components.emplace_back();
    for (auto [a, e] : pb.pairs[c]) {
      pb.p1.components[c].push_back(a);
      pb.p2.components[c].push_back(e);
    }
  }
  return pb;
}

PresheafMap pullback_pairing(const Pullback& pb, const PresheafMap& a, const PresheafMap& b) {
  PresheafMap m{a.source, pb.obj, a.components};
  for (std::size_t c = 0; c < m.components.size(); ++c)
    for (std::size_t i = 0; i < m.components[c].size(); ++i) {
      Index v = pb.find(static_cast<Index>(c), a.components[c][i], b.components[c][i]);
      if (v == kNone) throw ValidationError({"cone does not commute", "pullback pairing"});
      m.components[c][i] = v;
    }
  return m;
}

Equalizer equalizer(const PresheafMap& f, const PresheafMap& g) {
  std::vector<std::vector<bool>> members(f.components.size());
  for (std::size_t c = 0; c < members.size(); ++c) {
    members[c].resize(f.components[c].size());
    for (std::size_t i = 0; i < members[c].size(); ++i)
      members[c][i] = f.components[c][i] == g.components[c][i];
  }
  auto s = sub_presheaf(f.source, members);
  return {s.obj, s.incl};
}

Coproduct coproduct(const PresheafPtr& x, const PresheafPtr& y) {
  require_same_base(*x, *y, "coproduct");
  const FinCat& b = x->base();
  const auto n = static_cast<Index>(b.num_objects());
  std::vector<Index> sizes(n);
  for (Index c = 0; c < n; ++c) sizes[c] = x->size(c) + y->size(c);
  std::vector<std::vector<Index>> actions(b.num_morphisms());
  for (Index f = 0; f < static_cast<Index>(b.num_morphisms()); ++f) {
    const Index c = b.src(f), d = b.tgt(f);
    for (Index a = 0; a < x->size(d); ++a) actions[f].push_back(x->act(f, a));
    for (Index e = 0; e < y->size(d); ++e) actions[f].push_back(x->size(c) + y->act(f, e));
  }
  std::vector<std::vector<std::string>> labels;
  if (x->has_labels() || y->has_labels()) {
    labels.resize(n);
    for (Index c = 0; c < n; ++c) {
      for (Index a = 0; a < x->size(c); ++a) labels[c].push_back("0." + x->label(c, a));
      for (Index e = 0; e < y->size(c); ++e) labels[c].push_back("1." + y->label(c, e));
    }
  }
  auto obj = make_presheaf(Presheaf(x->base_ptr(), sizes, std::move(actions), std::move(labels)));
  Coproduct cp{obj, {x, obj, {}}, {y, obj, {}}};
  for (Index c = 0; c < n; ++c) {
    cp.i1.components.emplace_back(x->size(c));
    std::iota(cp.i1.components.back().begin(), cp.i1.components.back().end(), 0);
    cp.i2.components.emplace_back(y->size(c));
    std::iota(cp.i2.components.back().begin(), cp.i2.components.back().end(), x->size(c));
  }
  return cp;
}

std::size_t for_each_hom(const Presheaf& x, const Presheaf& y,
                         const std::function<bool(const std::vector<std::vector<Index>>&)>& visit,
                         const HomSearchOptions& opts) {
  require_same_base(x, y, "hom");
  HomSearch s(x, y, opts);
  return s.run(visit);
}

std::vector<PresheafMap> homs(const PresheafPtr& x, const PresheafPtr& y, const HomSearchOptions& opts) {
  std::vector<PresheafMap> out;
  for_each_hom(*x, *y, [&](const std::vector<std::vector<Index>>& c) {
    out.push_back({x, y, c});
    return true;
  }, opts);
  return out;
}

std::size_t count_homs(const Presheaf& x, const Presheaf& y, std::size_t cap, const HomSearchOptions& opts) {
  std::size_t n = 0;
  for_each_hom(x, y, [&](const std::vector<std::vector<Index>>&) {
    ++n;
    return cap == 0 || n < cap;
  }, opts);
  return n;
}

std::vector<std::vector<Index>> iso_invariant(const Presheaf& x) {
  const FinCat& b = x.base();
  const auto n = static_cast<Index>(b.num_objects());
  std::vector<std::vector<Index>> out{x.sizes()};
  for (Index c = 0; c < n; ++c) {
    const auto& endo = b.hom(c, c);
    std::vector<Index> masks;
    for (Index v = 0; v < x.size(c); ++v) {
      // bits past 31 are dropped, which only weakens the invariant
      Index mask = 0;
      for (std::size_t i = 0; i < endo.size(); ++i)
        if (x.act(endo[i], v) == v) mask += i < 31 ? Index{1} << i : 0;
      masks.push_back(mask);
    }
    std::sort(masks.begin(), masks.end());
    out.push_back(std::move(masks));
  }
  for (Index f = 0; f < static_cast<Index>(b.num_morphisms()); ++f) {
    std::vector<Index> pre(x.size(b.src(f)), 0);
    for (Index v : x.action(f)) ++pre[v];
    std::sort(pre.begin(), pre.end());
    out.push_back(std::move(pre));
  }
  return out;
}

std::optional<PresheafMap> find_iso(const PresheafPtr& x, const PresheafPtr& y) {
  if (x->sizes() != y->sizes()) return std::nullopt;
  require_same_base(*x, *y, "isomorphism");
  if (iso_invariant(*x) != iso_invariant(*y)) return std::nullopt;
  HomSearchOptions opts;
  opts.injective = true;
  std::optional<PresheafMap> out;
  for_each_hom(*x, *y, [&](const std::vector<std::vector<Index>>& c) {
    out = PresheafMap{x, y, c};
    return false;
  }, opts);
  return out;
}

std::optional<PresheafMap> find_iso_over(const PresheafMap& f, const PresheafMap& g) {
  if (f.source->sizes() != g.source->sizes()) return std::nullopt;
  HomSearchOptions opts;
  opts.injective = true;
  opts.allow = [&](Index c, Index a, Index b) { return f(c, a) == g(c, b); };
  std::optional<PresheafMap> out;
  for_each_hom(*f.source, *g.source, [&](const std::vector<std::vector<Index>>& c) {
    out = PresheafMap{f.source, g.source, c};
    return false;
  }, opts);
  return out;
}

std::vector<PresheafMap> automorphisms_over(const PresheafMap& f, std::size_t cap) {
  HomSearchOptions opts;
  opts.injective = true;
  opts.allow = [&](Index c, Index a, Index b) { return f(c, a) == f(c, b); };
  std::vector<PresheafMap> out;
  for_each_hom(*f.source, *f.source, [&](const std::vector<std::vector<Index>>& c) {
    out.push_back({f.source, f.source, c});
    return cap == 0 || out.size() < cap;
  }, opts);
  return out;
}

bool is_mono(const PresheafMap& f) {
  for (std::size_t c = 0; c < f.components.size(); ++c) {
    std::vector<char> seen(f.target->size(static_cast<Index>(c)), 0);
    for (Index v : f.components[c]) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
  }
  return true;
}

bool is_iso(const PresheafMap& f) { return f.source->sizes() == f.target->sizes() && is_mono(f); }

std::optional<PresheafMap> inverse(const PresheafMap& f) {
  if (!is_iso(f)) return std::nullopt;
  PresheafMap g{f.target, f.source, {}};
  for (std::size_t c = 0; c < f.components.size(); ++c) {
    g.components.emplace_back(f.components[c].size());
    for (std::size_t i = 0; i < f.components[c].size(); ++i)
      g.components[c][f.components[c][i]] = static_cast<Index>(i);
  }
  if (!g.check().empty()) return std::nullopt;
  if (!(compose(f, g) == identity_map(f.source)) || !(compose(g, f) == identity_map(f.target)))
    return std::nullopt;
  return g;
}

bool is_mono_diagonal(const PresheafMap& f) {
  Pullback kp = pullback(f, f);
  PresheafMap id = identity_map(f.source);
  return is_iso(pullback_pairing(kp, id, id));
}

bool is_mono_yoneda(const PresheafMap& f) {
  const FinCatPtr& base = f.source->base_ptr();
  for (Index c = 0; c < static_cast<Index>(base->num_objects()); ++c) {
    auto yc = representable(base, c);
    std::set<std::vector<std::vector<Index>>> images;
    std::size_t count = 0;
    for_each_hom(*yc, *f.source, [&](const std::vector<std::vector<Index>>& a) {
      ++count;
      images.insert(compose(PresheafMap{yc, f.source, a}, f).components);
      return true;
    });
    if (images.size() != count) return false;
  }
  return true;
}

Index Exponential::apply(Index c, Index phi, Index h, Index yv) const {
  const FinCat& b = y->base();
  const Index d = b.src(h);
  const auto& hs = b.hom(d, c);
  const auto pos = static_cast<Index>(std::find(hs.begin(), hs.end(), h) - hs.begin());
  return tables[c][phi][d][static_cast<std::size_t>(pos) * y->size(d) + yv];
}

Index Exponential::find(Index c, const std::vector<Index>& flat) const {
  auto it = index[c].find(flat);
  return it == index[c].end() ? kNone : it->second;
}

Index Exponential::find_by(Index c, const std::function<Index(Index, Index)>& value) const {
  const FinCat& b = y->base();
  std::vector<Index> flat;
  for (Index d = 0; d < static_cast<Index>(b.num_objects()); ++d)
    for (Index h : b.hom(d, c))
      for (Index e = 0; e < y->size(d); ++e) flat.push_back(value(h, e));
  return find(c, flat);
}

Exponential exponential(const PresheafPtr& y, const PresheafPtr& z) {
  require_same_base(*y, *z, "exponential");
  const FinCatPtr& basep = y->base_ptr();
  const FinCat& b = *basep;
  const auto n = static_cast<Index>(b.num_objects());
  const auto pos = hom_positions(b);
  Exponential e;
  e.y = y;
  e.z = z;
  e.tables.resize(n);
  e.index.resize(n);
  std::vector<Index> sizes(n);
  for (Index c = 0; c < n; ++c) {
    auto dom = product(representable(basep, c), y);
    for_each_hom(*dom.obj, *z, [&](const std::vector<std::vector<Index>>& comp) {
      std::vector<Index> flat;
      for (const auto& v : comp) flat.insert(flat.end(), v.begin(), v.end());
      e.index[c].emplace(std::move(flat), static_cast<Index>(e.tables[c].size()));
      e.tables[c].push_back(comp);
      return true;
    });
    sizes[c] = static_cast<Index>(e.tables[c].size());
  }
  std::vector<std::vector<Index>> actions(b.num_morphisms());
  for (Index f = 0; f < static_cast<Index>(b.num_morphisms()); ++f) {
    const Index c2 = b.src(f), c = b.tgt(f);
    for (Index phi = 0; phi < sizes[c]; ++phi) {
      const auto& t = e.tables[c][phi];
      std::vector<Index> flat;
      for (Index d = 0; d < n; ++d)
        for (Index h : b.hom(d, c2)) {
          const Index fh = b.compose(h, f);
          const std::size_t base_pos = static_cast<std::size_t>(pos[fh]) * y->size(d);
          for (Index v = 0; v < y->size(d); ++v) flat.push_back(t[d][base_pos + v]);
        }
      Index r = e.find(c2, flat);
      if (r == kNone) throw std::logic_error("exponential action left the carrier");
      actions[f].push_back(r);
    }
  }
  e.obj = make_presheaf(Presheaf(basep, sizes, std::move(actions)));
  e.with_y = product(e.obj, y);
  e.ev = {e.with_y.obj, z, {}};
  for (Index c = 0; c < n; ++c) {
    e.ev.components.emplace_back();
    const Index idpos = pos[b.identity(c)];
    for (Index phi = 0; phi < sizes[c]; ++phi)
      for (Index v = 0; v < y->size(c); ++v)
        e.ev.components[c].push_back(e.tables[c][phi][c][static_cast<std::size_t>(idpos) * y->size(c) + v]);
  }
  return e;
}

PresheafMap transpose(const Exponential& e, const PresheafPtr& a, const PresheafMap& h) {
  const FinCat& b = a->base();
  PresheafMap out{a, e.obj, {}};
  for (Index c = 0; c < static_cast<Index>(b.num_objects()); ++c) {
    out.components.emplace_back();
    for (Index x = 0; x < a->size(c); ++x) {
      Index phi = e.find_by(c, [&](Index k, Index v) {
        const Index d = b.src(k);
        return h(d, a->act(k, x) * e.y->size(d) + v);
      });
      if (phi == kNone) throw ValidationError({"transpose of a non-natural map", ""});
      out.components[c].push_back(phi);
    }
  }
  return out;
}

PresheafMap uncurry(const Exponential& e, const Product& ay, const PresheafMap& g) {
  const FinCat& b = ay.obj->base();
  PresheafMap out{ay.obj, e.z, {}};
  for (Index c = 0; c < static_cast<Index>(b.num_objects()); ++c) {
    out.components.emplace_back();
    for (Index i = 0; i < ay.obj->size(c); ++i)
      out.components[c].push_back(e.apply(c, g(c, ay.p1(c, i)), b.identity(c), ay.p2(c, i)));
  }
  return out;
}

Index Elements::morphism_of(Index f, Index xv) const {
  if (xv < 0 || xv >= x->size(x->base().tgt(f))) return kNone;
  return mor_offset_[f] + xv;
}

Elements elements(const PresheafPtr& x) {
  const FinCat& b = x->base();
  const auto n = static_cast<Index>(b.num_objects());
  Elements el;
  el.x = x;
  el.object_of.resize(n);
  std::vector<std::string> onames;
  for (Index c = 0; c < n; ++c)
    for (Index v = 0; v < x->size(c); ++v) {
      el.object_of[c].push_back(static_cast<Index>(el.objects.size()));
      el.objects.emplace_back(c, v);
      onames.push_back(b.object_name(c) + ":" + x->label(c, v));
    }
  std::vector<std::string> mnames;
  std::vector<Index> src, tgt;
  for (Index f = 0; f < static_cast<Index>(b.num_morphisms()); ++f) {
    el.mor_offset_.push_back(static_cast<Index>(el.morphisms.size()));
    const Index c = b.tgt(f), d = b.src(f);
    for (Index v = 0; v < x->size(c); ++v) {
      el.morphisms.emplace_back(f, v);
      mnames.push_back(b.morphism_name(f) + "@" + x->label(c, v));
      src.push_back(el.object_of[d][x->act(f, v)]);
      tgt.push_back(el.object_of[c][v]);
    }
  }
  const std::size_t m = el.morphisms.size();
  std::vector<Index> ids(el.objects.size());
  for (std::size_t o = 0; o < el.objects.size(); ++o) {
    auto [c, v] = el.objects[o];
    ids[o] = el.mor_offset_[b.identity(c)] + v;
  }
  std::vector<std::vector<Index>> out_of(el.objects.size());
  for (std::size_t k = 0; k < m; ++k) out_of[src[k]].push_back(static_cast<Index>(k));
  std::vector<Index> comp(m * m, kNone);
  for (std::size_t a = 0; a < m; ++a) {
    const Index g = el.morphisms[a].first;
    for (Index bm : out_of[tgt[a]]) {
      auto [f, v] = el.morphisms[bm];
      comp[a * m + bm] = el.mor_offset_[b.compose(g, f)] + v;
    }
  }
  el.cat = std::make_shared<const FinCat>(std::move(onames), std::move(mnames), std::move(src),
                                          std::move(tgt), std::move(ids), std::move(comp));
  return el;
}

Slice to_slice(const Elements& el, const PresheafMap& m) {
  const Presheaf& y = *m.source;
  const FinCat& b = y.base();
  const FinCat& cat = *el.cat;
  Slice s;
  s.members.resize(el.objects.size());
  s.position.resize(b.num_objects());
  for (Index c = 0; c < static_cast<Index>(b.num_objects()); ++c) {
    s.position[c].resize(y.size(c));
    for (Index v = 0; v < y.size(c); ++v) {
      auto& mem = s.members[el.object_of[c][m(c, v)]];
      s.position[c][v] = static_cast<Index>(mem.size());
      mem.push_back(v);
    }
  }
  std::vector<Index> sizes(el.objects.size());
  for (std::size_t o = 0; o < sizes.size(); ++o) sizes[o] = static_cast<Index>(s.members[o].size());
  std::vector<std::vector<Index>> actions(cat.num_morphisms());
  for (Index k = 0; k < static_cast<Index>(cat.num_morphisms()); ++k) {
    auto [f, xv] = el.morphisms[k];
    const Index d = b.src(f);
    for (Index v : s.members[cat.tgt(k)]) actions[k].push_back(s.position[d][y.act(f, v)]);
  }
  s.fibers = make_presheaf(Presheaf(el.cat, sizes, std::move(actions)));
  return s;
}

PresheafMap from_slice(const Elements& el, const PresheafPtr& p,
                       std::vector<std::vector<std::pair<Index, Index>>>* origin) {
  const FinCat& b = el.x->base();
  const auto n = static_cast<Index>(b.num_objects());
  std::vector<std::vector<Index>> offset(n);
  std::vector<Index> sizes(n, 0);
  std::vector<std::vector<std::pair<Index, Index>>> org(n);
  for (Index c = 0; c < n; ++c)
    for (Index v = 0; v < el.x->size(c); ++v) {
      const Index o = el.object_of[c][v];
      offset[c].push_back(sizes[c]);
      for (Index i = 0; i < p->size(o); ++i) org[c].emplace_back(o, i);
      sizes[c] += p->size(o);
    }
  std::vector<std::vector<Index>> actions(b.num_morphisms());
  for (Index f = 0; f < static_cast<Index>(b.num_morphisms()); ++f) {
    const Index d = b.src(f), c = b.tgt(f);
    for (auto [o, i] : org[c]) {
      const Index xv = el.objects[o].second;
      const Index k = el.morphism_of(f, xv);
      actions[f].push_back(offset[d][el.x->act(f, xv)] + p->act(k, i));
    }
  }
  auto total = make_presheaf(Presheaf(el.x->base_ptr(), sizes, std::move(actions)));
  PresheafMap m{total, el.x, {}};
  for (Index c = 0; c < n; ++c) {
    m.components.emplace_back();
    for (auto [o, i] : org[c]) m.components[c].push_back(el.objects[o].second);
  }
  if (origin) *origin = std::move(org);
  return m;
}

Index HomOverBase::apply(Index c, Index h, Index k, Index yv) const {
  auto [o, phi] = origin[c][h];
  const Index xv = el.objects[o].second;
  const Index d = f.source->base().src(k);
  const Index km = el.morphism_of(k, xv);
  const Index j = exp.apply(o, phi, km, sy.position[d][yv]);
  const Index od = el.object_of[d][f.target->act(k, xv)];
  return sz.members[od][j];
}

HomOverBase hom_over_base(const PresheafMap& f, const PresheafMap& g) {
  if (f.target->sizes() != g.target->sizes()) throw ValidationError({"hom over different bases", ""});
  HomOverBase h{f, g, elements(f.target), {}, {}, {}, {}, {}, {}, {}, {}};
  h.sy = to_slice(h.el, f);
  h.sz = to_slice(h.el, g);
  h.exp = exponential(h.sy.fibers, h.sz.fibers);
  h.proj = from_slice(h.el, h.exp.obj, &h.origin);
  h.element_of.resize(h.el.objects.size());
  for (std::size_t o = 0; o < h.el.objects.size(); ++o) h.element_of[o].assign(h.exp.obj->size(o), kNone);
  for (Index c = 0; c < static_cast<Index>(h.origin.size()); ++c)
    for (Index e = 0; e < static_cast<Index>(h.origin[c].size()); ++e)
      h.element_of[h.origin[c][e].first][h.origin[c][e].second] = e;
  h.with_y = pullback(h.proj, f);
  h.ev = {h.with_y.obj, g.source, {}};
  const FinCat& b = f.source->base();
  for (Index c = 0; c < static_cast<Index>(b.num_objects()); ++c) {
    h.ev.components.emplace_back();
    for (auto [e, yv] : h.with_y.pairs[c]) h.ev.components[c].push_back(h.apply(c, e, b.identity(c), yv));
  }
  return h;
}

PresheafMap transpose_over_base(const HomOverBase& h, const PresheafMap& w, const Pullback& pb,
                                const PresheafMap& k) {
  const FinCat& b = w.source->base();
  const FinCat& cat = *h.el.cat;
  PresheafMap out{w.source, h.proj.source, {}};
  for (Index c = 0; c < static_cast<Index>(b.num_objects()); ++c) {
    out.components.emplace_back();
    for (Index a = 0; a < w.source->size(c); ++a) {
      const Index o = h.el.object_of[c][w(c, a)];
      Index phi = h.exp.find_by(o, [&](Index km, Index i) {
        const Index e = cat.src(km);
        const Index d = h.el.objects[e].first;
        const Index base_mor = h.el.morphisms[km].first;
        const Index yv = h.sy.members[e][i];
        const Index z = k(d, pb.find(d, w.source->act(base_mor, a), yv));
        return h.sz.position[d][z];
      });
      if (phi == kNone) throw ValidationError({"transpose of a non-natural map over the base", ""});
      out.components[c].push_back(h.element_of[o][phi]);
    }
  }
  return out;
}

GSetHomOverBase gset_hom_over_base(const PresheafMap& f, const PresheafMap& g) {
  const FinCatPtr& basep = f.source->base_ptr();
  const FinCat& b = *basep;
  if (b.num_objects() != 1) throw ValidationError({"one-object base required", ""});
  const Presheaf& x = *f.target;
  const Presheaf& y = *f.source;
  const Presheaf& z = *g.source;
  const auto nm = static_cast<Index>(b.num_morphisms());
  std::vector<Index> inv(nm);
  for (Index m = 0; m < nm; ++m)
    for (Index k = 0; k < nm; ++k)
      if (b.is_identity(b.compose(m, k))) inv[m] = k;
  std::vector<std::vector<Index>> fy(x.size(0)), fz(x.size(0));
  for (Index v = 0; v < y.size(0); ++v) fy[f(0, v)].push_back(v);
  for (Index v = 0; v < z.size(0); ++v) fz[g(0, v)].push_back(v);
  GSetHomOverBase out;
  std::map<std::pair<Index, std::vector<Index>>, Index> index;
  for (Index xv = 0; xv < x.size(0); ++xv) {
    const auto& dom = fy[xv];
    const auto& cod = fz[xv];
    if (cod.empty() && !dom.empty()) continue;
    std::vector<Index> digits(dom.size(), 0);
    while (true) {
      std::vector<Index> fn(dom.size());
      for (std::size_t i = 0; i < dom.size(); ++i) fn[i] = cod[digits[i]];
      index.emplace(std::make_pair(xv, fn), static_cast<Index>(out.elements.size()));
      out.elements.emplace_back(xv, fn);
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == static_cast<Index>(cod.size())) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }
  std::vector<std::vector<Index>> actions(nm);
  for (Index m = 0; m < nm; ++m)
    for (const auto& [xv, fn] : out.elements) {
      const Index x2 = x.act(m, xv);
      std::vector<Index> fn2;
      for (Index y2 : fy[x2]) {
        const Index y1 = y.act(inv[m], y2);
        const auto it = std::lower_bound(fy[xv].begin(), fy[xv].end(), y1);
        fn2.push_back(z.act(m, fn[it - fy[xv].begin()]));
      }
      actions[m].push_back(index.at({x2, fn2}));
    }
  auto obj = make_presheaf(Presheaf(basep, {static_cast<Index>(out.elements.size())}, std::move(actions)));
  out.proj = {obj, f.target, {{}}};
  for (const auto& el : out.elements) out.proj.components[0].push_back(el.first);
  return out;
}

Index SubobjectClassifier::find(Index c, const std::vector<Index>& sieve) const {
  const auto& s = sieves[c];
  auto it = std::lower_bound(s.begin(), s.end(), sieve);
  if (it == s.end() || *it != sieve) return kNone;
  return static_cast<Index>(it - s.begin());
}

SubobjectClassifier subobject_classifier(const FinCatPtr& base) {
  const FinCat& b = *base;
  const auto n = static_cast<Index>(b.num_objects());
  SubobjectClassifier om;
  om.base = base;
  om.sieves.resize(n);
  for (Index c = 0; c < n; ++c) {
    std::set<std::vector<Index>> found{{}};
    for (Index h : b.into(c)) {
      std::set<Index> principal;
      for (Index e = 0; e < n; ++e)
        for (Index k : b.hom(e, b.src(h))) principal.insert(b.compose(k, h));
      std::vector<std::vector<Index>> grown;
      for (const auto& s : found) {
        std::set<Index> u(s.begin(), s.end());
        u.insert(principal.begin(), principal.end());
        grown.emplace_back(u.begin(), u.end());
      }
      found.insert(grown.begin(), grown.end());
    }
    om.sieves[c].assign(found.begin(), found.end());
  }
  std::vector<Index> sizes(n);
  std::vector<std::vector<std::string>> labels(n);
  for (Index c = 0; c < n; ++c) {
    sizes[c] = static_cast<Index>(om.sieves[c].size());
    for (const auto& s : om.sieves[c]) {
      std::string l = "{";
      for (std::size_t i = 0; i < s.size(); ++i) l += (i ? "," : "") + b.morphism_name(s[i]);
      labels[c].push_back(l + "}");
    }
  }
  std::vector<std::vector<Index>> actions(b.num_morphisms());
  for (Index f = 0; f < static_cast<Index>(b.num_morphisms()); ++f) {
    const Index d = b.src(f), c = b.tgt(f);
    for (const auto& s : om.sieves[c]) {
      std::vector<char> in(b.num_morphisms(), 0);
      for (Index h : s) in[h] = 1;
      std::vector<Index> pulled;
      for (Index h : b.into(d))
        if (in[b.compose(h, f)]) pulled.push_back(h);
      std::sort(pulled.begin(), pulled.end());
      actions[f].push_back(om.find(d, pulled));
    }
  }
  om.omega = make_presheaf(Presheaf(base, sizes, std::move(actions), std::move(labels)));
  auto one = terminal(base);
  om.true_map = {one, om.omega, {}};
  for (Index c = 0; c < n; ++c) {
    std::vector<Index> all(b.into(c).begin(), b.into(c).end());
    std::sort(all.begin(), all.end());
    om.true_map.components.push_back({om.find(c, all)});
  }
  return om;
}

Subobject image(const PresheafMap& m) {
  std::vector<std::vector<bool>> members(m.components.size());
  for (std::size_t c = 0; c < members.size(); ++c) {
    members[c].assign(m.target->size(static_cast<Index>(c)), false);
    for (Index v : m.components[c]) members[c][v] = true;
  }
  auto s = sub_presheaf(m.target, members);
  return {members, s.incl};
}

PresheafMap classify(const SubobjectClassifier& om, const PresheafMap& m) {
  if (!is_mono(m)) throw ValidationError({"not mono", "classify"});
  const PresheafPtr& x = m.target;
  const FinCat& b = x->base();
  auto im = image(m).members;
  PresheafMap chi{x, om.omega, {}};
  for (Index c = 0; c < static_cast<Index>(b.num_objects()); ++c) {
    chi.components.emplace_back();
    for (Index v = 0; v < x->size(c); ++v) {
      std::vector<Index> s;
      for (Index h : b.into(c))
        if (im[b.src(h)][x->act(h, v)]) s.push_back(h);
      std::sort(s.begin(), s.end());
      chi.components[c].push_back(om.find(c, s));
    }
  }
  return chi;
}

PresheafMap pullback_true(const SubobjectClassifier& om, const PresheafMap& chi) {
  std::vector<std::vector<bool>> members(chi.components.size());
  for (std::size_t c = 0; c < members.size(); ++c)
    for (Index v : chi.components[c]) members[c].push_back(v == om.true_map.components[c][0]);
  return sub_presheaf(chi.source, members).incl;
}

std::vector<Subobject> subobjects(const PresheafPtr& x) {
  const FinCat& b = x->base();
  std::vector<std::pair<Index, Index>> order;
  for (Index c = 0; c < static_cast<Index>(b.num_objects()); ++c)
    for (Index v = 0; v < x->size(c); ++v) order.emplace_back(c, v);
  std::vector<std::vector<char>> state(b.num_objects());  // 0 open, 1 in, 2 out
  for (Index c = 0; c < static_cast<Index>(b.num_objects()); ++c) state[c].assign(x->size(c), 0);
  std::vector<std::pair<Index, Index>> trail;
  std::vector<Subobject> out;

  auto include = [&](Index c, Index v) {
    std::vector<std::pair<Index, Index>> todo{{c, v}};
    while (!todo.empty()) {
      auto [cc, e] = todo.back();
      todo.pop_back();
      if (state[cc][e] == 1) continue;
      if (state[cc][e] == 2) return false;
      state[cc][e] = 1;
      trail.emplace_back(cc, e);
      for (Index f : b.into(cc)) todo.emplace_back(b.src(f), x->act(f, e));
    }
    return true;
  };
  auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      state[trail.back().first][trail.back().second] = 0;
      trail.pop_back();
    }
  };
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    while (k < order.size() && state[order[k].first][order[k].second] != 0) ++k;
    if (k == order.size()) {
      std::vector<std::vector<bool>> members(b.num_objects());
      for (std::size_t c = 0; c < members.size(); ++c)
        for (char s : state[c]) members[c].push_back(s == 1);
      auto sp = sub_presheaf(x, members);
      out.push_back({members, sp.incl});
      return;
    }
    auto [c, v] = order[k];
    std::size_t mark = trail.size();
    state[c][v] = 2;
    trail.emplace_back(c, v);
    rec(k + 1);
    undo(mark);
    if (include(c, v)) rec(k + 1);
    undo(mark);
  };
  rec(0);
  return out;
}

bool is_cartesian(const PresheafMap& q, const PresheafMap& p, const CartSquare& s) {
  if (!(compose(s.v, p) == compose(q, s.u))) return false;
  Pullback pb = pullback(s.u, p);
  if (pb.obj->sizes() != q.source->sizes()) return false;
  return is_iso(pullback_pairing(pb, q, s.v));
}

std::vector<CartSquare> enumerate_cart_squares(const PresheafMap& q, const PresheafMap& p, std::size_t cap) {
  std::vector<CartSquare> out;
  for_each_hom(*q.target, *p.target, [&](const std::vector<std::vector<Index>>& uc) {
    PresheafMap u{q.target, p.target, uc};
    Pullback pb = pullback(u, p);
    if (pb.obj->sizes() != q.source->sizes()) return true;
    HomSearchOptions opts;
    opts.injective = true;
    opts.allow = [&](Index c, Index yv, Index e) { return pb.pairs[c][e].first == q(c, yv); };
    for_each_hom(*q.source, *pb.obj, [&](const std::vector<std::vector<Index>>& phi) {
      out.push_back({u, compose(PresheafMap{q.source, pb.obj, phi}, pb.p2)});
      return cap == 0 || out.size() < cap;
    }, opts);
    return cap == 0 || out.size() < cap;
  });
  return out;
}

std::string describe(const Presheaf& x) {
  std::ostringstream os;
  const FinCat& b = x.base();
  os << "{";
  for (Index c = 0; c < static_cast<Index>(b.num_objects()); ++c)
    os << (c ? ", " : "") << b.object_name(c) << ":" << x.size(c);
  os << "}";
  return os.str();
}

std::string describe(const PresheafMap& m) { return describe(*m.source) + " -> " + describe(*m.target); }

}  // namespace univ
