#include "univalence/internal.hpp"

#include <algorithm>
#include <string>

namespace univ {

namespace {

std::vector<Index> hom_position(const FinCat& b) {
  std::vector<Index> pos(b.num_morphisms(), kNone);
  for (Index x = 0; x < static_cast<Index>(b.num_objects()); ++x)
    for (Index y = 0; y < static_cast<Index>(b.num_objects()); ++y) {
      const auto& h = b.hom(x, y);
      for (std::size_t i = 0; i < h.size(); ++i) pos[h[i]] = static_cast<Index>(i);
    }
  return pos;
}

std::vector<Index> key_of(const FiberMap& m) {
  std::vector<Index> k{m.b, m.b2};
  for (const auto& v : m.img) k.insert(k.end(), v.begin(), v.end());
  return k;
}

Index objects_of(const Presheaf& x) { return static_cast<Index>(x.sizes().size()); }

void expect(std::vector<Violation>& out, bool ok, const std::string& law, const std::string& witness) {
  if (!ok) out.push_back({law, witness});
}

std::string at(Index c, Index x) { return "object " + std::to_string(c) + " element " + std::to_string(x); }

PresheafMap diagonal(const Product& bb) { return pairing(bb, identity_map(bb.p1.target), identity_map(bb.p1.target)); }

// E x B -> B x B as p x id, and B x E -> B x B as id x p.
struct Legs {
  Product eb, be, bb;
  PresheafMap pe, ide;
};

Legs legs(const PresheafMap& p, const Product& bb) {
  Legs l{product(p.source, p.target), product(p.target, p.source), bb, {}, {}};
  l.pe = product_map(l.eb, bb, p, identity_map(p.target));
  l.ide = product_map(l.be, bb, identity_map(p.target), p);
  return l;
}

}  // namespace

Index InternalCat::find(Index c, const FiberMap& m) const {
  auto it = index[c].find(key_of(m));
  return it == index[c].end() ? kNone : it->second;
}

Index InternalCat::compose(Index c, Index m1, Index m2) const {
  const FiberMap& f = fiber_maps[c][m1];
  const FiberMap& g = fiber_maps[c][m2];
  if (f.b2 != g.b) throw ValidationError({"composing non-composable fiber maps", at(c, m1)});
  const Pullback& mid = fibers[c][f.b2];
  FiberMap r{f.b, g.b2, {}};
  for (std::size_t d = 0; d < f.img.size(); ++d) {
    r.img.emplace_back();
    const auto& src = fibers[c][f.b].pairs[d];
    for (std::size_t i = 0; i < src.size(); ++i) {
      const Index j = mid.find(static_cast<Index>(d), src[i].first, f.img[d][i]);
      r.img[d].push_back(g.img[d][j]);
    }
  }
  return find(c, r);
}

InternalCat build_internal_cat(const PresheafMap& p) {
  const FinCatPtr& basep = p.source->base_ptr();
  const FinCat& base = *basep;
  const Presheaf& B = *p.target;
  const Index n = static_cast<Index>(base.num_objects());
  const auto pos = hom_position(base);

  InternalCat ic;
  ic.p = p;
  ic.B = p.target;
  ic.bb = product(p.target, p.target);
  ic.fibers.resize(n);
  ic.fiber_maps.resize(n);
  ic.index.resize(n);

  for (Index c = 0; c < n; ++c) {
    auto yc = representable(basep, c);
    for (Index b = 0; b < B.size(c); ++b) {
      PresheafMap yb{yc, p.target, {}};
      for (Index d = 0; d < n; ++d) {
        yb.components.emplace_back();
        for (Index h : base.hom(d, c)) yb.components[d].push_back(B.act(h, b));
      }
      ic.fibers[c].push_back(pullback(yb, p));
    }
    for (Index b = 0; b < B.size(c); ++b)
      for (Index b2 = 0; b2 < B.size(c); ++b2) {
        const Pullback& from = ic.fibers[c][b];
        const Pullback& to = ic.fibers[c][b2];
        HomSearchOptions opts;
        opts.allow = [&](Index d, Index i, Index j) { return from.pairs[d][i].first == to.pairs[d][j].first; };
        for_each_hom(*from.obj, *to.obj, [&](const std::vector<std::vector<Index>>& phi) {
          FiberMap m{b, b2, {}};
          for (Index d = 0; d < n; ++d) {
            m.img.emplace_back();
            for (Index j : phi[d]) m.img[d].push_back(to.pairs[d][j].second);
          }
          ic.index[c].emplace(key_of(m), static_cast<Index>(ic.fiber_maps[c].size()));
          ic.fiber_maps[c].push_back(std::move(m));
          return true;
        }, opts);
      }
  }

  std::vector<Index> sizes(n);
  for (Index c = 0; c < n; ++c) sizes[c] = static_cast<Index>(ic.fiber_maps[c].size());
  std::vector<std::vector<Index>> actions(base.num_morphisms());
  for (Index f = 0; f < static_cast<Index>(base.num_morphisms()); ++f) {
    const Index c2 = base.src(f), c = base.tgt(f);
    for (const FiberMap& m : ic.fiber_maps[c]) {
      FiberMap r{B.act(f, m.b), B.act(f, m.b2), {}};
      const Pullback& from2 = ic.fibers[c2][r.b];
      const Pullback& from = ic.fibers[c][m.b];
      for (Index d = 0; d < n; ++d) {
        r.img.emplace_back();
        for (auto [hp, e] : from2.pairs[d]) {
          const Index h = base.compose(base.hom(d, c2)[hp], f);
          r.img[d].push_back(m.img[d][from.find(d, pos[h], e)]);
        }
      }
      const Index j = ic.find(c2, r);
      if (j == kNone) throw ValidationError({"restricted fiber map missing", base.morphism_name(f)});
      actions[f].push_back(j);
    }
  }
  ic.M = make_presheaf(Presheaf(basep, sizes, std::move(actions)));

  ic.s = {ic.M, ic.B, {}};
  ic.t = {ic.M, ic.B, {}};
  for (Index c = 0; c < n; ++c) {
    ic.s.components.emplace_back();
    ic.t.components.emplace_back();
    for (const FiberMap& m : ic.fiber_maps[c]) {
      ic.s.components[c].push_back(m.b);
      ic.t.components[c].push_back(m.b2);
    }
  }
  ic.st = pairing(ic.bb, ic.s, ic.t);

  ic.id_map = {ic.B, ic.M, {}};
  for (Index c = 0; c < n; ++c) {
    ic.id_map.components.emplace_back();
    for (Index b = 0; b < B.size(c); ++b) {
      FiberMap m{b, b, {}};
      for (Index d = 0; d < n; ++d) {
        m.img.emplace_back();
        for (auto [hp, e] : ic.fibers[c][b].pairs[d]) m.img[d].push_back(e);
      }
      ic.id_map.components[c].push_back(ic.find(c, m));
    }
  }

  ic.composable = pullback(ic.t, ic.s);
  ic.comp = {ic.composable.obj, ic.M, {}};
  for (Index c = 0; c < n; ++c) {
    ic.comp.components.emplace_back();
    for (auto [m1, m2] : ic.composable.pairs[c]) ic.comp.components[c].push_back(ic.compose(c, m1, m2));
  }
  return ic;
}

std::vector<Violation> internal_cat_report(const InternalCat& ic) {
  std::vector<Violation> out;
  for (const auto* m : {&ic.st, &ic.id_map, &ic.comp}) {
    auto v = m->check();
    out.insert(out.end(), v.begin(), v.end());
  }
  for (const auto& v : ic.M->check()) out.push_back(v);
  expect(out, univ::compose(ic.id_map, ic.st) == diagonal(ic.bb), "(s,t) after id is the diagonal", "");
  const Index n = objects_of(*ic.M);
  for (Index c = 0; c < n; ++c) {
    const Index size = ic.M->size(c);
    auto comp = [&](Index a, Index b) {
      const Index k = ic.composable.find(c, a, b);
      return k == kNone ? kNone : ic.comp(c, k);
    };
    for (Index m = 0; m < size; ++m) {
      const Index ids = ic.id_map(c, ic.s(c, m)), idt = ic.id_map(c, ic.t(c, m));
      if (comp(ids, m) != m) out.push_back({"left unit", at(c, m)});
      if (comp(m, idt) != m) out.push_back({"right unit", at(c, m)});
    }
    std::vector<std::vector<Index>> from(ic.B->size(c));
    for (Index m = 0; m < size; ++m) from[ic.s(c, m)].push_back(m);
    for (Index k = 0; k < static_cast<Index>(ic.composable.pairs[c].size()); ++k) {
      auto [m1, m2] = ic.composable.pairs[c][k];
      const Index r = ic.comp(c, k);
      if (r == kNone) {
        out.push_back({"composite exists", at(c, m1)});
        continue;
      }
      if (ic.s(c, r) != ic.s(c, m1) || ic.t(c, r) != ic.t(c, m2)) out.push_back({"composite endpoints", at(c, r)});
      for (Index m3 : from[ic.t(c, m2)])
        if (comp(r, m3) != comp(m1, comp(m2, m3)))
          out.push_back({"associativity", at(c, m1) + "," + std::to_string(m2) + "," + std::to_string(m3)});
    }
  }
  return out;
}

EvaluationRoute evaluation_route(const InternalCat& ic) {
  const FinCat& base = ic.M->base();
  const Presheaf& B = *ic.B;
  const Presheaf& E = *ic.p.source;
  const Index n = static_cast<Index>(base.num_objects());
  Legs l = legs(ic.p, ic.bb);
  EvaluationRoute r{hom_over_base(l.pe, l.ide), {}, {}, {}};
  const HomOverBase& H = r.hom;

  // Fiber map of h in H(c): e over b goes to the E-component of ev(h, (e, b')).
  auto fiber_map = [&](Index c, Index h) {
    const Index x = H.proj(c, h);
    FiberMap m{x / B.size(c), x % B.size(c), {}};
    for (Index d = 0; d < n; ++d) {
      m.img.emplace_back();
      for (auto [hp, e] : ic.fibers[c][m.b].pairs[d]) {
        const Index k = base.hom(d, c)[hp];
        const Index z = H.apply(c, h, k, l.eb.pair(d, e, B.act(k, m.b2)));
        m.img[d].push_back(z % E.size(d));
      }
    }
    return m;
  };

  r.to_m = {H.proj.source, ic.M, {}};
  std::vector<std::vector<Index>> from_m(n);
  for (Index c = 0; c < n; ++c) {
    r.to_m.components.emplace_back();
    from_m[c].assign(ic.M->size(c), kNone);
    for (Index h = 0; h < H.proj.source->size(c); ++h) {
      const Index m = ic.find(c, fiber_map(c, h));
      if (m == kNone) throw ValidationError({"evaluation route produced an unknown fiber map", at(c, h)});
      r.to_m.components[c].push_back(m);
      from_m[c][m] = h;
    }
  }

  // m2 after m1 as ev(m2, ev(m1, -)), re-associating B x E as E x B in between.
  r.comp = {ic.composable.obj, ic.M, {}};
  for (Index c = 0; c < n; ++c) {
    r.comp.components.emplace_back();
    for (auto [m1, m2] : ic.composable.pairs[c]) {
      const Index h1 = from_m[c][m1], h2 = from_m[c][m2];
      const Index b = ic.s(c, m1), b1 = ic.t(c, m1), b2 = ic.t(c, m2);
      FiberMap m{b, b2, {}};
      for (Index d = 0; d < n; ++d) {
        m.img.emplace_back();
        for (auto [hp, e] : ic.fibers[c][b].pairs[d]) {
          const Index k = base.hom(d, c)[hp];
          const Index z1 = H.apply(c, h1, k, l.eb.pair(d, e, B.act(k, b1)));
          const Index e1 = z1 % E.size(d);
          const Index z2 = H.apply(c, h2, k, l.eb.pair(d, e1, B.act(k, b2)));
          m.img[d].push_back(z2 % E.size(d));
        }
      }
      r.comp.components[c].push_back(ic.find(c, m));
    }
  }

  // The identity is the transpose of (b, (e, b)) |-> (b, e) over the diagonal.
  const PresheafMap delta = diagonal(ic.bb);
  const Pullback pb = pullback(delta, l.pe);
  PresheafMap k{pb.obj, l.be.obj, {}};
  for (Index c = 0; c < n; ++c) {
    k.components.emplace_back();
    for (auto [b, y] : pb.pairs[c]) {
      const Index e = y / B.size(c);
      k.components[c].push_back(l.be.pair(c, b, e));
    }
  }
  r.id_map = univ::compose(transpose_over_base(H, delta, pb, k), r.to_m);
  return r;
}

std::vector<Violation> compare_with_evaluation(const InternalCat& ic) {
  std::vector<Violation> out;
  EvaluationRoute r = evaluation_route(ic);
  expect(out, r.to_m.check().empty() && is_iso(r.to_m), "evaluation route is isomorphic to M", "");
  expect(out, univ::compose(r.to_m, ic.st) == r.hom.proj, "isomorphism lies over B x B", "");
  expect(out, r.comp == ic.comp, "composition agrees with the evaluation chain", "");
  expect(out, r.id_map == ic.id_map, "identity agrees with the transposed projection", "");
  return out;
}

namespace {

// The factorization of m through a mono given by its components.
PresheafMap factor_through(const PresheafMap& incl, const PresheafMap& m) {
  PresheafMap out{m.source, incl.source, {}};
  for (std::size_t c = 0; c < m.components.size(); ++c) {
    std::unordered_map<Index, Index> at;
    for (std::size_t i = 0; i < incl.components[c].size(); ++i) at[incl.components[c][i]] = static_cast<Index>(i);
    out.components.emplace_back();
    for (Index v : m.components[c]) {
      auto it = at.find(v);
      if (it == at.end()) throw ValidationError({"map does not factor through the subobject", ""});
      out.components[c].push_back(it->second);
    }
  }
  return out;
}

// Pairs (a, b) in M x_B M (t a = s b) whose composite is the identity on s a.
Equalizer inverse_pairs(const InternalCat& ic) {
  return equalizer(ic.comp, univ::compose(univ::compose(ic.composable.p1, ic.s), ic.id_map));
}

}  // namespace

// The limit is taken in stages: each pair condition cuts down M x_B M before the triples are
// formed, and the final pullback against the identities then realizes the span.
EquivObject iso_object(const InternalCat& ic) {
  const Index n = objects_of(*ic.M);
  const Equalizer inv = inverse_pairs(ic);
  const PresheafMap first = univ::compose(inv.incl, ic.composable.p1);
  const PresheafMap second = univ::compose(inv.incl, ic.composable.p2);
  // (alpha, beta) with beta after alpha = id, and (gamma, alpha) with alpha after gamma = id
  const Pullback tri = pullback(first, second);
  const PresheafMap alpha = univ::compose(tri.p1, first), beta = univ::compose(tri.p1, second),
                    gamma = univ::compose(tri.p2, first);

  const PresheafMap ab = pullback_pairing(ic.composable, alpha, beta);
  const PresheafMap ga = pullback_pairing(ic.composable, gamma, alpha);
  const Product mm = product(ic.M, ic.M);
  const PresheafMap composites = pairing(mm, univ::compose(ab, ic.comp), univ::compose(ga, ic.comp));
  const PresheafMap ids = product_map(ic.bb, mm, ic.id_map, ic.id_map);
  const Pullback carrier = pullback(composites, ids);

  EquivObject o;
  o.carrier = carrier.obj;
  o.to_bb = carrier.p2;
  const PresheafMap b_inv = factor_through(inv.incl, pullback_pairing(ic.composable, ic.id_map, ic.id_map));
  o.section = pullback_pairing(carrier, pullback_pairing(tri, b_inv, b_inv), diagonal(ic.bb));
  o.tuples.resize(n);
  for (Index c = 0; c < n; ++c)
    for (auto [x, unused] : carrier.pairs[c])
      o.tuples[c].push_back({beta(c, x), alpha(c, x), gamma(c, x)});
  return o;
}

AltEquivObject iso_object_alt(const InternalCat& ic, const EquivObject& iso) {
  const Index n = objects_of(*ic.M);
  const Equalizer inv = inverse_pairs(ic);
  const PresheafMap first = univ::compose(inv.incl, ic.composable.p1);
  const PresheafMap second = univ::compose(inv.incl, ic.composable.p2);
  // (m1, m2) and (m2, m3), glued along m2
  const Pullback trip = pullback(second, first);
  const PresheafMap m1 = univ::compose(trip.p1, first), m2 = univ::compose(trip.p1, second),
                    m3 = univ::compose(trip.p2, second);
  const PresheafMap p12 = pullback_pairing(ic.composable, m1, m2);
  const PresheafMap p23 = pullback_pairing(ic.composable, m2, m3);
  const Product mm = product(ic.M, ic.M);
  const PresheafMap composites = pairing(mm, univ::compose(p12, ic.comp), univ::compose(p23, ic.comp));
  const PresheafMap ids = product_map(ic.bb, mm, ic.id_map, ic.id_map);
  const Pullback carrier = pullback(composites, ids);

  AltEquivObject out;
  EquivObject& o = out.obj;
  o.carrier = carrier.obj;
  o.to_bb = carrier.p2;
  const PresheafMap b_inv = factor_through(inv.incl, pullback_pairing(ic.composable, ic.id_map, ic.id_map));
  o.section = pullback_pairing(carrier, pullback_pairing(trip, b_inv, b_inv), diagonal(ic.bb));
  o.tuples.resize(n);
  for (Index c = 0; c < n; ++c)
    for (auto [x, unused] : carrier.pairs[c]) o.tuples[c].push_back({m1(c, x), m2(c, x), m3(c, x)});
  auto found = find_iso_over(o.to_bb, iso.to_bb);
  if (!found) throw IsoSearchFailed("no isomorphism between the two objects of isomorphisms");
  out.iso = *found;
  return out;
}

EquivObject vergura_object(const PresheafMap& p) {
  const FinCat& base = p.source->base();
  const Presheaf& B = *p.target;
  const Presheaf& E = *p.source;
  const Index n = static_cast<Index>(base.num_objects());
  const Product bb = product(p.target, p.target);
  const Legs l = legs(p, bb);

  const HomOverBase hn = hom_over_base(l.ide, l.pe);   // E_b' -> E_b
  const HomOverBase hm = hom_over_base(l.pe, l.ide);   // E_b -> E_b'
  const HomOverBase hee = hom_over_base(l.pe, l.pe);   // E_b -> E_b
  const HomOverBase hbb = hom_over_base(l.ide, l.ide); // E_b' -> E_b'

  auto ev = [](const HomOverBase& h, Index c, Index phi, Index y) { return h.ev(c, h.with_y.find(c, phi, y)); };
  auto eb_to_be = [&](Index c, Index v) { return l.be.pair(c, v % B.size(c), v / B.size(c)); };
  auto be_to_eb = [&](Index c, Index v) { return l.eb.pair(c, v % E.size(c), v / E.size(c)); };

  const Pullback nm = pullback(hn.proj, hm.proj);  // (beta, alpha)
  const Pullback mn = pullback(hm.proj, hn.proj);  // (alpha, gamma)

  // c(beta, alpha) = beta after alpha on E_b
  const PresheafMap w1 = univ::compose(nm.p1, hn.proj);
  const Pullback pb1 = pullback(w1, l.pe);
  PresheafMap k1{pb1.obj, l.eb.obj, {}};
  for (Index c = 0; c < n; ++c) {
    k1.components.emplace_back();
    for (auto [a, y] : pb1.pairs[c]) {
      auto [be, al] = nm.pairs[c][a];
      const Index z1 = ev(hm, c, al, y);
      k1.components[c].push_back(ev(hn, c, be, z1));
    }
  }
  const PresheafMap cc = transpose_over_base(hee, w1, pb1, k1);

  // c'(alpha, gamma) = alpha after gamma on E_b'
  const PresheafMap w2 = univ::compose(mn.p1, hm.proj);
  const Pullback pb2 = pullback(w2, l.ide);
  PresheafMap k2{pb2.obj, l.be.obj, {}};
  for (Index c = 0; c < n; ++c) {
    k2.components.emplace_back();
    for (auto [a, y] : pb2.pairs[c]) {
      auto [al, ga] = mn.pairs[c][a];
      const Index z1 = ev(hn, c, ga, y);
      k2.components[c].push_back(ev(hm, c, al, z1));
    }
  }
  const PresheafMap cc2 = transpose_over_base(hbb, w2, pb2, k2);

  // identities: transposes of the projection
  const PresheafMap id_bb = identity_map(bb.obj);
  const Pullback pe_id = pullback(id_bb, l.pe), ide_id = pullback(id_bb, l.ide);
  const PresheafMap id_e = transpose_over_base(hee, id_bb, pe_id, pe_id.p2);
  const PresheafMap id_b = transpose_over_base(hbb, id_bb, ide_id, ide_id.p2);

  // cut both pairs down to identity composites, then glue along alpha
  const Equalizer nm_id = equalizer(cc, univ::compose(w1, id_e));
  const Equalizer mn_id = equalizer(cc2, univ::compose(w2, id_b));
  const Pullback tri = pullback(univ::compose(nm_id.incl, nm.p2), univ::compose(mn_id.incl, mn.p1));
  const PresheafMap tri_nm = univ::compose(tri.p1, nm_id.incl), tri_mn = univ::compose(tri.p2, mn_id.incl);

  const Pullback q = pullback(hee.proj, hbb.proj);
  const PresheafMap composites =
      pullback_pairing(q, univ::compose(tri_nm, cc), univ::compose(tri_mn, cc2));
  const PresheafMap ids = pullback_pairing(q, id_e, id_b);
  const Pullback carrier = pullback(composites, ids);

  EquivObject o;
  o.carrier = carrier.obj;
  o.to_bb = carrier.p2;

  // section: identity fiber maps over the diagonal
  const PresheafMap delta = diagonal(bb);
  const Pullback dn = pullback(delta, l.ide), dm = pullback(delta, l.pe);
  PresheafMap kn{dn.obj, l.eb.obj, {}}, km{dm.obj, l.be.obj, {}};
  for (Index c = 0; c < n; ++c) {
    kn.components.emplace_back();
    km.components.emplace_back();
    for (auto [b, y] : dn.pairs[c]) kn.components[c].push_back(be_to_eb(c, y));
    for (auto [b, y] : dm.pairs[c]) km.components[c].push_back(eb_to_be(c, y));
  }
  const PresheafMap sn = transpose_over_base(hn, delta, dn, kn);
  const PresheafMap sm = transpose_over_base(hm, delta, dm, km);
  const PresheafMap s_nm = factor_through(nm_id.incl, pullback_pairing(nm, sn, sm));
  const PresheafMap s_mn = factor_through(mn_id.incl, pullback_pairing(mn, sm, sn));
  const PresheafMap s_tri = pullback_pairing(tri, s_nm, s_mn);
  o.section = pullback_pairing(carrier, s_tri, delta);

  o.tuples.resize(n);
  for (Index c = 0; c < n; ++c)
    for (auto [x, unused] : carrier.pairs[c]) {
      auto [ba, ag] = nm.pairs[c][tri_nm(c, x)];
      o.tuples[c].push_back({ba, ag, mn.pairs[c][tri_mn(c, x)].second});
    }
  return o;
}

InternalRelation internal_relation(const InternalCat& ic) {
  InternalRelation r;
  r.st_mono = is_mono(ic.st);
  const Presheaf& B = *ic.B;
  for (Index c = 0; c < objects_of(B); ++c) {
    Preorder pre;
    for (Index b = 0; b < B.size(c); ++b) pre.carrier.push_back(B.label(c, b));
    pre.leq.assign(B.size(c), std::vector<bool>(B.size(c), false));
    for (const FiberMap& m : ic.fiber_maps[c]) pre.leq[m.b][m.b2] = true;
    r.reflexive = r.reflexive && pre.is_reflexive();
    r.transitive = r.transitive && pre.is_transitive();
    r.antisymmetric = r.antisymmetric && pre.is_antisymmetric();
    r.levels.push_back(std::move(pre));
  }
  return r;
}

}  // namespace univ
