#include <algorithm>
#include <map>

#include "doctest.h"
#include "fixtures.hpp"
#include "univalence/internal.hpp"

using namespace univ;

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::vector<std::size_t> fiber_sizes(const PresheafMap& p) {
  std::vector<std::size_t> s(p.target->size(0), 0);
  for (Index e = 0; e < p.source->size(0); ++e) ++s[p(0, e)];
  return s;
}

// S3 acting on itself by conjugation, x.g = g^-1 x g.
PresheafPtr conjugation_gset() {
  const FinGroup& g = fx::s3();
  std::vector<std::vector<Index>> actions(6);
  for (Index m = 0; m < 6; ++m)
    for (Index x = 0; x < 6; ++x) actions[m].push_back(g.mul(g.mul(g.inv(m), x), m));
  return validate_presheaf(Presheaf(fx::bs3(), {6}, actions));
}

std::vector<PresheafMap> finset_maps(Index max_e, Index max_b) {
  std::vector<PresheafMap> out;
  for (Index e = 0; e <= max_e; ++e)
    for (Index b = 0; b <= max_b; ++b) {
      auto ms = maps_up_to_iso(finset(e), finset(b));
      out.insert(out.end(), ms.begin(), ms.end());
    }
  return out;
}

}  // namespace

TEST_CASE("internal category of the identity on the point") {
  auto ic = build_internal_cat(identity_map(finset(1)));
  CHECK(ic.M->size(0) == 1);
  CHECK(internal_cat_report(ic).empty());
  auto iso = iso_object(ic);
  CHECK(iso.carrier->size(0) == 1);
  CHECK(iso_object_alt(ic, iso).obj.carrier->size(0) == 1);
  CHECK(vergura_object(ic.p).carrier->size(0) == 1);
}

TEST_CASE("FinSet: morphisms are fiber functions composed literally") {
  auto p = to_terminal(finset(2));
  auto ic = build_internal_cat(p);
  REQUIRE(ic.M->size(0) == 4);
  std::map<std::vector<Index>, Index> by_fn;
  for (Index m = 0; m < 4; ++m) by_fn[ic.fiber_maps[0][m].img[0]] = m;
  CHECK(by_fn.size() == 4);
  for (const auto& [f, m1] : by_fn)
    for (const auto& [g, m2] : by_fn) {
      std::vector<Index> gf{g[f[0]], g[f[1]]};
      CHECK(ic.compose(0, m1, m2) == by_fn.at(gf));
    }

  for (const auto& q : finset_maps(3, 3)) {
    auto icq = build_internal_cat(q);
    const auto fs = fiber_sizes(q);
    std::size_t expected = 0;
    for (auto a : fs)
      for (auto b : fs) expected += ipow(b, a);
    CHECK(static_cast<std::size_t>(icq.M->size(0)) == expected);
  }
}

TEST_CASE("S3-set example: morphisms form the exponential") {
  auto x3 = natural_gset(fx::bs3(), fx::s3());
  auto p = to_terminal(x3);
  auto ic = build_internal_cat(p);
  CHECK(ic.M->size(0) == 27);
  CHECK(find_iso(ic.M, exponential(x3, x3).obj));
  CHECK(internal_cat_report(ic).empty());
  CHECK(compare_with_evaluation(ic).empty());

  auto iso = iso_object(ic);
  CHECK(iso.carrier->size(0) == 6);
  CHECK(find_iso(iso.carrier, conjugation_gset()));
  CHECK(iso_object_alt(ic, iso).obj.carrier->size(0) == 6);
  auto v = vergura_object(p);
  CHECK(v.carrier->size(0) == 6);
  CHECK(find_iso_over(v.to_bb, iso.to_bb));
}

TEST_CASE("unit and associativity, and the evaluation route") {
  auto maps = fx::small_maps(3);
  auto fin = finset_maps(3, 3);
  maps.insert(maps.end(), fin.begin(), fin.end());
  for (const auto& p : maps) {
    auto ic = build_internal_cat(p);
    auto report = internal_cat_report(ic);
    CHECK_MESSAGE(report.empty(), describe(p));
    auto cmp = compare_with_evaluation(ic);
    CHECK_MESSAGE(cmp.empty(), describe(p));
  }
}

TEST_CASE("the three objects of isomorphisms agree") {
  auto maps = fx::small_maps(3);
  auto fin = finset_maps(3, 3);
  maps.insert(maps.end(), fin.begin(), fin.end());
  for (const auto& p : maps) {
    auto ic = build_internal_cat(p);
    auto iso = iso_object(ic);
    CHECK(iso.carrier->check().empty());
    CHECK(iso.section.check().empty());
    CHECK(is_mono(iso.section));
    CHECK(compose(iso.section, iso.to_bb) == pairing(ic.bb, identity_map(ic.B), identity_map(ic.B)));

    auto alt = iso_object_alt(ic, iso);
    CHECK(is_iso(alt.iso));
    CHECK(compose(alt.iso, iso.to_bb) == alt.obj.to_bb);
    // (beta, alpha, gamma) corresponds to (alpha, beta, alpha)
    for (Index c = 0; c < static_cast<Index>(iso.tuples.size()); ++c)
      for (Index x = 0; x < static_cast<Index>(iso.tuples[c].size()); ++x) {
        auto [beta, alpha, gamma] = iso.tuples[c][x];
        CHECK(beta == gamma);
        const std::array<Index, 3> want{alpha, beta, alpha};
        CHECK(std::find(alt.obj.tuples[c].begin(), alt.obj.tuples[c].end(), want) != alt.obj.tuples[c].end());
      }

    auto v = vergura_object(p);
    CHECK(v.section.check().empty());
    CHECK(find_iso_over(v.to_bb, iso.to_bb));

    // isomorphisms of fibers over each pair, counted by injective search
    for (Index c = 0; c < static_cast<Index>(ic.fibers.size()); ++c) {
      std::size_t count = 0;
      for (Index b = 0; b < ic.B->size(c); ++b)
        for (Index b2 = 0; b2 < ic.B->size(c); ++b2) {
          const auto& from = ic.fibers[c][b];
          const auto& to = ic.fibers[c][b2];
          if (from.obj->sizes() != to.obj->sizes()) continue;
          HomSearchOptions o;
          o.injective = true;
          o.allow = [&](Index d, Index i, Index j) { return from.pairs[d][i].first == to.pairs[d][j].first; };
          count += count_homs(*from.obj, *to.obj, 0, o);
        }
      CHECK(static_cast<std::size_t>(iso.carrier->size(c)) == count);
    }
  }

  for (const auto& p : finset_maps(3, 3)) {
    const auto fs = fiber_sizes(p);
    std::size_t expected = 0;
    for (auto a : fs)
      for (auto b : fs)
        if (a == b) expected += factorial(a);
    CHECK(static_cast<std::size_t>(iso_object(build_internal_cat(p)).carrier->size(0)) == expected);
  }
}

TEST_CASE("isomorphisms give an iso object equal to B x B") {
  for (const auto& p : fx::small_maps(3)) {
    if (!is_iso(p)) continue;
    auto ic = build_internal_cat(p);
    auto iso = iso_object(ic);
    CHECK(is_iso(iso.to_bb));
  }
  auto p2 = to_terminal(finset(2));
  CHECK(iso_object(build_internal_cat(p2)).carrier->size(0) == 2);
  CHECK(vergura_object(p2).carrier->size(0) == 2);
}

TEST_CASE("internal preorders") {
  for (const auto& p : fx::small_maps(3)) {
    auto ic = build_internal_cat(p);
    auto rel = internal_relation(ic);
    CHECK(rel.reflexive);
    CHECK(rel.transitive);
    if (rel.st_mono) {
      // each hom-set has at most one element
      for (Index c = 0; c < static_cast<Index>(ic.fibers.size()); ++c)
        for (Index b = 0; b < ic.B->size(c); ++b)
          for (Index b2 = 0; b2 < ic.B->size(c); ++b2) {
            std::size_t k = 0;
            for (const auto& m : ic.fiber_maps[c]) k += m.b == b && m.b2 == b2;
            CHECK(k <= 1);
          }
    }
  }
  // E = 0 -> B = 2: every fiber is empty, so M is all of B x B
  auto ic = build_internal_cat(finset_map(finset(0), finset(2), {}));
  auto rel = internal_relation(ic);
  CHECK(rel.st_mono);
  CHECK_FALSE(rel.antisymmetric);
  auto ic2 = build_internal_cat(finset_map(finset(1), finset(2), {0}));
  auto rel2 = internal_relation(ic2);
  CHECK(rel2.st_mono);
  CHECK(rel2.antisymmetric);
  CHECK(rel2.levels[0].leq[1][0]);
  CHECK_FALSE(rel2.levels[0].leq[0][1]);
}
