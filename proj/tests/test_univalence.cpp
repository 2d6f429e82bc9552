#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "univalence/univalence.hpp"

using namespace univ;

namespace {

std::vector<PresheafMap> finset_maps(Index max_e, Index max_b) {
  std::vector<PresheafMap> out;
  for (Index e = 0; e <= max_e; ++e)
    for (Index b = 0; b <= max_b; ++b) {
      auto ms = maps_up_to_iso(finset(e), finset(b));
      out.insert(out.end(), ms.begin(), ms.end());
    }
  return out;
}

std::vector<PresheafPtr> finsets(Index n) {
  std::vector<PresheafPtr> out;
  for (Index k = 0; k <= n; ++k) out.push_back(finset(k));
  return out;
}

// Oracle: q <= p counted straight from the definition over every u and every v.
std::size_t naive_squares(const PresheafMap& q, const PresheafMap& p) {
  std::size_t n = 0;
  for (const auto& u : homs(q.target, p.target))
    for (const auto& v : homs(q.source, p.source))
      if (compose(v, p) == compose(q, u) && is_cartesian(q, p, {u, v})) ++n;
  return n;
}

}  // namespace

TEST_CASE("brute force refuter on FinSet examples") {
  auto empty_to_one = finset_map(0, 1, {});
  CHECK(check_bruteforce(empty_to_one, default_family(empty_to_one, finsets(6), 12)).outcome == Outcome::pass);

  auto two_to_one = to_terminal(finset(2));
  auto v = check_bruteforce(two_to_one, default_family(two_to_one, {}, 12));
  REQUIRE(v.outcome == Outcome::fail);
  REQUIRE(v.witness);
  CHECK(is_cartesian(v.witness->q, two_to_one, v.witness->first));
  CHECK(is_cartesian(v.witness->q, two_to_one, v.witness->second));
  CHECK_FALSE(v.witness->first.v == v.witness->second.v);
  CHECK(naive_squares(two_to_one, two_to_one) == 2);

  auto id2 = identity_map(finset(2));
  auto w = check_bruteforce(id2, default_family(id2, {}, 12));
  REQUIRE(w.outcome == Outcome::fail);
  CHECK_FALSE(w.witness->first.u == w.witness->second.u);

  // the refuter never misses what the naive count sees on small tests
  for (const auto& p : finset_maps(2, 2)) {
    bool naive_fail = false;
    for (const auto& q : finset_maps(2, 2)) naive_fail = naive_fail || naive_squares(q, p) > 1;
    auto b = check_bruteforce(p, default_family(p, finsets(2), 12));
    if (naive_fail) CHECK_MESSAGE(b.outcome == Outcome::fail, finset_morphism_label(p));
  }
}

TEST_CASE("completeness of n(p)") {
  CHECK(check_completeness(finset_map(1, 2, {1})).outcome == Outcome::pass);
  auto two = check_completeness(to_terminal(finset(2)));
  CHECK(two.outcome == Outcome::fail);
  CHECK(two.detail.square->size(0) == 2);
  auto om = subobject_classifier(finset_base());
  CHECK(om.omega->size(0) == 2);
  CHECK(check_completeness(om.true_map).outcome == Outcome::pass);
  // the universal subobject is univalent on other bases too
  for (const auto& base : {fx::arrow_base(), fx::idempotent_base(), fx::bz2()}) {
    auto o = subobject_classifier(base);
    CHECK(check_completeness(o.true_map).outcome == Outcome::pass);
  }
}

TEST_CASE("classifying map criterion for monos") {
  auto v = check_omega(finset_map(1, 2, {1}));
  CHECK(v.outcome == Outcome::pass);
  CHECK(is_iso(*v.chi));
  CHECK(check_omega(identity_map(finset(1))).outcome == Outcome::pass);
  CHECK(check_omega(to_terminal(finset(2))).outcome == Outcome::not_applicable);
  auto bad = check_omega(finset_map(1, 3, {0}));
  CHECK(bad.outcome == Outcome::fail);
  CHECK(bad.first != bad.second);

  // every mono into a set of size <= 3, against completeness
  for (const auto& p : finset_maps(3, 3)) {
    if (!is_mono(p)) continue;
    CHECK_MESSAGE((check_omega(p).outcome == Outcome::pass) ==
                      (check_completeness(p).outcome == Outcome::pass),
                  finset_morphism_label(p));
  }
  for (const auto& p : fx::small_maps(3)) {
    if (!is_mono(p)) continue;
    CHECK_MESSAGE((check_omega(p).outcome == Outcome::pass) ==
                      (check_completeness(p).outcome == Outcome::pass),
                  describe(p));
  }
}

TEST_CASE("fiber criterion on FinSet") {
  CHECK(finset_fiber_criterion(identity_map(finset(1))).pass);
  CHECK_FALSE(finset_fiber_criterion(to_terminal(finset(2))).pass);
  auto bij = finset_fiber_criterion(finset_map(2, 2, {1, 0}));
  CHECK_FALSE(bij.pass);
  CHECK(bij.fiber_sizes == std::vector<Index>{1, 1});
  for (const auto& p : finset_maps(3, 3))
    CHECK_MESSAGE(finset_fiber_criterion(p).pass == (check_completeness(p).outcome == Outcome::pass),
                  finset_morphism_label(p));
  CHECK_THROWS_AS(finset_fiber_criterion(to_terminal(regular_gset(fx::bz2(), fx::z2()))), ValidationError);
}

TEST_CASE("combined verdicts carry no disagreement") {
  UnivalenceOptions opts;
  opts.corpus = finsets(8);
  for (const auto& p : finset_maps(3, 3)) {
    auto v = check_univalence(p, opts);
    CHECK_MESSAGE(v.disagreements.empty(), finset_morphism_label(p));
    if (v.brute.outcome == Outcome::fail) CHECK(v.brute.witness.has_value());
  }
  UnivalenceOptions small;
  small.brute_opts.family_bound = 4;
  for (const auto& p : fx::small_maps(2)) {
    auto v = check_univalence(p, small);
    CHECK_MESSAGE(v.disagreements.empty(), describe(p));
  }
}

TEST_CASE("the poset of univalent finite set maps") {
  auto poset = enumerate_univ(finset_ambient(), 3);
  std::set<std::string> names(poset.names.begin(), poset.names.end());
  CHECK(names == std::set<std::string>{"0->0", "0->1", "1->1:{0}", "1->2:{0}"});
  auto subsets = Preorder::from_pairs({"", "0", "1", "01"},
                                      {{"", "0"}, {"", "1"}, {"", "01"}, {"0", "01"}, {"1", "01"}});
  CHECK(preorders_isomorphic(poset.order, subsets));
  CHECK(poset.order.is_antisymmetric());
  CHECK(poset.order.is_transitive());
  CHECK(poset.multiple_squares.empty());
  for (const auto& row : poset.joins)
    for (Index j : row) CHECK(j != kNone);
  CHECK(poset.hasse().size() == 4);
}

TEST_CASE("univalent Z/2-sets") {
  auto poset = enumerate_univ(gset_ambient(fx::z2(), "Z/2"), 2);
  CHECK(poset.multiple_squares.empty());
  CHECK(poset.order.is_antisymmetric());
  CHECK(poset.order.is_transitive());
  CHECK(poset.elements.size() >= 4);
  for (const auto& p : poset.elements) {
    CHECK(check_completeness(p).outcome == Outcome::pass);
    CHECK(check_bruteforce(p, default_family(p, {}, 4)).outcome != Outcome::fail);
  }
}

TEST_CASE("stability under pullback") {
  auto om = subobject_classifier(finset_base());
  const auto t = om.true_map;
  // along the mono picking out true
  auto pick = finset_map(finset(1), om.omega, {t(0, 0)});
  auto along_mono = pullback(pick, t);
  CHECK(check_completeness(along_mono.p1).outcome == Outcome::pass);
  CHECK(along_mono.obj->size(0) == 1);
  // along the fold map
  auto two_omegas = coproduct(om.omega, om.omega);
  std::vector<Index> fold;
  for (Index i = 0; i < two_omegas.obj->size(0); ++i) fold.push_back(i % om.omega->size(0));
  PresheafMap fold_map{two_omegas.obj, om.omega, {fold}};
  REQUIRE(fold_map.check().empty());
  CHECK(check_completeness(pullback(fold_map, t).p1).outcome == Outcome::fail);

  CHECK(check_completeness(identity_map(finset(0))).outcome == Outcome::pass);
  CHECK(check_completeness(identity_map(finset(2))).outcome == Outcome::fail);

  std::vector<PresheafMap> univalent{t, finset_map(0, 1, {}), identity_map(finset(1))};
  std::vector<PresheafMap> isos{identity_map(finset(0)), identity_map(finset(1)), identity_map(finset(2))};
  auto report = stability_suite(univalent, isos, finsets(3));
  CHECK(report.cases.size() > 20);
  CHECK(report.failures().empty());

  std::vector<PresheafMap> more;
  std::vector<PresheafPtr> objects;
  for (const auto& base : {fx::arrow_base(), fx::bz2()}) {
    more.push_back(subobject_classifier(base).true_map);
    for (const auto& x : generic_presheaves(base, 3)) {
      objects.push_back(x);
      isos.push_back(identity_map(x));
    }
  }
  isos.erase(isos.begin(), isos.begin() + 3);
  auto r2 = stability_suite(more, isos, objects);
  CHECK(r2.failures().empty());
}

TEST_CASE("the three-element S3-set over the point") {
  auto r = s3_report();
  CHECK(r.external_automorphisms == 1);
  CHECK_FALSE(r.map_is_mono);
  CHECK(r.internal_equivalences == 6);
  CHECK(r.internal_is_conjugation);
  CHECK(r.checkers_agree);
  CHECK(r.completeness == Outcome::fail);
  CHECK_FALSE(r.matches_claim);
}
