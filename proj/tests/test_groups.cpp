#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "univalence/groups.hpp"

using namespace univ;

namespace {

// Independent oracle: count automorphisms by trying every bijection.
std::size_t brute_aut_count(const FinGroup& g) {
  std::vector<Index> perm(g.order());
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t n = 0;
  do {
    if (is_homomorphism(g, g, perm)) ++n;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return n;
}

std::size_t brute_center(const FinGroup& g) {
  std::size_t n = 0;
  for (Index a = 0; a < static_cast<Index>(g.order()); ++a) {
    bool central = true;
    for (Index b = 0; b < static_cast<Index>(g.order()); ++b)
      central = central && g.mul(a, b) == g.mul(b, a);
    n += central;
  }
  return n;
}

}  // namespace

TEST_CASE("group builders satisfy the axioms") {
  for (const auto& g : {trivial_group(), cyclic_group(5), dihedral_group(4), quaternion_group(),
                        symmetric_group(3), symmetric_group(4),
                        direct_product(cyclic_group(2), cyclic_group(3))}) {
    CHECK(group_report(g.table()).empty());
  }
  CHECK(dihedral_group(4).order() == 8);
  CHECK(symmetric_group(4).order() == 24);
  CHECK(permutation_group(3, {{2, 1, 3}, {2, 3, 1}}).order() == 6);
}

TEST_CASE("from_table rejects a non-associative Latin square") {
  // Latin square on 5 elements with identity 0 that is not a group.
  std::vector<std::vector<Index>> t = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(FinGroup::from_table({"0", "1", "2", "3", "4"}, t), ValidationError);
}

TEST_CASE("center") {
  CHECK(center(cyclic_group(6)).size() == 6);
  CHECK(center(symmetric_group(3)).size() == 1);
  CHECK(center(dihedral_group(4)).size() == 2);
  CHECK(center(quaternion_group()).size() == 2);
  CHECK(is_normal(dihedral_group(4), center(dihedral_group(4))));
}

TEST_CASE("automorphisms against the all-bijections oracle") {
  for (const auto& g : {cyclic_group(2), cyclic_group(3), cyclic_group(4),
                        direct_product(cyclic_group(2), cyclic_group(2)), symmetric_group(3),
                        dihedral_group(4), quaternion_group()}) {
    CAPTURE(g.label());
    auto aut = automorphisms(g);
    CHECK(aut.group.order() == brute_aut_count(g));
    CHECK(group_report(aut.group.table()).empty());
  }
  CHECK(automorphisms(cyclic_group(2)).group.order() == 1);
  CHECK(isomorphic(automorphisms(cyclic_group(3)).group, cyclic_group(2)));
  auto s3 = automorphisms(symmetric_group(3));
  CHECK(isomorphic(s3.group, symmetric_group(3)));
  CHECK(inn_out(s3).out.order() == 1);
}

TEST_CASE("inner and outer automorphisms") {
  auto d4 = automorphisms(dihedral_group(4));
  auto io = inn_out(d4);
  CHECK(isomorphic(io.out, cyclic_group(2)));
  CHECK(io.inner.size() * io.out.order() == d4.group.order());
  auto z6 = automorphisms(cyclic_group(6));
  CHECK(inn_out(z6).inner.size() == 1);
  CHECK(inn_out(z6).out.order() == z6.group.order());
}

TEST_CASE("completeness routes agree") {
  CHECK(is_complete(symmetric_group(3)).complete());
  CHECK(is_complete(symmetric_group(4)).complete());
  CHECK_FALSE(is_complete(cyclic_group(2)).complete());
  CHECK_FALSE(is_complete(dihedral_group(4)).complete());
  CHECK_FALSE(is_complete(quaternion_group()).complete());
  CHECK(is_complete(trivial_group()).complete());
  for (const auto& g : small_groups(8)) {
    auto c = is_complete(g);
    CAPTURE(g.label());
    CHECK(c.routes_agree());
    CHECK(g.order() == c.center_order * c.inner_order);
    CHECK(c.aut_order == c.inner_order * c.out_order);
    CHECK(c.center_order == brute_center(g));
  }
}

TEST_CASE("automorphism tower") {
  auto t = automorphism_tower(cyclic_group(3), 5);
  CHECK(t.stabilized);
  CHECK(t.steps == 2);
  CHECK(t.stages.back().order() == 1);
  auto s = automorphism_tower(symmetric_group(3), 5);
  CHECK(s.stabilized);
  CHECK(s.steps == 0);
  CHECK(automorphism_tower(trivial_group(), 3).steps == 0);
  CHECK_THROWS_AS(automorphisms(symmetric_group(4), 10), BudgetExceeded);
}

TEST_CASE("self-equivalences of BG") {
  auto s3 = eq_bg(symmetric_group(3));
  CHECK(s3.contractible());
  auto z2 = eq_bg(cyclic_group(2));
  CHECK(z2.pi0.order() == 1);
  CHECK(z2.pi1.order() == 2);
  auto z6 = eq_bg(cyclic_group(6));
  CHECK(z6.pi1.order() == 6);
  CHECK(z6.pi0_matches_out);
  for (const auto& g : small_groups(6)) {
    auto e = eq_bg(g);
    CHECK(e.pi0_matches_out);
    CHECK(e.pi1_matches_center);
  }
}

TEST_CASE("small groups match the classical counts") {
  const std::vector<std::size_t> expected = {1, 1, 1, 2, 1, 2, 1, 5};
  for (int n = 1; n <= 8; ++n) {
    CAPTURE(n);
    CHECK(groups_of_order(n).size() == expected[n - 1]);
  }
  std::set<std::string> four, six;
  for (const auto& g : groups_of_order(4)) four.insert(g.label());
  for (const auto& g : groups_of_order(6)) six.insert(g.label());
  CHECK(four == std::set<std::string>{"Z/4", "Z/2 x Z/2"});
  CHECK(six == std::set<std::string>{"Z/6", "S3"});
  CHECK_THROWS_AS(small_groups(9), BudgetExceeded);
}

TEST_CASE("pullbacks of groups") {
  auto z2 = std::make_shared<const FinGroup>(cyclic_group(2));
  auto z3 = std::make_shared<const FinGroup>(cyclic_group(3));
  auto one = std::make_shared<const FinGroup>(trivial_group());
  GroupPullback p = grp_pullback({z2, one, {0, 0}}, {z3, one, {0, 0, 0}});
  CHECK(p.group.order() == 6);
  CHECK(isomorphic(p.group, cyclic_group(6)));
  // Kernel of Z/2 -> Z/2 (zero) as a pullback along 1 -> Z/2.
  GroupPullback k = grp_pullback({z2, z2, {0, 0}}, {one, z2, {0}});
  CHECK(k.group.order() == 2);

  // Projection Z/2 x Z/2 -> Z/2 pulled back along id and along inversion.
  auto v = std::make_shared<const FinGroup>(direct_product(cyclic_group(2), cyclic_group(2)));
  std::vector<Index> pi1(4);
  for (Index x = 0; x < 4; ++x) pi1[x] = v->table()[x][0] == x ? 0 : 0;
  auto homs = homomorphisms(*v, *z2);
  CHECK(homs.size() == 4);
  GroupHom proj{v, z2, homs[1]};
  GroupHom id{z2, z2, {0, 1}};
  GroupHom inv{z2, z2, {z2->inv(0), z2->inv(1)}};
  auto a = grp_pullback(proj, id);
  auto b = grp_pullback(proj, inv);
  CHECK(a.pairs == b.pairs);
}

TEST_CASE("refuter on the four surviving maps and known failures") {
  std::vector<FinGroupPtr> catalog;
  for (auto& g : small_groups(4)) catalog.push_back(std::make_shared<const FinGroup>(g));
  auto one = std::make_shared<const FinGroup>(trivial_group());
  auto z2 = std::make_shared<const FinGroup>(cyclic_group(2));
  auto z4 = std::make_shared<const FinGroup>(cyclic_group(4));

  CHECK_FALSE(grp_univalence_refute({one, one, {0}}, catalog).refuted);
  CHECK_FALSE(grp_univalence_refute({one, z2, {0}}, catalog).refuted);

  // Over X = Z/2 the fibre Z/2 x Z/2 -> Z/2 has two complements, so both maps
  // admit two distinct cartesian squares from the first projection.
  for (GroupHom p : {GroupHom{z2, one, {0, 0}}, GroupHom{z2, z2, {0, 0}}}) {
    auto r = grp_univalence_refute(p, catalog);
    REQUIRE(r.refuted);
    CHECK(r.witness_q.source->order() == 4);
    CHECK(is_cartesian_group_square(r.witness_q, p, r.first));
    CHECK(is_cartesian_group_square(r.witness_q, p, r.second));
    CHECK(r.first.v != r.second.v);
  }

  auto id = grp_univalence_refute({z2, z2, {0, 1}}, catalog);
  REQUIRE(id.refuted);
  CHECK(is_cartesian_group_square(id.witness_q, {z2, z2, {0, 1}}, id.first));
  CHECK(is_cartesian_group_square(id.witness_q, {z2, z2, {0, 1}}, id.second));
  CHECK((id.first.u != id.second.u || id.first.v != id.second.v));

  auto z4m = homomorphisms(*z2, *z4);
  CHECK(grp_univalence_refute({z2, z4, z4m.back()}, catalog).refuted);
}
