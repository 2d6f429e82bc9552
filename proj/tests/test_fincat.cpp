#include "doctest.h"

#include <algorithm>
#include <set>

#include "univalence/fincat.hpp"

using namespace univ;

namespace {

RawCategory arrow_category() {
  RawCategory r;
  r.objects = {"0", "1"};
  r.morphisms = {{"i0", "0", "0"}, {"i1", "1", "1"}, {"f", "0", "1"}};
  r.identities = {{"0", "i0"}, {"1", "i1"}};
  r.composition = {{"i0", "i0", "i0"}, {"i1", "i1", "i1"}, {"i0", "f", "f"}, {"f", "i1", "f"}};
  return r;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Oracle for hom-set counts of the full subcategory of FinSet on {1..n}.
long function_count(const std::vector<int>& sizes) {
  long total = 0;
  for (int a : sizes)
    for (int b : sizes) total += ipow(b, a);
  return total;
}

}  // namespace

TEST_CASE("validate_category accepts well formed tables") {
  CHECK_NOTHROW(validate_category(terminal_category().to_raw()));
  auto c = validate_category(arrow_category());
  CHECK(c.num_objects() == 2);
  CHECK(c.num_morphisms() == 3);
  CHECK(c.check_laws().empty());
}

TEST_CASE("validate_category reports the first broken law") {
  auto r = arrow_category();
  r.composition.pop_back();
  try {
    validate_category(r);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.violation().law == "missing composite");
  }
  auto dup = arrow_category();
  dup.objects.push_back("0");
  CHECK_FALSE(category_report(dup).empty());
  CHECK(category_report(dup).front().law == "duplicate object id");

  // An idempotent whose composite is the identity breaks nothing but two
  // endomorphisms that disagree on associativity do.
  RawCategory bad;
  bad.objects = {"x"};
  bad.morphisms = {{"1", "x", "x"}, {"a", "x", "x"}, {"b", "x", "x"}};
  bad.identities = {{"x", "1"}};
  for (std::string f : {"1", "a", "b"}) {
    bad.composition.push_back({"1", f, f});
    if (f != "1") bad.composition.push_back({f, "1", f});
  }
  bad.composition.push_back({"a", "a", "b"});
  bad.composition.push_back({"a", "b", "1"});
  bad.composition.push_back({"b", "a", "a"});
  bad.composition.push_back({"b", "b", "a"});
  auto rep = category_report(bad);
  REQUIRE_FALSE(rep.empty());
  CHECK(rep.front().law == "associativity");
}

TEST_CASE("FinSet fragments have the expected morphism counts") {
  for (const auto& sizes : std::vector<std::vector<int>>{{1}, {1, 2}, {1, 2, 3}, {1, 2, 3, 4}, {0, 1, 2}}) {
    auto c = finset_category(sizes);
    CHECK(static_cast<long>(c.num_morphisms()) == function_count(sizes));
    CHECK(c.check_laws().empty());
    CHECK(category_report(c.to_raw()).empty());
  }
}

TEST_CASE("is_iso") {
  auto arrow = validate_category(arrow_category());
  CHECK(is_iso(arrow, "i0"));
  CHECK_FALSE(is_iso(arrow, "f"));
  CHECK_THROWS_AS(is_iso(arrow, "nope"), UnknownIdError);

  auto c = finset_category({3});
  Index cycle = c.morphism_at(finset_morphism_name(3, 3, {2, 3, 1}));
  CHECK(is_iso(c, cycle));
  auto inv = inverse_of(c, cycle);
  REQUIRE(inv);
  CHECK(c.morphism_name(*inv) == finset_morphism_name(3, 3, {3, 1, 2}));
  CHECK_FALSE(is_iso(c, c.morphism_at(finset_morphism_name(3, 3, {1, 1, 2}))));
}

TEST_CASE("iso_classes") {
  CHECK(iso_classes(discrete_category({"a", "b"})).size() == 2);
  auto subsets = subsets_category(3);
  auto classes = iso_classes(subsets);
  REQUIRE(classes.size() == 4);
  std::multiset<std::size_t> sizes;
  for (const auto& k : classes) sizes.insert(k.size());
  CHECK(sizes == std::multiset<std::size_t>{1, 3, 3, 1});
  CHECK(iso_classes(finset_category({2, 2})).size() == 1);

  auto renamed_classes = iso_classes(renamed(subsets, "r_"));
  CHECK(renamed_classes == classes);
}

TEST_CASE("zero categories and posets") {
  auto arrow = validate_category(arrow_category());
  CHECK(is_zero_category(arrow));
  CHECK(is_poset_category(arrow));
  CHECK_FALSE(is_zero_category(finset_category({2})));
  auto p = Preorder::from_pairs({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}});
  auto pc = preorder_category(p);
  CHECK(is_zero_category(pc));
  CHECK_FALSE(is_poset_category(pc));
  CHECK(has_nontrivial_isos(pc));
  CHECK(preorders_isomorphic(category_preorder(pc), p));
}

TEST_CASE("zero category without non-identity isos is exactly a poset") {
  // Exhaust all preorders on 3 elements.
  const std::vector<std::string> carrier = {"x", "y", "z"};
  std::vector<std::pair<std::string, std::string>> offdiag;
  for (auto& a : carrier)
    for (auto& b : carrier)
      if (a != b) offdiag.emplace_back(a, b);
  int preorders = 0;
  for (unsigned mask = 0; mask < (1u << offdiag.size()); ++mask) {
    std::vector<std::pair<std::string, std::string>> rel;
    for (std::size_t i = 0; i < offdiag.size(); ++i)
      if (mask & (1u << i)) rel.push_back(offdiag[i]);
    Preorder p = Preorder::from_pairs(carrier, rel);
    if (!p.is_transitive()) continue;
    ++preorders;
    auto c = preorder_category(p);
    CHECK(c.check_laws().empty());
    CHECK((is_zero_category(c) && !has_nontrivial_isos(c)) == is_poset_category(c));
    CHECK(is_poset_category(c) == p.is_antisymmetric());
  }
  CHECK(preorders == 29);
}

TEST_CASE("preorder_to_poset") {
  auto p = Preorder::from_pairs({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}});
  auto q = preorder_to_poset(p);
  CHECK(q.poset.size() == 2);
  CHECK(q.poset.is_antisymmetric());
  CHECK(q.projection[0] == q.projection[1]);
  CHECK(q.projection[0] != q.projection[2]);
  auto qq = preorder_to_poset(q.poset);
  CHECK(preorders_isomorphic(qq.poset, q.poset));

  auto total = Preorder::from_pairs({"a", "b", "c"},
                                    {{"a", "b"}, {"b", "c"}, {"c", "a"}, {"b", "a"}, {"c", "b"}, {"a", "c"}});
  CHECK(preorder_to_poset(total).poset.size() == 1);

  auto chain = Preorder::from_pairs({"0", "1"}, {{"0", "1"}});
  CHECK(preorders_isomorphic(preorder_to_poset(chain).poset, chain));
  // Quotient map is monotone.
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y)
      if (p.leq[x][y]) CHECK(q.poset.leq[q.projection[x]][q.projection[y]]);
}
