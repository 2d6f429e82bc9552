#include <filesystem>

#include "doctest.h"
#include "fixtures.hpp"
#include "univalence/io.hpp"
#include "univalence/reproduce.hpp"

using namespace univ;

namespace {

bool same_presheaf(const Presheaf& a, const Presheaf& b) {
  return same_base(a.base(), b.base()) && a.sizes() == b.sizes() && a.actions() == b.actions();
}

Json arrow_json() {
  return Json::parse(R"({
    "schema": "fincat/v1",
    "objects": ["a", "b"],
    "morphisms": [{"id": "1a", "src": "a", "tgt": "a"}, {"id": "1b", "src": "b", "tgt": "b"},
                  {"id": "f", "src": "a", "tgt": "b"}],
    "identities": {"a": "1a", "b": "1b"},
    "composition": [{"first": "1a", "then": "1a", "result": "1a"}, {"first": "1b", "then": "1b", "result": "1b"},
                    {"first": "1a", "then": "f", "result": "f"}, {"first": "f", "then": "1b", "result": "f"}]
  })");
}

}  // namespace

TEST_CASE("fincat documents round trip") {
  for (const auto& b : {fx::arrow_base(), fx::idempotent_base(), fx::bz2(), fx::bs3()}) {
    auto back = fincat_from_json(Json::parse(fincat_to_json(*b).dump()));
    CHECK(same_base(back, *b));
  }
  auto c = fincat_from_json(arrow_json());
  CHECK(c.num_objects() == 2);
  CHECK(c.num_morphisms() == 3);

  auto dup = arrow_json();
  dup["morphisms"][2]["id"] = "1a";
  CHECK_THROWS_AS(fincat_from_json(dup), ValidationError);
  auto bad_comp = arrow_json();
  bad_comp["composition"].erase(3);
  CHECK_THROWS_AS(fincat_from_json(bad_comp), ValidationError);
  auto wrong = arrow_json();
  wrong["schema"] = "grp/v1";
  CHECK_THROWS_AS(fincat_from_json(wrong), FormatError);
  CHECK_THROWS_AS(fincat_from_json(Json::parse(R"({"objects": []})")), FormatError);
}

TEST_CASE("group documents round trip") {
  for (const auto& g : {fx::z2(), fx::s3(), quaternion_group(), dihedral_group(4)}) {
    auto back = group_from_json(group_to_json(g));
    CHECK(back.table() == g.table());
    CHECK(back.label() == g.label());
  }
  auto s3 = group_from_json(Json::parse(R"({"schema": "grp/v1", "degree": 3, "generators": [[2, 1, 3], [2, 3, 1]]})"));
  CHECK(s3.order() == 6);
  CHECK(isomorphic(s3, fx::s3()));
  auto z2 = group_from_json(Json::parse(R"({"elements": ["e", "x"], "table": [["e", "x"], ["x", "e"]]})"));
  CHECK(isomorphic(z2, fx::z2()));
  CHECK_THROWS(group_from_json(Json::parse(R"({"elements": ["e", "x"], "table": [["e", "x"], ["x", "x"]]})")));

  for (const auto& h : homomorphisms(fx::s3(), fx::z2())) {
    GroupHom gh{std::make_shared<const FinGroup>(fx::s3()), std::make_shared<const FinGroup>(fx::z2()), h};
    auto back = group_hom_from_json(group_hom_to_json(gh));
    CHECK(back.map == gh.map);
  }
  auto bad = group_hom_to_json(GroupHom{std::make_shared<const FinGroup>(fx::z2()),
                                        std::make_shared<const FinGroup>(fx::z2()), {0, 1}});
  bad["map"] = Json::array({"1", "1"});
  CHECK_THROWS_AS(group_hom_from_json(bad), ValidationError);
}

TEST_CASE("presheaf and map documents round trip") {
  for (const auto& x : fx::small_objects(3)) {
    auto back = presheaf_from_json(Json::parse(presheaf_to_json(*x).dump()));
    CHECK(same_presheaf(*back, *x));
  }
  for (const auto& m : fx::small_maps(2)) {
    auto back = map_from_json(map_to_json(m));
    CHECK(back == m);
    CHECK(same_presheaf(*back.source, *m.source));
    CHECK(same_presheaf(*back.target, *m.target));
  }
  auto om = subobject_classifier(fx::arrow_base());
  auto back = presheaf_from_json(presheaf_to_json(*om.omega));
  CHECK(same_presheaf(*back, *om.omega));

  // labelled elements, identity actions left out
  auto y = presheaf_from_json(Json::parse(R"({
    "schema": "psh/v1", "base": "finset", "elements": {"*": ["p", "q"]}, "actions": {}
  })"));
  CHECK(y->size(0) == 2);
  CHECK(y->label(0, 1) == "q");

  CHECK_THROWS_AS(presheaf_from_json(Json::parse(R"({"schema": "psh/v1", "sizes": {"*": 1}})")), FormatError);
  auto arrow = presheaf_from_json(Json::parse(R"({"schema": "psh/v1", "base": )" + arrow_json().dump() +
                                              R"(, "sizes": {"a": 1, "b": 2}, "actions": {"f": [0, 0]}})"));
  CHECK(arrow->total_size() == 3);
  CHECK_THROWS_AS(presheaf_from_json(Json::parse(R"({"schema": "psh/v1", "base": )" + arrow_json().dump() +
                                                 R"(, "sizes": {"a": 1, "b": 2}, "actions": {}})")),
                  FormatError);
  CHECK_THROWS_AS(presheaf_from_json(Json::parse(R"({"schema": "psh/v1", "base": )" + arrow_json().dump() +
                                                 R"(, "sizes": {"a": 1, "b": 2}, "actions": {"f": [0, 3]}})")),
                  FormatError);
  CHECK_THROWS_AS(presheaf_from_json(Json::parse(R"({"schema": "psh/v1", "base": )" + arrow_json().dump() +
                                                 R"(, "sizes": {"a": 1, "b": 2}, "actions": {"g": [0, 0], "f": [0, 0]}})")),
                  FormatError);
}

TEST_CASE("simplicial documents round trip") {
  auto w = nerve_of_category(*fx::arrow_base(), 2);
  auto back = simplicial_from_json(Json::parse(simplicial_to_json(w).dump()));
  CHECK(back.sizes() == w.sizes());
  CHECK(simplicial_report(back).empty());
  auto short_form = simplicial_from_json(Json{{"schema", "simp/v1"}, {"nerve", arrow_json()}, {"top", 3}});
  CHECK(short_form.sizes() == std::vector<std::size_t>{2, 3, 4, 5});
  auto broken = simplicial_to_json(w);
  std::swap(broken["faces"][0][0], broken["faces"][0][1]);
  CHECK_THROWS(simplicial_from_json(broken));
}

TEST_CASE("files on disk") {
  const auto path = std::filesystem::temp_directory_path() / "univ_test_io.json";
  write_json_file(path.string(), fincat_to_json(*fx::bz2()));
  CHECK(schema_of(read_json_file(path.string())) == "fincat/v1");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_json_file(path.string()), FormatError);
}

TEST_CASE("verdict documents") {
  auto p = finset_map(1, 2, {1});
  auto v = univalence_verdict_to_json(check_univalence(p, {}));
  CHECK(v["schema"] == "uverdict/v1");
  CHECK(v["univalent"] == true);
  auto f = univalence_verdict_to_json(check_univalence(to_terminal(finset(2)), {}));
  CHECK(f["univalent"] == false);
  CHECK(f["bruteforce"]["witness"].is_object());
}

TEST_CASE("reproduction targets") {
  CHECK(reproduce("set-table").match);
  CHECK(reproduce("hackney").match);
  auto s3 = reproduce("s3");
  CHECK(s3.match);
  CHECK(s3.detail["matches_claim"] == false);
  CHECK(reproduce("complete-groups").match);
  CHECK_THROWS_AS(reproduce("nope"), FormatError);
  auto j = repro_to_json(reproduce("set-table"));
  CHECK(j["schema"] == "repro/v1");
  CHECK_FALSE(j.contains("seconds"));
}

TEST_CASE("group table survivors") {
  auto t = grp_table(4, 2);
  std::vector<std::string> surv;
  for (Index i : t.survivors) surv.push_back(t.candidates[i].name);
  CHECK(surv == std::vector<std::string>{"1 -> 1 {e->e}", "1 -> Z/2 {e->0}"});
  // the two lemma maps on Z/2 are refuted by cartesian squares in the catalog
  CHECK(t.missing.size() == 2);
  CHECK(t.unexpected.empty());
  for (const auto& c : t.candidates)
    if (c.refuted) {
      const bool same = c.refutation.first.u == c.refutation.second.u && c.refutation.first.v == c.refutation.second.v;
      CHECK_FALSE(same);
    }
}
