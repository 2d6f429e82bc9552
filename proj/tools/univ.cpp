#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "univalence/io.hpp"
#include "univalence/reproduce.hpp"

using namespace univ;

namespace {

// Exit codes: 0 pass / univalent, 1 negative verdict, 2 error or not applicable.
constexpr int kPass = 0, kNegative = 1, kError = 2;

struct Globals {
  bool json = false;
  std::string out;
  std::size_t bound = 3;
  std::size_t family_bound = 12;
  int catalog_order = 8;
  std::size_t budget = 128;
  std::size_t hom_budget = 4096;
};

Globals g;

void emit(const Json& j, const std::string& human) {
  if (!g.out.empty()) write_json_file(g.out, j);
  if (g.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << human;
}

int outcome_code(Outcome o) {
  switch (o) {
    case Outcome::pass: return kPass;
    case Outcome::fail: return kNegative;
    default: return kError;
  }
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

template <class T>
std::string list(const std::vector<T>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? " " : "") << xs[i];
  return os.str();
}

FinGroupPtr shared(FinGroup g) { return std::make_shared<const FinGroup>(std::move(g)); }

// Hasse-style adjacency list: every element followed by its covers.
std::string hasse_lines(const std::vector<std::string>& names, const std::vector<std::pair<Index, Index>>& covers) {
  std::ostringstream os;
  for (std::size_t a = 0; a < names.size(); ++a) {
    std::vector<std::string> up;
    for (auto [x, y] : covers)
      if (x == static_cast<Index>(a)) up.push_back(names[y]);
    os << "  " << names[a] << (up.empty() ? "" : " < " + join(up)) << "\n";
  }
  return os.str();
}

std::string describe_category(const FinCat& c) {
  std::ostringstream os;
  os << "category: " << c.num_objects() << " objects, " << c.num_morphisms() << " morphisms\n";
  os << "  objects: " << join(c.object_names()) << "\n";
  for (Index f = 0; f < static_cast<Index>(c.num_morphisms()); ++f)
    os << "  " << c.morphism_name(f) << ": " << c.object_name(c.src(f)) << " -> " << c.object_name(c.tgt(f))
       << (c.is_identity(f) ? " (identity)" : "") << "\n";
  return os.str();
}

std::string describe_group(const FinGroup& gr) {
  std::ostringstream os;
  os << "group " << (gr.label().empty() ? "G" : gr.label()) << " of order " << gr.order()
     << (gr.is_abelian() ? ", abelian" : "") << "\n  elements: " << join(gr.names()) << "\n";
  return os.str();
}

std::string describe_simplicial(const SimplicialObject& w) {
  std::ostringstream os;
  os << "simplicial object truncated at level " << w.top() << "\n";
  for (int n = 0; n <= w.top(); ++n) os << "  W" << n << ": " << describe(*w.levels[n]) << "\n";
  return os.str();
}

// validate / show

struct Loaded {
  std::string kind;
  std::string human;
  Json normalized;
};

Loaded load_any(const std::string& path) {
  const Json j = read_json_file(path);
  const std::string s = schema_of(j);
  if (s == "fincat/v1") {
    auto c = fincat_from_json(j);
    return {s, describe_category(c), fincat_to_json(c)};
  }
  if (s == "grp/v1") {
    auto gr = group_from_json(j);
    return {s, describe_group(gr), group_to_json(gr)};
  }
  if (s == "grphom/v1") {
    auto h = group_hom_from_json(j);
    return {s, "group homomorphism " + describe_hom(h) + "\n", group_hom_to_json(h)};
  }
  if (s == "psh/v1") {
    auto x = presheaf_from_json(j);
    return {s, "presheaf " + describe(*x) + "\n", presheaf_to_json(*x)};
  }
  if (s == "pshmap/v1") {
    auto m = map_from_json(j);
    return {s, "map " + describe(m) + "\n", map_to_json(m)};
  }
  if (s == "simp/v1") {
    auto w = simplicial_from_json(j);
    return {s, describe_simplicial(w), simplicial_to_json(w)};
  }
  throw FormatError(s.empty() ? "missing field \"schema\"" : "unsupported schema " + s);
}

int cmd_validate(const std::string& path) {
  auto l = load_any(path);
  Json j{{"schema", "validation/v1"}, {"file", path}, {"kind", l.kind}, {"valid", true}};
  emit(j, "valid " + l.kind + "\n" + l.human);
  return kPass;
}

int cmd_show(const std::string& path) {
  auto l = load_any(path);
  emit(l.normalized, l.human);
  return kPass;
}

// univalence

std::vector<PresheafPtr> check_corpus(const PresheafMap& p, std::size_t bound) {
  std::vector<PresheafPtr> out;
  if (same_base(p.source->base(), *finset_base()))
    for (Index n = 0; n <= static_cast<Index>(bound); ++n) out.push_back(finset(n));
  return out;
}

int cmd_univalence_check(const std::string& path, const std::string& method) {
  auto p = map_from_json(read_json_file(path));
  UnivalenceOptions opts;
  opts.brute = method == "all" || method == "brute";
  opts.complete = method == "all" || method == "complete";
  opts.omega = method == "all" || method == "omega";
  opts.brute_opts.family_bound = g.family_bound;
  opts.brute_opts.hom_budget = g.hom_budget;
  if (opts.brute) opts.corpus = check_corpus(p, g.family_bound);
  auto v = check_univalence(p, opts);

  std::ostringstream os;
  os << "morphism: " << describe(p) << "\n";
  if (opts.brute) {
    os << "brute force: " << to_string(v.brute.outcome) << " (" << v.brute.objects_tested << " objects, "
       << v.brute.maps_tested << " maps";
    if (v.brute.objects_skipped) os << ", " << v.brute.objects_skipped << " skipped";
    os << ")\n";
    if (v.brute.witness) os << "  two cartesian squares from " << describe(v.brute.witness->q) << "\n";
  }
  if (opts.complete) {
    os << "completeness: " << to_string(v.complete.outcome) << "\n";
    std::vector<std::string> sizes;
    for (auto s : v.complete.sizes) sizes.push_back(std::to_string(s));
    if (!sizes.empty()) os << "  n(p) sizes: " << join(sizes, " ") << "\n";
  }
  if (opts.omega) os << "classifying map: " << to_string(v.omega.outcome) << "\n";
  if (v.fibers)
    os << "fiber criterion: " << (v.fibers->pass ? "pass" : "fail")
       << (v.fibers->reason.empty() ? "" : " (" + v.fibers->reason + ")") << "\n";
  for (const auto& d : v.disagreements) os << "disagreement: " << d << "\n";

  int code;
  if (method == "brute")
    code = outcome_code(v.brute.outcome);
  else if (method == "omega")
    code = outcome_code(v.omega.outcome);
  else
    code = outcome_code(v.complete.outcome);
  if (method != "brute" && method != "omega")
    os << "verdict: " << (code == kPass ? "univalent" : code == kNegative ? "not univalent" : "undecided") << "\n";
  emit(univalence_verdict_to_json(v), os.str());
  return code;
}

Ambient parse_ambient(const std::string& spec) {
  if (spec == "finset") return finset_ambient();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw FormatError("unknown ambient \"" + spec + "\"");
  const std::string kind = spec.substr(0, colon), file = spec.substr(colon + 1);
  if (kind == "gset") {
    auto gr = group_from_json(read_json_file(file));
    return gset_ambient(gr, gr.label().empty() ? "G" : gr.label());
  }
  if (kind == "presheaf") {
    auto c = std::make_shared<const FinCat>(fincat_from_json(read_json_file(file)));
    return presheaf_ambient(c, std::filesystem::path(file).stem().string());
  }
  throw FormatError("unknown ambient \"" + spec + "\"");
}

int cmd_univalence_enumerate(const std::string& ambient) {
  auto a = parse_ambient(ambient);
  auto poset = enumerate_univ(a, g.bound);
  std::ostringstream os;
  os << poset.elements.size() << " univalent morphisms among " << poset.candidates << " candidates in " << a.name
     << " (total size <= " << g.bound << ")\n";
  os << hasse_lines(poset.names, poset.hasse());
  for (auto [x, y] : poset.multiple_squares)
    os << "warning: several squares " << poset.names[x] << " -> " << poset.names[y] << "\n";
  emit(univ_poset_to_json(poset, ambient, g.bound), os.str());
  return kPass;
}

// segal

std::string segal_human(const std::string& check, bool pass, const std::vector<std::size_t>& sizes) {
  return check + ": " + (pass ? "pass" : "fail") + " (sizes " + list(sizes) + ")\n";
}

int cmd_segal_check(const std::string& path) {
  auto w = simplicial_from_json(read_json_file(path));
  auto v = check_segal(w);
  std::string human = segal_human("segal", v.pass, w.sizes());
  if (!v.pass)
    human += "  level " + std::to_string(v.level) + " spine " + std::to_string(v.spine) + " has " +
             std::to_string(v.preimages.size()) + " preimages\n";
  emit(segal_verdict_to_json(v, w.sizes()), human);
  return v.pass ? kPass : kNegative;
}

int cmd_segal_complete(const std::string& path) {
  auto w = simplicial_from_json(read_json_file(path));
  if (w.top() < 3) throw FormatError("completeness needs levels up to 3");
  auto seg = check_segal(w);
  if (!seg.pass) {
    Json j = segal_verdict_to_json(seg, w.sizes());
    j["check"] = "complete";
    j["reason"] = "not a Segal object";
    emit(j, "complete: fail (not a Segal object)\n");
    return kNegative;
  }
  auto v = check_complete(w);
  std::string human = segal_human("complete", v.complete, w.sizes());
  if (v.square) human += "  square sizes " + list(v.square->sizes()) + "\n";
  emit(complete_verdict_to_json(v, w.sizes()), human);
  return v.complete ? kPass : kNegative;
}

int cmd_segal_hquotient(const std::string& path) {
  auto w = simplicial_from_json(read_json_file(path));
  auto h = h_completion(w);
  auto v = check_segal(h.h);
  Json j = segal_verdict_to_json(v, h.h.sizes());
  j["check"] = "h-quotient";
  j["source_sizes"] = w.sizes();
  j["classes"] = h.class_of;
  std::string human = segal_human("h-quotient segal", v.pass, h.h.sizes());
  human += "  source sizes " + list(w.sizes()) + "\n";
  if (!v.pass) human += "  level " + std::to_string(v.level) + " classes " + list(v.preimages) + " share a spine\n";
  emit(j, human);
  return v.pass ? kPass : kNegative;
}

// internal

int cmd_internal_build(const std::string& path) {
  auto p = map_from_json(read_json_file(path));
  auto ic = build_internal_cat(p);
  auto report = internal_cat_report(ic);
  std::ostringstream os;
  os << "internal category of " << describe(p) << "\n";
  os << "  B: " << describe(*ic.B) << "\n  M: " << describe(*ic.M) << "\n  composable: " << describe(*ic.composable.obj)
     << "\n";
  for (const auto& v : report) os << "  violation: " << v.law << ": " << v.witness << "\n";
  if (report.empty()) os << "  category laws hold\n";
  emit(internal_cat_to_json(ic), os.str());
  return report.empty() ? kPass : kNegative;
}

// group

int cmd_group_analyze(const std::string& path) {
  auto gr = group_from_json(read_json_file(path));
  auto cert = is_complete(gr, g.budget);
  auto eq = eq_bg(gr, g.budget);
  Json j{{"schema", "grpreport/v1"},
         {"label", gr.label()},
         {"order", gr.order()},
         {"abelian", gr.is_abelian()},
         {"center", cert.center_order},
         {"inner", cert.inner_order},
         {"out", cert.out_order},
         {"aut", cert.aut_order},
         {"theta_injective", cert.theta_injective},
         {"theta_surjective", cert.theta_surjective},
         {"complete", cert.complete()},
         {"routes_agree", cert.routes_agree()},
         {"pi0", eq.pi0.order()},
         {"pi1", eq.pi1.order()},
         {"pi0_matches_out", eq.pi0_matches_out},
         {"pi1_matches_center", eq.pi1_matches_center},
         {"contractible", eq.contractible()}};
  std::ostringstream os;
  os << describe_group(gr) << "  |Z| " << cert.center_order << ", |Inn| " << cert.inner_order << ", |Out| "
     << cert.out_order << ", |Aut| " << cert.aut_order << "\n  complete: " << (cert.complete() ? "yes" : "no")
     << "\n  Eq(BG): pi0 of order " << eq.pi0.order() << ", pi1 of order " << eq.pi1.order() << "\n";
  emit(j, os.str());
  return kPass;
}

int cmd_group_tower(const std::string& path, int max_steps) {
  auto gr = group_from_json(read_json_file(path));
  auto t = automorphism_tower(gr, max_steps, g.budget);
  Json stages = Json::array();
  std::ostringstream os;
  os << "automorphism tower of " << (gr.label().empty() ? "G" : gr.label()) << "\n";
  for (std::size_t i = 0; i < t.stages.size(); ++i) {
    Json s{{"order", t.stages[i].order()}, {"label", t.stages[i].label()}};
    if (i < t.theta_injective.size()) s["theta_injective"] = static_cast<bool>(t.theta_injective[i]);
    stages.push_back(s);
    os << "  stage " << i << ": order " << t.stages[i].order()
       << (t.stages[i].label().empty() ? "" : " (" + t.stages[i].label() + ")") << "\n";
  }
  os << (t.stabilized ? "  stabilized" : "  not stabilized") << " after " << t.steps << " steps\n";
  emit({{"schema", "tower/v1"}, {"stages", stages}, {"stabilized", t.stabilized}, {"steps", t.steps}}, os.str());
  return kPass;
}

int cmd_group_refute(const std::string& path) {
  auto h = group_hom_from_json(read_json_file(path));
  std::vector<FinGroupPtr> catalog;
  for (auto& gr : small_groups(g.catalog_order)) catalog.push_back(shared(std::move(gr)));
  auto r = grp_univalence_refute(h, catalog);
  Json j{{"schema", "grprefute/v1"},
         {"hom", describe_hom(h)},
         {"refuted", r.refuted},
         {"catalog_order", g.catalog_order},
         {"catalog_size", r.catalog_size},
         {"homs_tested", r.homs_tested}};
  std::ostringstream os;
  os << describe_hom(h) << ": " << (r.refuted ? "refuted" : "survives") << " (catalog of order <= "
     << g.catalog_order << ", " << r.homs_tested << " homomorphisms tested)\n";
  if (r.refuted) {
    j["witness"] = {{"q", group_hom_to_json(r.witness_q)},
                    {"first", {{"u", r.first.u}, {"v", r.first.v}}},
                    {"second", {{"u", r.second.u}, {"v", r.second.v}}}};
    os << "  two cartesian squares from " << describe_hom(r.witness_q) << "\n";
  }
  emit(j, os.str());
  return r.refuted ? kNegative : kPass;
}

// reproduce

int cmd_reproduce(const std::string& target) {
  std::vector<std::string> targets = target == "all" ? reproduce_targets() : std::vector<std::string>{target};
  Json reports = Json::array();
  std::ostringstream os;
  bool all_match = true;
  for (const auto& t : targets) {
    auto r = reproduce(t);
    all_match = all_match && r.match;
    reports.push_back(repro_to_json(r));
    os << t << ": " << (r.match ? "match" : "MISMATCH") << "\n";
    if (!r.match) os << "  - expected: " << r.expected << "\n  + computed: " << r.computed << "\n";
  }
  Json j = targets.size() == 1 ? reports[0] : Json{{"schema", "reprosuite/v1"}, {"reports", reports}};
  emit(j, os.str());
  return all_match ? kPass : kNegative;
}

// fixtures

int cmd_fixtures(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto put = [&](const std::string& name, const Json& j) {
    write_json_file((fs::path(dir) / name).string(), j);
    written.push_back(name);
  };

  auto omega = subobject_classifier(finset_base());
  put("true.pshmap", map_to_json(omega.true_map));
  put("fold.pshmap", map_to_json(to_terminal(finset(2))));
  put("point.pshmap", map_to_json(finset_map(1, 2, {0})));

  auto poset = preorder_category(Preorder::from_pairs({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}));
  put("poset.fincat", fincat_to_json(poset));
  put("nerve_poset.json", Json{{"schema", "simp/v1"}, {"nerve", fincat_to_json(poset)}, {"top", 3}});
  auto z2 = cyclic_group(2);
  auto bz2 = group_base(z2);
  put("bz2.fincat", fincat_to_json(*bz2));
  put("nerve_bz2.json", simplicial_to_json(nerve_of_category(*bz2, 3)));

  put("s3.grp", group_to_json(symmetric_group(3)));
  put("z2.grp", group_to_json(z2));
  put("d4.grp", group_to_json(dihedral_group(4)));
  put("q8.grp", group_to_json(quaternion_group()));
  auto one = shared(trivial_group()), two = shared(z2);
  put("z2_to_1.grphom", group_hom_to_json(GroupHom{two, one, {0, 0}}));
  put("1_to_z2.grphom", group_hom_to_json(GroupHom{one, two, {0}}));

  auto s3 = symmetric_group(3);
  auto bs3 = group_base(s3);
  put("s3_point.pshmap", map_to_json(to_terminal(natural_gset(bs3, s3))));
  put("regular_z2.psh", presheaf_to_json(*regular_gset(bz2, z2)));

  emit({{"schema", "fixtures/v1"}, {"dir", dir}, {"files", written}}, "wrote " + join(written) + "\n");
  return kPass;
}

Json error_json(const std::string& kind, const std::string& law, const std::string& witness) {
  return {{"schema", "error/v1"}, {"error", kind}, {"law", law}, {"witness", witness}};
}

int fail(const std::string& kind, const std::string& law, const std::string& witness = {}) {
  std::cerr << "error: " << law << (witness.empty() ? "" : ": " + witness) << "\n";
  if (g.json) std::cout << error_json(kind, law, witness).dump(2) << "\n";
  return kError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Univalent morphisms in finite presheaf toposes"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--out", g.out, "Also write the JSON result to FILE");

  std::string file, method = "all", ambient = "finset", target, dir;
  int max_steps = 4;
  std::function<int()> run;

  auto* validate = app.add_subcommand("validate", "Load and validate a file");
  validate->add_option("file", file)->required();
  validate->callback([&] { run = [&] { return cmd_validate(file); }; });

  auto* show = app.add_subcommand("show", "Print a file in normalized form");
  show->add_option("file", file)->required();
  show->callback([&] { run = [&] { return cmd_show(file); }; });

  auto* uni = app.add_subcommand("univalence", "Univalence checks");
  uni->require_subcommand(1);
  auto* check = uni->add_subcommand("check", "Decide univalence of a morphism");
  check->add_option("--morphism", file, "pshmap/v1 file")->required();
  check->add_option("--family-bound", g.family_bound, "Total size bound of the brute-force family");
  check->add_option("--budget", g.hom_budget, "Skip family objects with more homs than this");
  check->add_option("--method", method)->check(CLI::IsMember({"all", "brute", "complete", "omega"}));
  check->callback([&] { run = [&] { return cmd_univalence_check(file, method); }; });
  auto* enumerate = uni->add_subcommand("enumerate", "Enumerate univalent morphisms up to a size bound");
  enumerate->add_option("--ambient", ambient, "finset, gset:<grp file> or presheaf:<fincat file>");
  enumerate->add_option("--bound", g.bound, "Total size bound of E and B");
  enumerate->callback([&] { run = [&] { return cmd_univalence_enumerate(ambient); }; });

  auto* segal = app.add_subcommand("segal", "Segal objects");
  segal->require_subcommand(1);
  auto* scheck = segal->add_subcommand("check", "Segal condition");
  scheck->add_option("--in", file)->required();
  scheck->callback([&] { run = [&] { return cmd_segal_check(file); }; });
  auto* scomplete = segal->add_subcommand("complete", "Completeness of a Segal object");
  scomplete->add_option("--in", file)->required();
  scomplete->callback([&] { run = [&] { return cmd_segal_complete(file); }; });
  auto* shq = segal->add_subcommand("h-quotient", "Quotient of a Segal set by the iso relation");
  shq->add_option("--in", file)->required();
  shq->callback([&] { run = [&] { return cmd_segal_hquotient(file); }; });

  auto* internal = app.add_subcommand("internal", "Internal categories");
  internal->require_subcommand(1);
  auto* build = internal->add_subcommand("build", "Internal category of a morphism");
  build->add_option("--morphism", file)->required();
  build->callback([&] { run = [&] { return cmd_internal_build(file); }; });

  auto* group = app.add_subcommand("group", "Finite groups");
  group->require_subcommand(1);
  auto* analyze = group->add_subcommand("analyze", "Center, Aut, Out and completeness");
  analyze->add_option("file", file)->required();
  analyze->add_option("--budget", g.budget, "Largest group order for Aut");
  analyze->callback([&] { run = [&] { return cmd_group_analyze(file); }; });
  auto* tower = group->add_subcommand("tower", "Automorphism tower");
  tower->add_option("file", file)->required();
  tower->add_option("--max-steps", max_steps);
  tower->add_option("--budget", g.budget, "Largest group order for Aut");
  tower->callback([&] { run = [&] { return cmd_group_tower(file, max_steps); }; });
  auto* refute = group->add_subcommand("refute", "Search for two cartesian squares into a homomorphism");
  refute->add_option("file", file, "grphom/v1 file")->required();
  refute->add_option("--catalog-order", g.catalog_order, "Catalog of groups up to this order");
  refute->callback([&] { run = [&] { return cmd_group_refute(file); }; });

  auto* repro = app.add_subcommand("reproduce", "Regenerate a reference table or example");
  repro->add_option("target", target, "set-table, grp-table, s3, hackney, complete-groups or all")->required();
  repro->callback([&] { run = [&] { return cmd_reproduce(target); }; });

  auto* fixtures = app.add_subcommand("fixtures", "Write sample input files");
  fixtures->add_option("--out", dir)->required();
  fixtures->callback([&] { run = [&] { return cmd_fixtures(dir); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kError;
  }
  if (!run) return kError;
  try {
    return run();
  } catch (const ValidationError& e) {
    return fail("validation", e.violation().law, e.violation().witness);
  } catch (const FormatError& e) {
    return fail("format", e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail("format", e.what());
  } catch (const UnknownIdError& e) {
    return fail("format", e.what());
  } catch (const NotSegal& e) {
    return fail("not-applicable", e.what());
  } catch (const BudgetExceeded& e) {
    return fail("budget", e.what());
  } catch (const std::exception& e) {
    return fail("error", e.what());
  }
}
