#include "univalence/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace univ {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

void expect_schema(const Json& j, const std::string& schema) {
  const auto s = schema_of(j);
  if (!s.empty() && s != schema) throw FormatError("expected schema " + schema + ", got " + s);
}

std::vector<std::string> strings(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be a list");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw FormatError(std::string(what) + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

// Entry of an action or component table: a label in `x` at c, or an index.
Index resolve(const Presheaf& x, Index c, const Json& e) {
  if (e.is_number_integer()) {
    const auto i = e.get<long long>();
    if (i < 0 || i >= x.size(c)) throw FormatError("element index out of range: " + std::to_string(i));
    return static_cast<Index>(i);
  }
  if (e.is_string()) {
    if (auto i = x.find_label(c, e.get<std::string>())) return *i;
    throw FormatError("unknown element \"" + e.get<std::string>() + "\" at " + x.base().object_name(c));
  }
  throw FormatError("element must be a label or an index");
}

Json entry(const Presheaf& x, Index c, Index i) {
  if (x.has_labels()) return x.label(c, i);
  return i;
}

Json components_to_json(const PresheafMap& m) {
  Json out = Json::object();
  const FinCat& b = m.source->base();
  for (Index c = 0; c < static_cast<Index>(b.num_objects()); ++c) {
    Json row = Json::array();
    for (Index v : m.components[c]) row.push_back(entry(*m.target, c, v));
    out[b.object_name(c)] = row;
  }
  return out;
}

PresheafMap components_from_json(const Json& j, const PresheafPtr& source, const PresheafPtr& target) {
  const FinCat& b = source->base();
  PresheafMap m{source, target, {}};
  for (Index c = 0; c < static_cast<Index>(b.num_objects()); ++c) {
    const Json& row = field(j, b.object_name(c).c_str());
    if (!row.is_array() || static_cast<Index>(row.size()) != source->size(c))
      throw FormatError("component at " + b.object_name(c) + " has the wrong length");
    std::vector<Index> comp;
    for (const auto& e : row) comp.push_back(resolve(*target, c, e));
    m.components.push_back(std::move(comp));
  }
  return validate_map(std::move(m));
}

Json square_to_json(const CartSquare& s) {
  return {{"u", components_to_json(s.u)}, {"v", components_to_json(s.v)}};
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string schema_of(const Json& j) {
  if (j.is_object() && j.contains("schema") && j.at("schema").is_string()) return j.at("schema").get<std::string>();
  return {};
}

Json fincat_to_json(const FinCat& c) {
  const RawCategory raw = c.to_raw();
  Json j{{"schema", "fincat/v1"}, {"objects", raw.objects}};
  Json ms = Json::array();
  for (const auto& m : raw.morphisms) ms.push_back({{"id", m.id}, {"src", m.src}, {"tgt", m.tgt}});
  j["morphisms"] = ms;
  j["identities"] = raw.identities;
  Json comp = Json::array();
  for (const auto& k : raw.composition) comp.push_back({{"first", k.first}, {"then", k.then}, {"result", k.result}});
  j["composition"] = comp;
  return j;
}

FinCat fincat_from_json(const Json& j) {
  expect_schema(j, "fincat/v1");
  RawCategory raw;
  raw.objects = strings(field(j, "objects"), "objects");
  for (const auto& m : field(j, "morphisms"))
    raw.morphisms.push_back({field(m, "id").get<std::string>(), field(m, "src").get<std::string>(),
                             field(m, "tgt").get<std::string>()});
  const Json& ids = field(j, "identities");
  if (!ids.is_object()) throw FormatError("identities must map objects to morphism ids");
  for (const auto& [k, v] : ids.items()) raw.identities[k] = v.get<std::string>();
  for (const auto& k : field(j, "composition"))
    raw.composition.push_back({field(k, "first").get<std::string>(), field(k, "then").get<std::string>(),
                               field(k, "result").get<std::string>()});
  return validate_category(raw);
}

Json group_to_json(const FinGroup& g) {
  Json table = Json::array();
  for (const auto& row : g.table()) {
    Json r = Json::array();
    for (Index x : row) r.push_back(g.name(x));
    table.push_back(r);
  }
  Json j{{"schema", "grp/v1"}, {"elements", g.names()}, {"table", table}};
  if (!g.label().empty()) j["label"] = g.label();
  return j;
}

FinGroup group_from_json(const Json& j) {
  expect_schema(j, "grp/v1");
  const std::string label = j.contains("label") ? j.at("label").get<std::string>() : std::string();
  if (j.contains("degree")) {
    std::vector<std::vector<int>> gens;
    for (const auto& g : field(j, "generators")) gens.push_back(g.get<std::vector<int>>());
    return permutation_group(field(j, "degree").get<int>(), gens, label);
  }
  auto names = strings(field(j, "elements"), "elements");
  const Json& t = field(j, "table");
  if (!t.is_array() || t.size() != names.size()) throw FormatError("table must have one row per element");
  std::vector<std::vector<Index>> table;
  for (const auto& row : t) {
    if (!row.is_array() || row.size() != names.size()) throw FormatError("table rows must have one entry per element");
    std::vector<Index> r;
    for (const auto& e : row) {
      if (e.is_number_integer()) {
        r.push_back(e.get<Index>());
        continue;
      }
      auto it = std::find(names.begin(), names.end(), e.get<std::string>());
      if (it == names.end()) throw FormatError("unknown element \"" + e.get<std::string>() + "\" in table");
      r.push_back(static_cast<Index>(it - names.begin()));
    }
    table.push_back(std::move(r));
  }
  return FinGroup::from_table(std::move(names), std::move(table), label);
}

Json group_hom_to_json(const GroupHom& h) {
  Json map = Json::array();
  for (Index x : h.map) map.push_back(h.target->name(x));
  return {{"schema", "grphom/v1"}, {"source", group_to_json(*h.source)}, {"target", group_to_json(*h.target)},
          {"map", map}};
}

GroupHom group_hom_from_json(const Json& j) {
  expect_schema(j, "grphom/v1");
  GroupHom h;
  h.source = std::make_shared<const FinGroup>(group_from_json(field(j, "source")));
  h.target = std::make_shared<const FinGroup>(group_from_json(field(j, "target")));
  const Json& map = field(j, "map");
  if (!map.is_array() || map.size() != h.source->order()) throw FormatError("map must list one image per element");
  for (const auto& e : map) {
    if (e.is_number_integer()) {
      h.map.push_back(e.get<Index>());
      continue;
    }
    auto x = h.target->find(e.get<std::string>());
    if (!x) throw FormatError("unknown element \"" + e.get<std::string>() + "\" in map");
    h.map.push_back(*x);
  }
  for (Index x : h.map)
    if (x < 0 || x >= static_cast<Index>(h.target->order())) throw FormatError("map image out of range");
  if (!is_homomorphism(*h.source, *h.target, h.map)) throw ValidationError({"homomorphism", describe_hom(h)});
  return h;
}

Json base_to_json(const FinCatPtr& base) {
  if (same_base(*base, *finset_base())) return "finset";
  return fincat_to_json(*base);
}

FinCatPtr base_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "finset" || s == "terminal") return finset_base();
    throw FormatError("unknown base \"" + s + "\"");
  }
  if (j.is_object() && j.contains("group")) return group_base(group_from_json(j.at("group")));
  return std::make_shared<const FinCat>(fincat_from_json(j));
}

Json presheaf_to_json(const Presheaf& x, bool with_base) {
  const FinCat& b = x.base();
  Json j{{"schema", "psh/v1"}};
  if (with_base) j["base"] = base_to_json(x.base_ptr());
  Json elems = Json::object();
  for (Index c = 0; c < static_cast<Index>(b.num_objects()); ++c) {
    if (x.has_labels()) {
      elems[b.object_name(c)] = x.labels()[c];
    } else {
      elems[b.object_name(c)] = x.size(c);
    }
  }
  j[x.has_labels() ? "elements" : "sizes"] = elems;
  Json acts = Json::object();
  for (Index f = 0; f < static_cast<Index>(b.num_morphisms()); ++f) {
    if (b.is_identity(f)) continue;
    Json row = Json::array();
    for (Index v : x.action(f)) row.push_back(entry(x, b.src(f), v));
    acts[b.morphism_name(f)] = row;
  }
  j["actions"] = acts;
  return j;
}

PresheafPtr presheaf_from_json(const Json& j, const FinCatPtr& given) {
  expect_schema(j, "psh/v1");
  FinCatPtr base = given;
  if (j.contains("base")) {
    auto own = base_from_json(j.at("base"));
    if (base && !same_base(*base, *own)) throw FormatError("presheaf base differs from the enclosing base");
    if (!base) base = own;
  }
  if (!base) throw FormatError("missing field \"base\"");
  const FinCat& b = *base;
  const auto n = static_cast<Index>(b.num_objects());
  std::vector<Index> sizes(n);
  std::vector<std::vector<std::string>> labels;
  if (j.contains("elements")) {
    const Json& e = j.at("elements");
    labels.resize(n);
    for (Index c = 0; c < n; ++c) {
      labels[c] = strings(field(e, b.object_name(c).c_str()), "elements");
      sizes[c] = static_cast<Index>(labels[c].size());
    }
  } else {
    const Json& s = field(j, "sizes");
    for (Index c = 0; c < n; ++c) {
      const Json& v = field(s, b.object_name(c).c_str());
      if (!v.is_number_integer() || v.get<long long>() < 0) throw FormatError("sizes must be non-negative integers");
      sizes[c] = v.get<Index>();
    }
  }
  Presheaf shape(base, sizes, {}, labels);
  const Json acts = j.contains("actions") ? j.at("actions") : Json::object();
  for (const auto& [k, v] : acts.items())
    if (!b.find_morphism(k)) throw FormatError("action for unknown morphism \"" + k + "\"");
  std::vector<std::vector<Index>> actions(b.num_morphisms());
  for (Index f = 0; f < static_cast<Index>(b.num_morphisms()); ++f) {
    const auto& name = b.morphism_name(f);
    if (!acts.contains(name)) {
      if (!b.is_identity(f)) throw FormatError("missing action for \"" + name + "\"");
      actions[f].resize(sizes[b.src(f)]);
      for (Index x = 0; x < sizes[b.src(f)]; ++x) actions[f][x] = x;
      continue;
    }
    const Json& row = acts.at(name);
    if (!row.is_array() || static_cast<Index>(row.size()) != sizes[b.tgt(f)])
      throw FormatError("action for \"" + name + "\" has the wrong length");
    for (const auto& e : row) actions[f].push_back(resolve(shape, b.src(f), e));
  }
  return validate_presheaf(Presheaf(base, sizes, actions, labels));
}

Json map_to_json(const PresheafMap& m) {
  return {{"schema", "pshmap/v1"},
          {"base", base_to_json(m.source->base_ptr())},
          {"source", presheaf_to_json(*m.source, false)},
          {"target", presheaf_to_json(*m.target, false)},
          {"components", components_to_json(m)}};
}

PresheafMap map_from_json(const Json& j) {
  expect_schema(j, "pshmap/v1");
  auto base = base_from_json(field(j, "base"));
  auto source = presheaf_from_json(field(j, "source"), base);
  auto target = presheaf_from_json(field(j, "target"), base);
  return components_from_json(field(j, "components"), source, target);
}

Json simplicial_to_json(const SimplicialObject& w) {
  Json j{{"schema", "simp/v1"}, {"base", base_to_json(w.levels[0]->base_ptr())}};
  Json levels = Json::array(), faces = Json::array(), degens = Json::array();
  for (const auto& l : w.levels) levels.push_back(presheaf_to_json(*l, false));
  for (int n = 1; n <= w.top(); ++n) {
    Json row = Json::array();
    for (const auto& d : w.faces[n]) row.push_back(components_to_json(d));
    faces.push_back(row);
  }
  for (int n = 0; n < w.top(); ++n) {
    Json row = Json::array();
    for (const auto& s : w.degens[n]) row.push_back(components_to_json(s));
    degens.push_back(row);
  }
  j["levels"] = levels;
  j["faces"] = faces;
  j["degeneracies"] = degens;
  return j;
}

SimplicialObject simplicial_from_json(const Json& j) {
  expect_schema(j, "simp/v1");
  if (j.contains("nerve")) {
    const int top = j.contains("top") ? j.at("top").get<int>() : 3;
    if (top < 0 || top > 3) throw FormatError("top must be between 0 and 3");
    return nerve_of_category(fincat_from_json(j.at("nerve")), top);
  }
  auto base = base_from_json(field(j, "base"));
  SimplicialObject w;
  const Json& levels = field(j, "levels");
  if (!levels.is_array() || levels.empty() || levels.size() > 4) throw FormatError("levels must hold 1 to 4 entries");
  for (const auto& l : levels) w.levels.push_back(presheaf_from_json(l, base));
  const int top = w.top();
  const Json& faces = field(j, "faces");
  const Json& degens = field(j, "degeneracies");
  if (static_cast<int>(faces.size()) != top || static_cast<int>(degens.size()) != top)
    throw FormatError("faces and degeneracies need one row per level above 0");
  w.faces.resize(top + 1);
  w.degens.resize(top);
  for (int n = 1; n <= top; ++n) {
    const Json& row = faces.at(n - 1);
    if (static_cast<int>(row.size()) != n + 1) throw FormatError("level " + std::to_string(n) + " needs n+1 faces");
    for (const auto& d : row) w.faces[n].push_back(components_from_json(d, w.levels[n], w.levels[n - 1]));
  }
  for (int n = 0; n < top; ++n) {
    const Json& row = degens.at(n);
    if (static_cast<int>(row.size()) != n + 1)
      throw FormatError("level " + std::to_string(n) + " needs n+1 degeneracies");
    for (const auto& s : row) w.degens[n].push_back(components_from_json(s, w.levels[n], w.levels[n + 1]));
  }
  auto v = validate_simplicial(w);
  if (!v.empty()) throw ValidationError(v.front());
  return w;
}

Json internal_cat_to_json(const InternalCat& ic) {
  const FinCat& b = ic.B->base();
  Json comp_pairs = Json::object(), fiber_maps = Json::object();
  for (Index c = 0; c < static_cast<Index>(b.num_objects()); ++c) {
    Json pairs = Json::array();
    for (const auto& [m1, m2] : ic.composable.pairs[c]) pairs.push_back({m1, m2});
    comp_pairs[b.object_name(c)] = pairs;
    Json fms = Json::array();
    for (const auto& fm : ic.fiber_maps[c]) fms.push_back({{"b", fm.b}, {"b2", fm.b2}, {"img", fm.img}});
    fiber_maps[b.object_name(c)] = fms;
  }
  return {{"schema", "ic/v1"},
          {"morphism", map_to_json(ic.p)},
          {"B", presheaf_to_json(*ic.B, false)},
          {"M", presheaf_to_json(*ic.M, false)},
          {"s", components_to_json(ic.s)},
          {"t", components_to_json(ic.t)},
          {"id", components_to_json(ic.id_map)},
          {"composable", comp_pairs},
          {"comp", components_to_json(ic.comp)},
          {"fiber_maps", fiber_maps}};
}

Json segal_verdict_to_json(const SegalVerdict& v, const std::vector<std::size_t>& sizes) {
  Json j{{"schema", "verdict/v1"}, {"check", "segal"}, {"pass", v.pass}, {"sizes", sizes}, {"checked", v.checked}};
  if (!v.pass)
    j["witness"] = {{"level", v.level}, {"object", v.object}, {"spine", v.spine}, {"preimages", v.preimages}};
  return j;
}

Json complete_verdict_to_json(const CompletenessVerdict& v, const std::vector<std::size_t>& sizes) {
  Json j{{"schema", "verdict/v1"}, {"check", "complete"}, {"pass", v.complete}, {"sizes", sizes}};
  if (v.square) j["square_sizes"] = v.square->sizes();
  if (!v.complete && v.witness != kNone)
    j["witness"] = {{"object", v.object}, {"element", v.witness}, {"cell", v.witness_cell}};
  return j;
}

Json univalence_verdict_to_json(const UnivalenceVerdict& v) {
  Json j{{"schema", "uverdict/v1"}, {"morphism", map_to_json(v.p)}};
  const bool decided = v.complete.outcome == Outcome::pass || v.complete.outcome == Outcome::fail;
  j["univalent"] = decided ? Json(v.univalent()) : Json(nullptr);
  Json brute{{"outcome", to_string(v.brute.outcome)},
             {"family_bound", v.brute.family_bound},
             {"objects_tested", v.brute.objects_tested},
             {"objects_skipped", v.brute.objects_skipped},
             {"maps_tested", v.brute.maps_tested}};
  if (v.brute.witness)
    brute["witness"] = {{"q", map_to_json(v.brute.witness->q)},
                        {"first", square_to_json(v.brute.witness->first)},
                        {"second", square_to_json(v.brute.witness->second)}};
  j["bruteforce"] = brute;
  Json complete{{"outcome", to_string(v.complete.outcome)}};
  if (decided) {
    complete["sizes"] = v.complete.sizes;
    if (v.complete.detail.square) complete["square_sizes"] = v.complete.detail.square->sizes();
    if (v.complete.detail.witness != kNone)
      complete["witness"] = {{"object", v.complete.detail.object}, {"element", v.complete.detail.witness}};
  }
  j["completeness"] = complete;
  Json omega{{"outcome", to_string(v.omega.outcome)}};
  if (v.omega.chi) omega["chi"] = components_to_json(*v.omega.chi);
  if (v.omega.outcome == Outcome::fail)
    omega["witness"] = {{"object", v.omega.object}, {"first", v.omega.first}, {"second", v.omega.second}};
  j["omega"] = omega;
  if (v.fibers) j["fibers"] = {{"pass", v.fibers->pass}, {"sizes", v.fibers->fiber_sizes}, {"reason", v.fibers->reason}};
  j["disagreements"] = v.disagreements;
  return j;
}

Json univ_poset_to_json(const UnivPoset& p, const std::string& ambient, std::size_t bound) {
  Json elems = Json::array();
  for (std::size_t i = 0; i < p.elements.size(); ++i)
    elems.push_back({{"name", p.names[i]}, {"morphism", map_to_json(p.elements[i])}});
  Json leq = Json::array(), joins = Json::array(), hasse = Json::array();
  const auto n = static_cast<Index>(p.elements.size());
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      if (p.order.leq[a][b]) leq.push_back({a, b});
      if (a < b && p.joins[a][b] != kNone) joins.push_back({a, b, p.joins[a][b]});
    }
  for (auto [a, b] : p.hasse()) hasse.push_back({a, b});
  Json multiple = Json::array();
  for (auto [a, b] : p.multiple_squares) multiple.push_back({a, b});
  return {{"schema", "univposet/v1"}, {"ambient", ambient}, {"bound", bound}, {"candidates", p.candidates},
          {"elements", elems}, {"leq", leq}, {"hasse", hasse}, {"joins", joins}, {"multiple_squares", multiple}};
}

}  // namespace univ
