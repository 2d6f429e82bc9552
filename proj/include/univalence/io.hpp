#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "univalence/corpus.hpp"
#include "univalence/groups.hpp"
#include "univalence/internal.hpp"
#include "univalence/presheaf.hpp"
#include "univalence/segal.hpp"
#include "univalence/univalence.hpp"

namespace univ {

using Json = nlohmann::json;

/// Malformed document: wrong schema tag, missing field, unknown id.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
/// The "schema" field, or "" if absent.
std::string schema_of(const Json& j);

// fincat/v1
Json fincat_to_json(const FinCat& c);
FinCat fincat_from_json(const Json& j);

// grp/v1: {elements, table} or the shorthand {degree, generators}.
Json group_to_json(const FinGroup& g);
FinGroup group_from_json(const Json& j);

// grphom/v1: {source, target, map}, map listing element names.
Json group_hom_to_json(const GroupHom& h);
GroupHom group_hom_from_json(const Json& j);

/// A base category reference: "finset", "terminal", {"group": grp/v1} or an inline fincat/v1.
Json base_to_json(const FinCatPtr& base);
FinCatPtr base_from_json(const Json& j);

// psh/v1. Elements are either labelled ("elements") or counted ("sizes"); action entries are
// element labels or indices. Identity actions may be omitted.
Json presheaf_to_json(const Presheaf& x, bool with_base = true);
PresheafPtr presheaf_from_json(const Json& j, const FinCatPtr& base = nullptr);

// pshmap/v1 with a shared base for source and target.
Json map_to_json(const PresheafMap& m);
PresheafMap map_from_json(const Json& j);

// simp/v1: full tables, or {"nerve": fincat/v1, "top": n}.
Json simplicial_to_json(const SimplicialObject& w);
SimplicialObject simplicial_from_json(const Json& j);

// ic/v1
Json internal_cat_to_json(const InternalCat& ic);

// verdict/v1
Json segal_verdict_to_json(const SegalVerdict& v, const std::vector<std::size_t>& sizes);
Json complete_verdict_to_json(const CompletenessVerdict& v, const std::vector<std::size_t>& sizes);

// uverdict/v1
Json univalence_verdict_to_json(const UnivalenceVerdict& v);
Json univ_poset_to_json(const UnivPoset& p, const std::string& ambient, std::size_t bound);

}  // namespace univ
