#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace univ {

using Index = std::int32_t;
inline constexpr Index kNone = -1;

/// One violated law of a category, functor or other finite structure.
struct Violation {
  std::string law;      ///< e.g. "missing composite", "associativity"
  std::string witness;  ///< offending ids, human readable
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(Violation v)
      : std::runtime_error(v.law + ": " + v.witness), violation_(std::move(v)) {}
  const Violation& violation() const noexcept { return violation_; }

 private:
  Violation violation_;
};

class UnknownIdError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Category tables exactly as they appear in a `fincat/v1` file.
struct RawCategory {
  struct Morphism {
    std::string id, src, tgt;
  };
  struct Composite {
    std::string first, then, result;  // result = then ∘ first
  };
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::map<std::string, std::string> identities;
  std::vector<Composite> composition;
};

/**
 * A finite category with a fully materialized composition table.
 *
 * Objects and morphisms are addressed by dense indices; the string ids are
 * kept for I/O and diagnostics. `compose(f, g)` is "g after f" and returns
 * kNone when tgt(f) != src(g).
 */
class FinCat {
 public:
  FinCat() = default;

  /// Unchecked constructor used by internal builders. `composition` is
  /// row-major over (first, then).
  FinCat(std::vector<std::string> objects, std::vector<std::string> morphisms,
         std::vector<Index> src, std::vector<Index> tgt,
         std::vector<Index> identities, std::vector<Index> composition);

  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_morphisms() const { return morphisms_.size(); }

  const std::string& object_name(Index c) const { return objects_.at(c); }
  const std::string& morphism_name(Index f) const { return morphisms_.at(f); }
  const std::vector<std::string>& object_names() const { return objects_; }
  const std::vector<std::string>& morphism_names() const { return morphisms_; }

  Index src(Index f) const { return src_[f]; }
  Index tgt(Index f) const { return tgt_[f]; }
  Index identity(Index c) const { return identities_[c]; }
  bool is_identity(Index f) const { return identities_[src_[f]] == f; }

  Index compose(Index first, Index then) const {
    return composition_[static_cast<std::size_t>(first) * morphisms_.size() + then];
  }

  /// Morphisms a -> b, in index order.
  const std::vector<Index>& hom(Index a, Index b) const {
    return hom_[static_cast<std::size_t>(a) * objects_.size() + b];
  }
  /// All morphisms with target c.
  const std::vector<Index>& into(Index c) const { return into_[c]; }

  std::optional<Index> find_object(const std::string& name) const;
  std::optional<Index> find_morphism(const std::string& name) const;
  Index object_at(const std::string& name) const;
  Index morphism_at(const std::string& name) const;

  /// Exhaustive re-check of the category laws on the stored tables.
  std::vector<Violation> check_laws() const;

  RawCategory to_raw() const;

 private:
  void index();

  std::vector<std::string> objects_;
  std::vector<std::string> morphisms_;
  std::vector<Index> src_, tgt_, identities_, composition_;
  std::vector<std::vector<Index>> hom_;
  std::vector<std::vector<Index>> into_;
  std::map<std::string, Index> object_ids_;
  std::map<std::string, Index> morphism_ids_;
};

using FinCatPtr = std::shared_ptr<const FinCat>;

/// All violations of the raw tables, in check order. Empty means valid.
std::vector<Violation> category_report(const RawCategory& raw);

/// Throws ValidationError carrying the first violated law.
FinCat validate_category(const RawCategory& raw);

// Isomorphism machinery.
std::optional<Index> inverse_of(const FinCat& c, Index f);
bool is_iso(const FinCat& c, Index f);
bool is_iso(const FinCat& c, const std::string& morphism_id);
std::vector<std::vector<Index>> iso_classes(const FinCat& c);
bool has_nontrivial_isos(const FinCat& c);
bool is_zero_category(const FinCat& c);
/// Antisymmetry check: every hom-set has at most one element and a <-> b implies a == b.
bool is_poset_category(const FinCat& c);

struct FinFunctor {
  FinCatPtr source, target;
  std::vector<Index> object_map;
  std::vector<Index> morphism_map;
};

std::vector<Violation> functor_report(const FinFunctor& f);

struct Preorder {
  std::vector<std::string> carrier;
  std::vector<std::vector<bool>> leq;  // leq[x][y] <=> x <= y

  /// Reflexive pairs are added; transitivity is left to the caller (see report()).
  static Preorder from_pairs(std::vector<std::string> carrier,
                             const std::vector<std::pair<std::string, std::string>>& pairs);
  std::size_t size() const { return carrier.size(); }
  bool is_reflexive() const;
  bool is_transitive() const;
  bool is_antisymmetric() const;
  std::vector<Violation> report() const;
};

struct PosetQuotient {
  Preorder poset;
  std::vector<Index> projection;  // carrier element -> class
};

/// Quotient by x ~ y <=> x <= y and y <= x. Classes are named "[rep]".
PosetQuotient preorder_to_poset(const Preorder& p);

bool preorders_isomorphic(const Preorder& a, const Preorder& b);

/// Thin category of a preorder; the morphism x -> y is named "x<=y".
FinCat preorder_category(const Preorder& p);
/// Preorder on the objects of a zero category. Requires is_zero_category(c).
Preorder category_preorder(const FinCat& c);

// Builders.
FinCat terminal_category();
FinCat discrete_category(const std::vector<std::string>& objects);
/// Full subcategory of FinSet on {1..n} for each n in `sizes`, all functions.
FinCat finset_category(const std::vector<int>& sizes);
/// Full subcategory of FinSet on all subsets of {1..n}.
FinCat subsets_category(int n);
/// Name of the function {1..n} -> {1..m} with the given (1-based) values in finset_category.
std::string finset_morphism_name(int n, int m, const std::vector<int>& values);
/// Objects and ids renamed by prefixing; used to check renaming invariance.
FinCat renamed(const FinCat& c, const std::string& prefix);

}  // namespace univ
