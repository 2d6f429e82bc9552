#pragma once

#include <optional>
#include <string>
#include <vector>

#include "univalence/corpus.hpp"
#include "univalence/fincat.hpp"
#include "univalence/internal.hpp"
#include "univalence/presheaf.hpp"
#include "univalence/segal.hpp"

namespace univ {

enum class Outcome { pass, fail, inconclusive, not_applicable };
std::string to_string(Outcome o);

/// Some q with two distinct cartesian squares into p.
struct BruteWitness {
  PresheafMap q;
  CartSquare first, second;
};

struct BruteVerdict {
  Outcome outcome = Outcome::pass;
  std::optional<BruteWitness> witness;
  std::size_t family_bound = 0;   // total size bound on corpus test objects
  std::size_t objects_tested = 0;
  std::size_t objects_skipped = 0;  // over the hom budget
  std::size_t maps_tested = 0;      // test morphisms q examined
};

struct BruteOptions {
  std::size_t family_bound = 12;
  /// Test objects X' with more than this many maps X' -> B are skipped.
  std::size_t hom_budget = 4096;
};

/// Test objects: representables, binary products of representables, E, B, M, B x B, then
/// `corpus` objects of total size <= bound. Deduplicated up to isomorphism.
std::vector<PresheafPtr> default_family(const PresheafMap& p, const std::vector<PresheafPtr>& corpus,
                                        std::size_t bound);

/// Every q with a cartesian square into p over a test object X' is a pullback u*p for some
/// u: X' -> B, so for each X' the maps u are enumerated and a second square is searched for
/// among automorphisms of u*p over X' and other u' with u'*p isomorphic to u*p over X'.
BruteVerdict check_bruteforce(const PresheafMap& p, const std::vector<PresheafPtr>& family,
                              const BruteOptions& opts = {});

struct CompleteCheck {
  Outcome outcome = Outcome::fail;
  CompletenessVerdict detail;
  std::vector<std::size_t> sizes;  // levels of n(p)
};

/// Completeness of the Segal object n(p). Presheaf ambients are always locally cartesian
/// closed, so there is no failure path for the ambient.
CompleteCheck check_completeness(const PresheafMap& p);

struct OmegaCheck {
  Outcome outcome = Outcome::not_applicable;
  std::optional<PresheafMap> chi;  // B -> Omega
  /// Two points of B(c) with the same characteristic sieve, when chi is not mono.
  Index object = kNone, first = kNone, second = kNone;
};

/// For mono p: univalent iff the characteristic map of p is mono.
OmegaCheck check_omega(const PresheafMap& p);

struct FiberCriterion {
  bool pass = false;
  std::vector<Index> fiber_sizes;
  std::string reason;
};

/// FinSet only: every fiber rigid (size <= 1) and distinct points have non-isomorphic fibers.
FiberCriterion finset_fiber_criterion(const PresheafMap& p);

struct UnivalenceVerdict {
  PresheafMap p;
  BruteVerdict brute;
  CompleteCheck complete;
  OmegaCheck omega;
  std::optional<FiberCriterion> fibers;  // FinSet only
  /// Checkers that contradict each other; reported, never reconciled.
  std::vector<std::string> disagreements;
  bool univalent() const { return complete.outcome == Outcome::pass; }
};

struct UnivalenceOptions {
  bool brute = true, complete = true, omega = true;
  BruteOptions brute_opts;
  /// Corpus objects for the brute-force family; empty means structural objects only.
  std::vector<PresheafPtr> corpus;
};

UnivalenceVerdict check_univalence(const PresheafMap& p, const UnivalenceOptions& opts = {});

struct UnivPoset {
  std::vector<PresheafMap> elements;
  std::vector<std::string> names;
  Preorder order;  // q <= p iff a cartesian square q -> p exists
  /// Pairs with more than one cartesian square between them (should stay empty).
  std::vector<std::pair<Index, Index>> multiple_squares;
  /// joins[i][j]: least upper bound, or kNone if there is none.
  std::vector<std::vector<Index>> joins;
  std::size_t candidates = 0;
  /// Hasse diagram as covering pairs (lower, upper).
  std::vector<std::pair<Index, Index>> hasse() const;
};

/// Morphisms with |E|, |B| <= bound up to isomorphism, kept when n(p) is complete.
UnivPoset enumerate_univ(const Ambient& ambient, std::size_t bound);

/// Short name of a FinSet morphism such as "1->2:{1}" (the image of each element, 0-based).
std::string finset_morphism_label(const PresheafMap& p);

struct StabilityCase {
  std::string law;
  std::string p, d;
  bool expected = false, observed = false;
};

struct StabilityReport {
  std::vector<StabilityCase> cases;
  std::vector<StabilityCase> failures() const;
};

/// Pullback of univalent p along d: D -> B is univalent iff d is mono, and the pulled back map
/// sits under p; an isomorphism is univalent iff its target is subterminal.
StabilityReport stability_suite(const std::vector<PresheafMap>& univalent,
                                const std::vector<PresheafMap>& isos,
                                const std::vector<PresheafPtr>& test_objects);

struct S3Report {
  std::size_t external_automorphisms = 0;  // equivariant automorphisms of the 3-element S3-set
  bool map_is_mono = true;
  std::size_t internal_equivalences = 0;  // elements of the internal object of isomorphisms
  bool internal_is_conjugation = false;
  Outcome completeness = Outcome::fail;
  Outcome bruteforce = Outcome::fail;
  bool checkers_agree = false;
  /// The source example claims univalence; informational.
  bool matches_claim = false;
};

S3Report s3_report();

}  // namespace univ
