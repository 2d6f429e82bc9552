#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "univalence/fincat.hpp"
#include "univalence/presheaf.hpp"

namespace univ {

/// A map b*E -> b'*E over y(c), where b*E is the pullback of p along y(c) -> B picking b.
/// img[d][i] is the E-component of the image of the i-th element of (b*E)(d).
struct FiberMap {
  Index b = kNone, b2 = kNone;
  std::vector<std::vector<Index>> img;
};

/**
 * The internal category C(p) of a map p: E -> B. Objects B; M(c) holds the fiber maps
 * over pairs (b, b') in B(c) x B(c), composed literally.
 */
struct InternalCat {
  PresheafMap p;
  PresheafPtr B, M;
  Product bb;           // B x B
  PresheafMap s, t;     // M -> B
  PresheafMap st;       // M -> B x B
  PresheafMap id_map;   // B -> M
  Pullback composable;  // M x_B M, pairs (m1, m2) with t m1 = s m2
  PresheafMap comp;     // composable -> M, m2 after m1

  std::vector<std::vector<FiberMap>> fiber_maps;  // [c][m]
  std::vector<std::vector<Pullback>> fibers;      // [c][b]: b*E over y(c)
  std::vector<std::unordered_map<std::vector<Index>, Index, VecHash>> index;  // [c]: key -> m

  /// Element of M(c) with the given fiber map, or kNone.
  Index find(Index c, const FiberMap& m) const;
  /// m2 after m1 at c; requires t m1 = s m2.
  Index compose(Index c, Index m1, Index m2) const;
};

InternalCat build_internal_cat(const PresheafMap& p);

/// Unit, associativity, source/target compatibility and naturality of all structure maps.
std::vector<Violation> internal_cat_report(const InternalCat& ic);

/**
 * The same category built from <E x B, B x E> over B x B (maps E_b -> E_b' as an exponential
 * in the slice), with composition given by two evaluations.
 */
struct EvaluationRoute {
  HomOverBase hom;
  PresheafMap to_m;  // hom.proj.source -> M, an isomorphism over B x B
  PresheafMap comp;  // composable -> M via the evaluation chain
  PresheafMap id_map;
};
EvaluationRoute evaluation_route(const InternalCat& ic);
/// Differences between the elementwise construction and the evaluation route.
std::vector<Violation> compare_with_evaluation(const InternalCat& ic);

/// An object over B x B with a section from B lying over the diagonal.
struct EquivObject {
  PresheafPtr carrier;
  PresheafMap to_bb;    // carrier -> B x B
  PresheafMap section;  // B -> carrier
  /// The defining tuple of each element, [c][x]; meaning depends on the construction.
  std::vector<std::vector<std::array<Index, 3>>> tuples;
};

/// Triples (beta, alpha, gamma) with alpha: b -> b', beta, gamma: b' -> b,
/// beta after alpha = id(b) and alpha after gamma = id(b'); over B x B via alpha.
EquivObject iso_object(const InternalCat& ic);

class IsoSearchFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AltEquivObject {
  EquivObject obj;
  /// Composable triples (m1, m2, m3) with m2 after m1 = id and m3 after m2 = id.
  PresheafMap iso;  // obj.carrier -> iso_object carrier, over B x B
};
/// Pullback of (d1 d0, d1 d3) on composable triples against the degenerate pairs.
/// Throws IsoSearchFailed if it is not isomorphic to iso_object over B x B.
AltEquivObject iso_object_alt(const InternalCat& ic, const EquivObject& iso);

/// Triples (beta, alpha, gamma) in <B x E, E x B> x <E x B, B x E> x <B x E, E x B> over B x B
/// whose composites are identities, built from exponentials over B x B and evaluation transposes.
EquivObject vergura_object(const PresheafMap& p);

/// The relation on B(c) given by the image of M(c) in B(c) x B(c).
struct InternalRelation {
  bool st_mono = false;
  bool reflexive = true, transitive = true, antisymmetric = true;
  std::vector<Preorder> levels;  // [c]
};
InternalRelation internal_relation(const InternalCat& ic);

}  // namespace univ
