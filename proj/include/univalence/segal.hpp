#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "univalence/fincat.hpp"
#include "univalence/internal.hpp"
#include "univalence/presheaf.hpp"

namespace univ {

/**
 * A simplicial object truncated at level `top()` (at most 3): levels W_0..W_top with
 * faces d_i: W_n -> W_{n-1} (0 <= i <= n) and degeneracies s_i: W_n -> W_{n+1} (0 <= i <= n).
 */
struct SimplicialObject {
  std::vector<PresheafPtr> levels;
  std::vector<std::vector<PresheafMap>> faces;   // [n][i], n >= 1
  std::vector<std::vector<PresheafMap>> degens;  // [n][i], n < top
  /// For nerves of categories: the chain of morphisms of each cell ([n][x]); level 0 holds objects.
  std::vector<std::vector<std::vector<Index>>> cells;

  int top() const { return static_cast<int>(levels.size()) - 1; }
  const PresheafMap& d(int n, int i) const { return faces[n][i]; }
  const PresheafMap& s(int n, int i) const { return degens[n][i]; }
  std::vector<std::size_t> sizes() const;
};

/// Violations of the simplicial identities among the represented levels.
std::vector<Violation> simplicial_report(const SimplicialObject& w);
/// Structural checks (shapes, shared base) followed by the simplicial identities.
std::vector<Violation> validate_simplicial(const SimplicialObject& w);

/// Levels 0..top of the nerve of C as finite sets.
SimplicialObject nerve_of_category(const FinCat& c, int top = 3);
/// The Segal object n(p): B, M, M x_B M, M x_B M x_B M with faces from s, t, comp.
SimplicialObject nerve_of_morphism(const InternalCat& ic, int top = 3);
SimplicialObject constant_simplicial(const PresheafPtr& x, int top = 3);

struct SegalVerdict {
  bool pass = true;
  int level = 0;            // failing level
  Index object = kNone;     // stage in the base category
  Index spine = kNone;      // element of the iterated pullback W_1 x_W0 ... x_W0 W_1
  std::vector<Index> preimages;  // cells of W_level over that spine (0 or at least 2)
  std::vector<int> checked;      // levels examined
};

/// Bijectivity of W_n -> W_1 x_W0 ... x_W0 W_1 for n = 2, 3 (as far as represented).
SegalVerdict check_segal(const SimplicialObject& w);

class NotSegal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CompletenessVerdict {
  bool complete = false;
  PresheafPtr square;        // W_3 x_{W_1 x W_1} (W_0 x W_0)
  PresheafMap comparison;    // W_0 -> square
  Index object = kNone;      // stage of the witness
  Index witness = kNone;     // element of the square missed by the comparison
  std::vector<Index> witness_cell;  // its W_3 component and W_0 x W_0 component
};

/// Whether W_0 is the pullback of (d1 d0, d1 d3): W_3 -> W_1 x W_1 along s0 x s0.
/// Throws NotSegal if the Segal condition fails and NotSegal if W_3 is not represented.
CompletenessVerdict check_complete(const SimplicialObject& w);

/// The quotient of a Segal set by the iso-ladder relation, with the projection.
struct HCompletion {
  SimplicialObject h;
  std::vector<PresheafMap> projection;          // [n]: S_n -> H_n
  std::vector<std::vector<Index>> class_of;     // [n][x]
  std::vector<std::vector<Index>> representative;  // [n][class]
};
/// Requires a Segal set over the terminal base; throws NotSegal otherwise and ValidationError if
/// induced faces or degeneracies are not well defined.
HCompletion h_completion(const SimplicialObject& s);

/// Fiber-size equation of a FinSet morphism named "n>m:v1,..,vn", e.g. "1+2=3";
/// summands sorted, empty fibers included.
std::string fiber_equation(const std::string& finset_morphism);

struct HackneyReport {
  std::string alpha, alpha2, beta;        // the three morphisms
  std::string class_alpha, class_alpha2;  // both 1+2=3
  std::string class_beta;                 // 1+1+2=4
  std::string class_alpha_beta, class_alpha2_beta;  // 2+2=4 and 1+3=4
  bool same_class_level1 = false;
  bool composites_differ = false;
  bool segal_fails_level2 = false;
  /// Two distinct level-2 classes with the same spine.
  Index witness_a = kNone, witness_b = kNone;
  std::vector<std::size_t> h_sizes;
};
/// The composition failure on the quotient of the nerve of finite sets {1..n}, n = 1..4.
HackneyReport hackney_witness();

}  // namespace univ
