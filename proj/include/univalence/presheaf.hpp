#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "univalence/fincat.hpp"

namespace univ {

struct VecHash {
  std::size_t operator()(const std::vector<Index>& v) const noexcept {
    std::size_t h = v.size();
    for (Index x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/**
 * A finite presheaf X on a FinCat: X(c) = {0, .., size(c)-1} and for every
 * morphism f: c -> d an action X(f): X(d) -> X(c).
 */
class Presheaf {
 public:
  Presheaf() = default;
  /// Unchecked; call check() (or validate_presheaf) for untrusted data.
  Presheaf(FinCatPtr base, std::vector<Index> sizes, std::vector<std::vector<Index>> actions,
           std::vector<std::vector<std::string>> labels = {});

  const FinCat& base() const { return *base_; }
  const FinCatPtr& base_ptr() const { return base_; }
  Index size(Index c) const { return sizes_[c]; }
  const std::vector<Index>& sizes() const { return sizes_; }
  std::size_t total_size() const;
  /// X(f)(x) for f: c -> d and x in X(d).
  Index act(Index f, Index x) const { return actions_[f][x]; }
  const std::vector<Index>& action(Index f) const { return actions_[f]; }
  const std::vector<std::vector<Index>>& actions() const { return actions_; }

  bool has_labels() const { return !labels_.empty(); }
  std::string label(Index c, Index x) const;
  const std::vector<std::vector<std::string>>& labels() const { return labels_; }
  std::optional<Index> find_label(Index c, const std::string& l) const;

  /// Functoriality and shape violations.
  std::vector<Violation> check() const;

 private:
  FinCatPtr base_;
  std::vector<Index> sizes_;
  std::vector<std::vector<Index>> actions_;
  std::vector<std::vector<std::string>> labels_;
};

using PresheafPtr = std::shared_ptr<const Presheaf>;

PresheafPtr make_presheaf(Presheaf p);
/// Throws ValidationError on the first functoriality failure.
PresheafPtr validate_presheaf(Presheaf p);

bool same_base(const FinCat& a, const FinCat& b);

/// Components are indexed [object][element of source] -> element of target.
struct PresheafMap {
  PresheafPtr source, target;
  std::vector<std::vector<Index>> components;

  Index operator()(Index c, Index x) const { return components[c][x]; }
  std::vector<Violation> check() const;
};

bool operator==(const PresheafMap& a, const PresheafMap& b);

PresheafMap identity_map(const PresheafPtr& x);
/// `then` after `first`.
PresheafMap compose(const PresheafMap& first, const PresheafMap& then);
PresheafMap validate_map(PresheafMap m);

PresheafPtr terminal(const FinCatPtr& base);
PresheafPtr empty_presheaf(const FinCatPtr& base);
/// y(c): elements at d are the morphisms d -> c, in hom order.
PresheafPtr representable(const FinCatPtr& base, Index c);
PresheafMap to_terminal(const PresheafPtr& x);

struct Product {
  PresheafPtr obj;
  PresheafMap p1, p2;
  Index pair(Index c, Index a, Index b) const { return a * p2.target->size(c) + b; }
};
/// Pair (a, b) sits at index a * |Y(c)| + b.
Product product(const PresheafPtr& x, const PresheafPtr& y);
/// <f, g>: W -> X x Y for maps with a common source.
PresheafMap pairing(const Product& p, const PresheafMap& f, const PresheafMap& g);
/// f x g : X x Y -> X' x Y'.
PresheafMap product_map(const Product& from, const Product& to, const PresheafMap& f,
                        const PresheafMap& g);

struct Pullback {
  PresheafPtr obj;
  PresheafMap p1, p2;
  std::vector<std::vector<std::pair<Index, Index>>> pairs;  // [c][element]
  /// Element (a, b) at c, or kNone when f(a) != g(b).
  Index find(Index c, Index a, Index b) const;

  std::vector<std::vector<Index>> lookup_;  // [c][a * |Y(c)| + b]
};

Pullback pullback(const PresheafMap& f, const PresheafMap& g);
/// Factorization of a commuting cone (a: W -> X, b: W -> Y) through the pullback.
PresheafMap pullback_pairing(const Pullback& pb, const PresheafMap& a, const PresheafMap& b);

struct Equalizer {
  PresheafPtr obj;
  PresheafMap incl;
};
Equalizer equalizer(const PresheafMap& f, const PresheafMap& g);

struct Coproduct {
  PresheafPtr obj;
  PresheafMap i1, i2;
};
Coproduct coproduct(const PresheafPtr& x, const PresheafPtr& y);

// Natural transformations.
struct HomSearchOptions {
  /// Restricts the image of x in X(c); called as allow(c, x, y).
  std::function<bool(Index, Index, Index)> allow;
  /// Components must be injective.
  bool injective = false;
};

/// Enumerates Nat(X, Y) in a deterministic order. `visit` returns false to stop.
/// Returns the number of maps visited.
std::size_t for_each_hom(const Presheaf& x, const Presheaf& y,
                         const std::function<bool(const std::vector<std::vector<Index>>&)>& visit,
                         const HomSearchOptions& opts = {});
std::vector<PresheafMap> homs(const PresheafPtr& x, const PresheafPtr& y,
                              const HomSearchOptions& opts = {});
/// Counts up to `cap` maps (0 = no cap).
std::size_t count_homs(const Presheaf& x, const Presheaf& y, std::size_t cap = 0,
                       const HomSearchOptions& opts = {});

/// Isomorphism invariant: per object, the multiset of stabilizers (endomorphisms fixing an
/// element), and per morphism the multiset of preimage sizes of its action.
std::vector<std::vector<Index>> iso_invariant(const Presheaf& x);
/// Searches only when the invariants agree.
std::optional<PresheafMap> find_iso(const PresheafPtr& x, const PresheafPtr& y);
/// An isomorphism h: X -> Y with g o h = f, if any.
std::optional<PresheafMap> find_iso_over(const PresheafMap& f, const PresheafMap& g);
/// Isomorphisms X -> X over f: X -> B, up to `cap` (0 = all).
std::vector<PresheafMap> automorphisms_over(const PresheafMap& f, std::size_t cap = 0);

// Truncation levels.
bool is_mono(const PresheafMap& f);            // componentwise injective
bool is_mono_diagonal(const PresheafMap& f);   // X -> X x_Y X is an iso
bool is_mono_yoneda(const PresheafMap& f);     // Nat(y(c), -) is injective for all c
bool is_iso(const PresheafMap& f);             // componentwise bijective
std::optional<PresheafMap> inverse(const PresheafMap& f);  // checked natural inverse
inline bool is_neg2_truncated(const PresheafMap& f) { return is_iso(f); }
inline bool is_neg1_truncated(const PresheafMap& f) { return is_mono_diagonal(f); }

// Exponentials.
struct Exponential {
  PresheafPtr y, z;
  PresheafPtr obj;  // Z^Y
  Product with_y;   // Z^Y x Y
  PresheafMap ev;   // Z^Y x Y -> Z
  /// For phi in Z^Y(c): tables[c][phi][d] lists phi_d over (position of h in hom(d,c)) x Y(d).
  std::vector<std::vector<std::vector<std::vector<Index>>>> tables;
  std::vector<std::unordered_map<std::vector<Index>, Index, VecHash>> index;

  /// phi_d(h, y) for h: d -> c.
  Index apply(Index c, Index phi, Index h, Index y) const;
  /// Element of Z^Y(c) with the given flattened components, or kNone.
  Index find(Index c, const std::vector<Index>& flat) const;
  /// Element of Z^Y(c) whose value on (h: d -> c, y in Y(d)) is value(h, y), or kNone.
  Index find_by(Index c, const std::function<Index(Index, Index)>& value) const;
};

Exponential exponential(const PresheafPtr& y, const PresheafPtr& z);
/// Curry h: A x Y -> Z (source laid out as product(A, Y)) into A -> Z^Y.
PresheafMap transpose(const Exponential& e, const PresheafPtr& a, const PresheafMap& h);
/// Inverse of transpose.
PresheafMap uncurry(const Exponential& e, const Product& ay, const PresheafMap& g);

// Category of elements and slices.
struct Elements {
  PresheafPtr x;
  FinCatPtr cat;                                // objects (c, x), morphisms (f, x)
  std::vector<std::pair<Index, Index>> objects;  // element object -> (c, x)
  std::vector<std::vector<Index>> object_of;     // [c][x] -> element object
  std::vector<std::pair<Index, Index>> morphisms;  // element morphism -> (f, x)
  /// Morphism (f, x): (d, X(f)x) -> (c, x); kNone if absent.
  Index morphism_of(Index f, Index x) const;
  std::vector<Index> mor_offset_;  // per base morphism, first element morphism
};

Elements elements(const PresheafPtr& x);

/// The presheaf on the category of elements of X sending (c, x) to the fiber of m over x.
struct Slice {
  PresheafPtr fibers;
  /// [element object][i] -> element of m.source(c) with m(.) = x.
  std::vector<std::vector<Index>> members;
  /// [c][y] -> position of y in its fiber.
  std::vector<std::vector<Index>> position;
};

Slice to_slice(const Elements& el, const PresheafMap& m);
/// A presheaf on the category of elements, reassembled into a map into X.
/// `members`, if given, receives the element-object/position of each element.
PresheafMap from_slice(const Elements& el, const PresheafPtr& p,
                       std::vector<std::vector<std::pair<Index, Index>>>* origin = nullptr);

/// <Y, Z>_X for f: Y -> X and g: Z -> X.
struct HomOverBase {
  PresheafMap f, g;
  Elements el;
  Slice sy, sz;
  Exponential exp;     // on the category of elements
  PresheafMap proj;    // <Y,Z>_X -> X
  std::vector<std::vector<std::pair<Index, Index>>> origin;  // [c][h] -> (element object, phi)
  std::vector<std::vector<Index>> element_of;                // [element object][phi] -> h
  Pullback with_y;     // <Y,Z>_X x_X Y
  PresheafMap ev;      // with_y -> Z, over X

  /// For h over x in <Y,Z>_X(c), k: d -> c and y in Y(d) over X(k)x: the image of y in Z(d).
  Index apply(Index c, Index h, Index k, Index y) const;
};

HomOverBase hom_over_base(const PresheafMap& f, const PresheafMap& g);
/// Transpose of k: W x_X Y -> Z over X (with pb = pullback(w, f)) to W -> <Y,Z>_X.
PresheafMap transpose_over_base(const HomOverBase& h, const PresheafMap& w, const Pullback& pb,
                                const PresheafMap& k);

/// One-object base only: functions between fibers with the conjugation action.
struct GSetHomOverBase {
  PresheafMap proj;
  /// [h] -> (x, fiber function as a vector over Y_x in increasing order).
  std::vector<std::pair<Index, std::vector<Index>>> elements;
};
GSetHomOverBase gset_hom_over_base(const PresheafMap& f, const PresheafMap& g);

// Subobject classifier.
struct SubobjectClassifier {
  FinCatPtr base;
  PresheafPtr omega;
  PresheafMap true_map;                          // 1 -> Omega
  std::vector<std::vector<std::vector<Index>>> sieves;  // [c][s] sorted morphism ids
  Index find(Index c, const std::vector<Index>& sieve) const;
};

SubobjectClassifier subobject_classifier(const FinCatPtr& base);
/// Characteristic map of a mono; throws ValidationError("not mono") otherwise.
PresheafMap classify(const SubobjectClassifier& om, const PresheafMap& m);
/// The sub-presheaf pulled back from true along chi, with its inclusion.
PresheafMap pullback_true(const SubobjectClassifier& om, const PresheafMap& chi);

struct Subobject {
  std::vector<std::vector<bool>> members;  // [c][x]
  PresheafMap incl;
};
/// All sub-presheaves of X (one per isomorphism class of monos into X).
std::vector<Subobject> subobjects(const PresheafPtr& x);
Subobject image(const PresheafMap& m);

// Cartesian squares from q: Y' -> X' into p: E -> B.
struct CartSquare {
  PresheafMap u;  // X' -> B
  PresheafMap v;  // Y' -> E
};

bool is_cartesian(const PresheafMap& q, const PresheafMap& p, const CartSquare& s);
/// All cartesian squares, or the first `cap` of them (0 = all).
std::vector<CartSquare> enumerate_cart_squares(const PresheafMap& q, const PresheafMap& p,
                                               std::size_t cap = 0);

std::string describe(const Presheaf& x);
std::string describe(const PresheafMap& m);

}  // namespace univ
