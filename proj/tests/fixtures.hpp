#pragma once

#include <vector>

#include "univalence/corpus.hpp"
#include "univalence/groups.hpp"
#include "univalence/presheaf.hpp"

namespace fx {

using namespace univ;

inline FinCatPtr ptr(FinCat c) { return std::make_shared<const FinCat>(std::move(c)); }

/// a -> b
inline FinCatPtr arrow_base() {
  static const FinCatPtr b = ptr(preorder_category(Preorder::from_pairs({"a", "b"}, {{"a", "b"}})));
  return b;
}

/// One object with an idempotent e (e.e = e).
inline FinCatPtr idempotent_base() {
  static const FinCatPtr b = ptr(FinCat({"*"}, {"1", "e"}, {0, 0}, {0, 0}, {0}, {0, 1, 1, 1}));
  return b;
}

inline const FinGroup& z2() {
  static const FinGroup g = cyclic_group(2);
  return g;
}
inline const FinGroup& s3() {
  static const FinGroup g = symmetric_group(3);
  return g;
}
inline FinCatPtr bz2() {
  static const FinCatPtr b = group_base(z2());
  return b;
}
inline FinCatPtr bs3() {
  static const FinCatPtr b = group_base(s3());
  return b;
}

/// Small presheaves on several bases, up to isomorphism.
inline std::vector<PresheafPtr> small_objects(std::size_t bound = 3) {
  std::vector<PresheafPtr> out;
  for (const auto& b : {finset_base(), bz2(), arrow_base(), idempotent_base()}) {
    auto objs = generic_presheaves(b, bound);
    out.insert(out.end(), objs.begin(), objs.end());
  }
  return out;
}

/// Maps between small objects on a shared base, up to isomorphism of arrows.
inline std::vector<PresheafMap> small_maps(std::size_t bound = 2) {
  std::vector<PresheafMap> out;
  for (const auto& b : {finset_base(), bz2(), arrow_base(), idempotent_base()}) {
    auto objs = generic_presheaves(b, bound);
    for (const auto& e : objs)
      for (const auto& t : objs) {
        auto ms = maps_up_to_iso(e, t);
        out.insert(out.end(), ms.begin(), ms.end());
      }
  }
  return out;
}

}  // namespace fx
