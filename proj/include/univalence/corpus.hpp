#pragma once

#include <functional>
#include <string>
#include <vector>

#include "univalence/groups.hpp"
#include "univalence/presheaf.hpp"

namespace univ {

// Ambients.
FinCatPtr finset_base();
/// The one-object groupoid BG; morphisms are the group elements and g after f is g*f,
/// so presheaves are right G-sets.
FinCatPtr group_base(const FinGroup& g);

PresheafPtr finset(Index n);
/// Map between FinSet presheaves with values[i] the image of element i.
PresheafMap finset_map(const PresheafPtr& e, const PresheafPtr& b, const std::vector<Index>& values);
PresheafMap finset_map(Index e, Index b, const std::vector<Index>& values);

/// Right cosets of `subgroup` with G acting by right multiplication.
PresheafPtr coset_gset(const FinCatPtr& base, const FinGroup& g, const std::vector<Index>& subgroup,
                       const std::string& tag = "o");
PresheafPtr regular_gset(const FinCatPtr& base, const FinGroup& g);
/// {1..n} for a permutation group whose element names are one-line images "[..]",
/// as a right G-set via x.g = g^-1(x).
PresheafPtr natural_gset(const FinCatPtr& base, const FinGroup& g);
PresheafPtr disjoint_union(const std::vector<PresheafPtr>& parts, const FinCatPtr& base);
/// A map between presheaves on one object given by its single component.
PresheafMap single_component_map(const PresheafPtr& e, const PresheafPtr& b, const std::vector<Index>& values);

/// Subgroups of g up to conjugacy, one representative each, ordered by decreasing order.
std::vector<std::vector<Index>> subgroup_classes(const FinGroup& g);

// Corpus enumeration: objects up to isomorphism, ascending total size.
struct Ambient {
  std::string name;
  FinCatPtr base;
  std::function<std::vector<PresheafPtr>(std::size_t)> objects;  // total size <= bound
};

Ambient finset_ambient();
Ambient gset_ambient(const FinGroup& g, const std::string& name);
/// Generic presheaves on a small base, found by exhaustive action search.
Ambient presheaf_ambient(const FinCatPtr& base, const std::string& name);

std::vector<PresheafPtr> generic_presheaves(const FinCatPtr& base, std::size_t max_total);

/// All maps E -> B, and one representative per orbit of Aut(E) x Aut(B).
std::vector<PresheafMap> maps_between(const PresheafPtr& e, const PresheafPtr& b);
std::vector<PresheafMap> maps_up_to_iso(const PresheafPtr& e, const PresheafPtr& b);
/// Canonical form of p under the action of Aut(E) x Aut(B).
std::vector<std::vector<Index>> canonical_form(const PresheafMap& p,
                                               const std::vector<PresheafMap>& aut_e,
                                               const std::vector<PresheafMap>& aut_b);
std::vector<PresheafMap> automorphisms(const PresheafPtr& x);

/// Morphisms up to isomorphism with |E| <= max_e and |B| <= max_b, and |E| + |B| <= max_total.
std::vector<PresheafMap> morphism_corpus(const Ambient& a, std::size_t max_e, std::size_t max_b,
                                         std::size_t max_total);

// Parallel map with deterministic output order; worker count from UNIVALENCE_THREADS.
std::size_t worker_count();
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace univ
