#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "univalence/fincat.hpp"

namespace univ {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite group given by its full multiplication table.
class FinGroup {
 public:
  FinGroup() = default;

  /// Validates the group axioms; throws ValidationError on the first failure.
  static FinGroup from_table(std::vector<std::string> names, std::vector<std::vector<Index>> table,
                             std::string label = {});

  std::size_t order() const { return names_.size(); }
  Index identity() const { return identity_; }
  Index mul(Index a, Index b) const { return table_[a][b]; }
  Index inv(Index a) const { return inverse_[a]; }
  Index element_order(Index a) const;
  const std::string& name(Index a) const { return names_.at(a); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<Index>>& table() const { return table_; }
  std::optional<Index> find(const std::string& name) const;

  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }
  bool is_abelian() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<Index>> table_;
  std::vector<Index> inverse_;
  Index identity_ = 0;
  std::string label_;
};

using FinGroupPtr = std::shared_ptr<const FinGroup>;

std::vector<Violation> group_report(const std::vector<std::vector<Index>>& table);

FinGroup trivial_group();
FinGroup cyclic_group(int n);
/// Symmetries of the regular n-gon, order 2n (dihedral_group(4) is D4 of order 8).
FinGroup dihedral_group(int n);
FinGroup quaternion_group();
FinGroup symmetric_group(int n);
FinGroup direct_product(const FinGroup& a, const FinGroup& b);
/// Closure of permutation generators in one-line notation, 1-based images.
FinGroup permutation_group(int degree, const std::vector<std::vector<int>>& generators,
                           std::string label = {});

std::vector<Index> generated_subgroup(const FinGroup& g, const std::vector<Index>& gens);
std::vector<Index> generating_set(const FinGroup& g);
std::vector<Index> center(const FinGroup& g);
bool is_normal(const FinGroup& g, const std::vector<Index>& subgroup);
/// All subgroups, each as a sorted element list.
std::vector<std::vector<Index>> subgroups(const FinGroup& g);
FinGroup subgroup_group(const FinGroup& g, const std::vector<Index>& subgroup);
/// Quotient by a normal subgroup; `projection` (if given) receives the coset of each element.
FinGroup quotient(const FinGroup& g, const std::vector<Index>& normal,
                  std::vector<Index>* projection = nullptr);

bool is_homomorphism(const FinGroup& a, const FinGroup& b, const std::vector<Index>& map);
/// Every homomorphism a -> b, by backtracking over generator images.
std::vector<std::vector<Index>> homomorphisms(const FinGroup& a, const FinGroup& b);
std::optional<std::vector<Index>> find_isomorphism(const FinGroup& a, const FinGroup& b);
inline bool isomorphic(const FinGroup& a, const FinGroup& b) {
  return find_isomorphism(a, b).has_value();
}

struct GroupHom {
  FinGroupPtr source, target;
  std::vector<Index> map;
};

struct Automorphisms {
  FinGroup group;                       ///< composition (a*b)(x) = a(b(x))
  std::vector<std::vector<Index>> maps; ///< element i of `group` acts by maps[i]
  std::vector<Index> theta;             ///< g -> index of conjugation x -> g x g^-1
};

/// Aut(G). Throws BudgetExceeded when |G| exceeds `budget`.
Automorphisms automorphisms(const FinGroup& g, std::size_t budget = 128);

struct InnOut {
  std::vector<Index> inner;       ///< Inn(G) as a subgroup of Aut(G)
  FinGroup out;                   ///< Aut(G)/Inn(G)
  std::vector<Index> projection;  ///< Aut(G) -> Out(G)
};

InnOut inn_out(const Automorphisms& aut);

struct CompletenessCertificate {
  std::size_t center_order = 0;
  std::size_t inner_order = 0;
  std::size_t out_order = 0;
  std::size_t aut_order = 0;
  bool theta_injective = false;
  bool theta_surjective = false;
  bool by_center_and_out = false;
  bool by_theta = false;
  bool complete() const { return by_center_and_out; }
  bool routes_agree() const { return by_center_and_out == by_theta; }
};

CompletenessCertificate is_complete(const FinGroup& g, std::size_t budget = 128);

struct AutomorphismTower {
  std::vector<FinGroup> stages;  ///< G, Aut(G), Aut(Aut(G)), ...
  std::vector<bool> theta_injective;
  bool stabilized = false;       ///< last stage is complete
  int steps = 0;                 ///< number of Aut applications performed
};

AutomorphismTower automorphism_tower(const FinGroup& g, int max_steps, std::size_t budget = 128);

/// Invariants of the self-equivalence groupoid of the one-object groupoid BG.
struct EquivalenceGroupoid {
  std::size_t num_functors = 0;  ///< |Aut(G)|
  FinGroup pi0;                  ///< components under natural isomorphism
  FinGroup pi1;                  ///< automorphisms of the identity functor
  bool pi0_matches_out = false;
  bool pi1_matches_center = false;
  bool contractible() const { return pi0.order() == 1 && pi1.order() == 1; }
};

EquivalenceGroupoid eq_bg(const FinGroup& g, std::size_t budget = 128);

struct GroupPullback {
  FinGroup group;
  std::vector<std::pair<Index, Index>> pairs;
  std::vector<Index> proj1, proj2;
};

GroupPullback grp_pullback(const GroupHom& f, const GroupHom& g);

/// Groups of order exactly n / at most n up to isomorphism, from exhaustive
/// enumeration of multiplication tables.
std::vector<FinGroup> groups_of_order(int n);
std::vector<FinGroup> small_groups(int max_order, int budget = 8);

struct GroupSquare {
  std::vector<Index> u;  ///< X -> G
  std::vector<Index> v;  ///< Y -> H
};

struct GroupRefutation {
  bool refuted = false;
  GroupHom witness_q;
  GroupSquare first, second;
  std::size_t homs_tested = 0;
  std::size_t catalog_size = 0;
};

bool is_cartesian_group_square(const GroupHom& q, const GroupHom& p, const GroupSquare& s);

/// Searches all homomorphisms q between catalog groups (plus the source and target
/// of p) for one admitting two distinct cartesian squares into p.
GroupRefutation grp_univalence_refute(const GroupHom& p, const std::vector<FinGroupPtr>& catalog);

std::string describe_hom(const GroupHom& h);

}  // namespace univ
