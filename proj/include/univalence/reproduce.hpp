#pragma once

#include <string>
#include <vector>

#include "univalence/groups.hpp"
#include "univalence/io.hpp"

namespace univ {

struct ReproReport {
  std::string target;
  std::string citation;
  std::string expected, computed;
  bool match = false;
  double seconds = 0;
  Json detail = Json::object();
};

std::vector<std::string> reproduce_targets();
/// Throws FormatError for an unknown target.
ReproReport reproduce(const std::string& target);
Json repro_to_json(const ReproReport& r);

/// Refutation sweep over group homomorphisms.
struct GrpTable {
  struct Candidate {
    GroupHom p;
    std::string name;
    bool refuted = false;
    std::size_t catalog_order = 0;  // catalog bound that produced the verdict
    GroupRefutation refutation;
  };
  std::vector<Candidate> candidates;
  std::vector<Index> survivors;                  // positions in candidates
  std::vector<std::string> expected_survivors;   // names of the four lemma maps
  std::vector<std::string> missing, unexpected;  // expected vs computed survivors
  Preorder order;                                // cartesian-square order on survivors
  bool order_matches = false;
  std::vector<std::string> trivial_aut;          // catalog groups with trivial Aut
  bool survivors_have_involutive_domains = true;
  bool match() const { return missing.empty() && unexpected.empty() && order_matches; }
};

/// Every homomorphism between groups of order <= candidate_order, refuted against the catalog
/// of groups of order <= catalog_order.
GrpTable grp_table(int catalog_order = 8, int candidate_order = 4);

struct CompleteGroupsRow {
  std::string label;
  std::size_t order = 0;
  CompletenessCertificate cert;
  EquivalenceGroupoid eq;
  bool abelian = false;
  bool orders_consistent = false;  // |G| = |Z||Inn| and |Aut| = |Inn||Out|
};

struct CompleteGroups {
  std::vector<CompleteGroupsRow> rows;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Groups of order <= 8 plus S3, S4, D4, Q8.
CompleteGroups complete_groups();

}  // namespace univ
