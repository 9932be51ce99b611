#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tvote/election.hpp"

namespace tvote {

enum class Axiom { kJR, kPJR, kEJR, kEJRPlus };

inline constexpr Axiom kAllAxioms[] = {Axiom::kJR, Axiom::kPJR, Axiom::kEJR, Axiom::kEJRPlus};

std::string_view axiom_name(Axiom axiom);  // "JR", "PJR", "EJR", "EJR+"
// Accepts jr|pjr|ejr|ejrplus|ejr+ in any case.
Axiom parse_axiom(std::string_view text);

struct ViolationWitness {
  Axiom axiom = Axiom::kJR;
  std::vector<Voter> group;
  std::size_t agreement_size = 0;  // t, or tau for EJR+
  std::size_t cohesion_size = 0;   // sigma; |S| for JR/PJR/EJR
  std::size_t demand = 0;
  std::size_t observed = 0;  // sat_S for JR/PJR, max_i sat_i for EJR/EJR+
  std::optional<Round> offending_round;
};

struct AxiomReport {
  Axiom axiom = Axiom::kJR;
  bool holds = true;
  std::optional<ViolationWitness> witness;
  std::size_t groups_checked = 0;
};

struct VerifyLimits {
  // Largest per-round approver set whose subsets are enumerated. Every group
  // that agrees in some round lies inside one of these sets, so this also
  // covers all groups when n is at most this value.
  std::size_t max_exhaustive_voters = 16;
  std::size_t max_groups = 4'000'000;
};

// Precomputes every group that agrees in at least one round together with its
// demands, then checks outcomes against them. Throws CapabilityError when the
// enumeration would exceed the limits.
class AxiomChecker {
 public:
  struct Group {
    Bitset members;
    std::vector<Voter> list;
    Bitset agree;
    std::size_t t_max = 0;
    std::size_t demand = 0;  // floor(t_max * |S| / n)
    // Strongest EJR+ requirement over sigma.
    std::size_t plus_demand = 0;
    std::size_t plus_sigma = 0;
    std::size_t plus_tau = 0;
  };

  explicit AxiomChecker(const TemporalElection& election, VerifyLimits limits = {});

  AxiomReport check(const Outcome& outcome, Axiom axiom) const;
  bool holds(const Outcome& outcome, Axiom axiom) const { return check(outcome, axiom).holds; }

  const TemporalElection& election() const { return *election_; }
  std::size_t group_count() const { return groups_.size(); }
  // Largest floor(t_max(S) * |S| / n) over the agreeing groups.
  std::size_t max_demand() const { return max_demand_; }
  // Sorted by size, then by member indices.
  const std::vector<Group>& groups() const { return groups_; }

 private:
  const TemporalElection* election_;
  std::vector<Group> groups_;
  std::size_t max_demand_ = 0;
};

AxiomReport check_axiom(const TemporalElection& election, const Outcome& outcome, Axiom axiom,
                        VerifyLimits limits = {});

enum class CollapseClass { kNone, kLowDemand, kStatic };

struct CollapseInfo {
  CollapseClass cls = CollapseClass::kNone;
  bool low_demand = false;  // JR, PJR and EJR coincide
  bool is_static = false;   // EJR and EJR+ coincide
};

std::string_view collapse_name(CollapseClass cls);

// When demands cannot be bounded cheaply and the groups are too many to
// enumerate, low_demand is reported false.
CollapseInfo static_collapse_class(const TemporalElection& election, VerifyLimits limits = {});

struct HierarchyReport {
  bool jr = false;
  bool pjr = false;
  bool ejr = false;
  bool ejr_plus = false;
  bool consistent = true;  // EJR+ => EJR => PJR => JR
};

HierarchyReport cross_validate_axiom_hierarchy(const TemporalElection& election,
                                               const Outcome& outcome, VerifyLimits limits = {});

}  // namespace tvote
