#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tvote/bitset.hpp"

namespace tvote {

using Candidate = std::size_t;
using Voter = std::size_t;
using Round = std::size_t;

// Hard ceiling on n * l * m; instances above it are rejected at construction.
inline constexpr std::uint64_t kDefaultCellBudget = 200'000'000;

// A temporal election: m candidates, n voters, l rounds and an approval set
// per (voter, round). Immutable after construction.
class TemporalElection {
 public:
  // approvals[v][r] lists the candidate indices voter v approves in round r.
  TemporalElection(std::vector<std::string> candidates, std::size_t num_voters,
                   std::size_t num_rounds,
                   const std::vector<std::vector<std::vector<Candidate>>>& approvals,
                   std::uint64_t cell_budget = kDefaultCellBudget);

  // Static preferences: approvals[v] is used in every round.
  static TemporalElection from_static(std::vector<std::string> candidates,
                                      std::size_t num_rounds,
                                      const std::vector<std::vector<Candidate>>& approvals,
                                      std::uint64_t cell_budget = kDefaultCellBudget);

  std::size_t num_candidates() const { return candidates_.size(); }
  std::size_t num_voters() const { return num_voters_; }
  std::size_t num_rounds() const { return num_rounds_; }

  const std::vector<std::string>& candidates() const { return candidates_; }
  const std::string& candidate_name(Candidate p) const { return candidates_[p]; }
  // Throws InputError for an unknown name.
  Candidate candidate_index(const std::string& name) const;

  // Approval set s_{v,r} as a bitset over candidates.
  const Bitset& approval(Voter v, Round r) const {
    return rows_[is_static_ ? v : v * num_rounds_ + r];
  }
  // Voters approving p in round r, as a bitset over voters.
  const Bitset& approvers(Round r, Candidate p) const {
    return approvers_[r * candidates_.size() + p];
  }
  std::size_t approval_count(Round r, Candidate p) const {
    return approver_counts_[r * candidates_.size() + p];
  }

  bool is_static() const { return is_static_; }
  bool is_complete() const { return is_complete_; }

  friend bool operator==(const TemporalElection& a, const TemporalElection& b);

 private:
  TemporalElection() = default;
  void finalize(std::uint64_t cell_budget);

  std::vector<std::string> candidates_;
  std::unordered_map<std::string, Candidate> index_;
  std::size_t num_voters_ = 0;
  std::size_t num_rounds_ = 0;
  bool is_static_ = false;
  bool is_complete_ = false;
  std::vector<Bitset> rows_;
  std::vector<Bitset> approvers_;
  std::vector<std::size_t> approver_counts_;
};

// o = (o_1, ..., o_l); repetition allowed.
struct Outcome {
  std::vector<Candidate> choices;

  friend bool operator==(const Outcome&, const Outcome&) = default;
  friend auto operator<=>(const Outcome&, const Outcome&) = default;
};

// Throws InputError unless the outcome has one valid candidate per round.
void validate_outcome(const TemporalElection& election, const Outcome& outcome);

// Candidate multiplicities x_p with sum l (static elections).
struct MultiplicityVector {
  std::vector<std::size_t> counts;

  static MultiplicityVector from_outcome(const TemporalElection& election, const Outcome& outcome);
  // Rounds ordered by candidate index.
  Outcome to_outcome() const;
};

// Per-voter set of rounds in which the voter approves the chosen candidate.
std::vector<Bitset> satisfied_rounds(const TemporalElection& election, const Outcome& outcome);

// sat_S(o_R).
std::size_t satisfaction(const TemporalElection& election, const Outcome& outcome,
                         const Bitset& voters, const Bitset& rounds);
std::size_t satisfaction(const TemporalElection& election, const Outcome& outcome,
                         std::span<const Voter> voters, std::span<const Round> rounds);
// sat_i(o) over all rounds.
std::size_t voter_satisfaction(const TemporalElection& election, const Outcome& outcome, Voter v);

std::size_t utilitarian_welfare(const TemporalElection& election, const Outcome& outcome);

// Rounds in which the group has a commonly approved candidate.
Bitset agreement_rounds(const TemporalElection& election, const Bitset& voters);
std::vector<Round> agreement_rounds(const TemporalElection& election,
                                    std::span<const Voter> voters);

struct WelfareOptimum {
  Outcome outcome;
  std::size_t value = 0;
};

// Per-round argmax; ties go to the lowest candidate index.
WelfareOptimum max_welfare_unconstrained(const TemporalElection& election);

// Replaces every round whose choice nobody approves by the lowest-index
// approved candidate of the lowest-index voter. Requires a complete election.
Outcome repair_empty_rounds(const TemporalElection& election, const Outcome& outcome);

Bitset all_voters(const TemporalElection& election);
Bitset all_rounds(const TemporalElection& election);

}  // namespace tvote
