#include "tvote/election.hpp"

#include <algorithm>

#include "tvote/errors.hpp"

namespace tvote {
namespace {

Bitset make_row(std::size_t m, const std::vector<Candidate>& members) {
  Bitset row(m);
  for (Candidate p : members) {
    if (p >= m) throw InputError("approved candidate index " + std::to_string(p) + " out of range");
    row.set(p);
  }
  return row;
}

}  // namespace

TemporalElection::TemporalElection(
    std::vector<std::string> candidates, std::size_t num_voters, std::size_t num_rounds,
    const std::vector<std::vector<std::vector<Candidate>>>& approvals,
    std::uint64_t cell_budget) {
  candidates_ = std::move(candidates);
  num_voters_ = num_voters;
  num_rounds_ = num_rounds;
  if (approvals.size() != num_voters)
    throw InputError("approvals must have one entry per voter");
  const std::size_t m = candidates_.size();
  rows_.reserve(num_voters * num_rounds);
  for (Voter v = 0; v < num_voters; ++v) {
    if (approvals[v].size() != num_rounds)
      throw InputError("voter " + std::to_string(v) + " must have one approval set per round");
    for (Round r = 0; r < num_rounds; ++r) rows_.push_back(make_row(m, approvals[v][r]));
  }
  is_static_ = true;
  for (Voter v = 0; v < num_voters && is_static_; ++v)
    for (Round r = 1; r < num_rounds; ++r)
      if (!(rows_[v * num_rounds + r] == rows_[v * num_rounds])) {
        is_static_ = false;
        break;
      }
  if (is_static_) {
    std::vector<Bitset> compact;
    compact.reserve(num_voters);
    for (Voter v = 0; v < num_voters; ++v) compact.push_back(rows_[v * num_rounds]);
    rows_ = std::move(compact);
  }
  finalize(cell_budget);
}

TemporalElection TemporalElection::from_static(std::vector<std::string> candidates,
                                               std::size_t num_rounds,
                                               const std::vector<std::vector<Candidate>>& approvals,
                                               std::uint64_t cell_budget) {
  TemporalElection e;
  e.candidates_ = std::move(candidates);
  e.num_voters_ = approvals.size();
  e.num_rounds_ = num_rounds;
  e.is_static_ = true;
  for (const auto& a : approvals) e.rows_.push_back(make_row(e.candidates_.size(), a));
  e.finalize(cell_budget);
  return e;
}

void TemporalElection::finalize(std::uint64_t cell_budget) {
  const std::size_t m = candidates_.size();
  if (m == 0) throw InputError("an election needs at least one candidate");
  if (num_voters_ == 0) throw InputError("an election needs at least one voter");
  if (num_rounds_ == 0) throw InputError("an election needs at least one round");
  const auto cells = static_cast<long double>(m) * num_voters_ * num_rounds_;
  if (cells > static_cast<long double>(cell_budget))
    throw CapabilityError("instance size n*l*m exceeds the configured budget");

  for (Candidate p = 0; p < m; ++p) {
    if (!index_.emplace(candidates_[p], p).second)
      throw InputError("duplicate candidate identifier '" + candidates_[p] + "'");
  }

  is_complete_ = std::none_of(rows_.begin(), rows_.end(), [](const Bitset& b) { return b.none(); });

  approvers_.assign(num_rounds_ * m, Bitset(num_voters_));
  approver_counts_.assign(num_rounds_ * m, 0);
  for (Round r = 0; r < num_rounds_; ++r)
    for (Voter v = 0; v < num_voters_; ++v)
      approval(v, r).for_each([&](std::size_t p) {
        approvers_[r * m + p].set(v);
        ++approver_counts_[r * m + p];
      });
}

Candidate TemporalElection::candidate_index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw InputError("unknown candidate '" + name + "'");
  return it->second;
}

bool operator==(const TemporalElection& a, const TemporalElection& b) {
  if (a.candidates_ != b.candidates_ || a.num_voters_ != b.num_voters_ ||
      a.num_rounds_ != b.num_rounds_)
    return false;
  for (Voter v = 0; v < a.num_voters_; ++v)
    for (Round r = 0; r < a.num_rounds_; ++r)
      if (!(a.approval(v, r) == b.approval(v, r))) return false;
  return true;
}

void validate_outcome(const TemporalElection& election, const Outcome& outcome) {
  if (outcome.choices.size() != election.num_rounds())
    throw InputError("outcome has " + std::to_string(outcome.choices.size()) +
                     " choices but the election has " + std::to_string(election.num_rounds()) +
                     " rounds");
  for (Candidate p : outcome.choices)
    if (p >= election.num_candidates()) throw InputError("outcome names an unknown candidate");
}

MultiplicityVector MultiplicityVector::from_outcome(const TemporalElection& election,
                                                    const Outcome& outcome) {
  validate_outcome(election, outcome);
  MultiplicityVector x;
  x.counts.assign(election.num_candidates(), 0);
  for (Candidate p : outcome.choices) ++x.counts[p];
  return x;
}

Outcome MultiplicityVector::to_outcome() const {
  Outcome o;
  for (Candidate p = 0; p < counts.size(); ++p) o.choices.insert(o.choices.end(), counts[p], p);
  return o;
}

std::vector<Bitset> satisfied_rounds(const TemporalElection& election, const Outcome& outcome) {
  validate_outcome(election, outcome);
  std::vector<Bitset> sat(election.num_voters(), Bitset(election.num_rounds()));
  for (Round r = 0; r < election.num_rounds(); ++r)
    election.approvers(r, outcome.choices[r]).for_each([&](std::size_t v) { sat[v].set(r); });
  return sat;
}

std::size_t satisfaction(const TemporalElection& election, const Outcome& outcome,
                         const Bitset& voters, const Bitset& rounds) {
  validate_outcome(election, outcome);
  if (voters.size() != election.num_voters() || rounds.size() != election.num_rounds())
    throw InputError("voter/round set has the wrong universe size");
  std::size_t count = 0;
  rounds.for_each([&](std::size_t r) {
    if (election.approvers(r, outcome.choices[r]).intersects(voters)) ++count;
  });
  return count;
}

std::size_t satisfaction(const TemporalElection& election, const Outcome& outcome,
                         std::span<const Voter> voters, std::span<const Round> rounds) {
  if (voters.empty()) throw InputError("voter group must be nonempty");
  Bitset vs(election.num_voters()), rs(election.num_rounds());
  for (Voter v : voters) {
    if (v >= election.num_voters()) throw InputError("unknown voter " + std::to_string(v));
    vs.set(v);
  }
  for (Round r : rounds) {
    if (r >= election.num_rounds()) throw InputError("unknown round " + std::to_string(r));
    rs.set(r);
  }
  return satisfaction(election, outcome, vs, rs);
}

std::size_t voter_satisfaction(const TemporalElection& election, const Outcome& outcome, Voter v) {
  validate_outcome(election, outcome);
  if (v >= election.num_voters()) throw InputError("unknown voter " + std::to_string(v));
  std::size_t count = 0;
  for (Round r = 0; r < election.num_rounds(); ++r)
    if (election.approval(v, r).test(outcome.choices[r])) ++count;
  return count;
}

std::size_t utilitarian_welfare(const TemporalElection& election, const Outcome& outcome) {
  validate_outcome(election, outcome);
  std::size_t total = 0;
  for (Round r = 0; r < election.num_rounds(); ++r)
    total += election.approval_count(r, outcome.choices[r]);
  return total;
}

Bitset agreement_rounds(const TemporalElection& election, const Bitset& voters) {
  if (voters.size() != election.num_voters()) throw InputError("voter set has the wrong size");
  if (voters.none()) throw InputError("voter group must be nonempty");
  Bitset out(election.num_rounds());
  const Voter first = voters.find_first();
  for (Round r = 0; r < election.num_rounds(); ++r) {
    Bitset common = election.approval(first, r);
    voters.for_each([&](std::size_t v) { common &= election.approval(v, r); });
    if (common.any()) out.set(r);
  }
  return out;
}

std::vector<Round> agreement_rounds(const TemporalElection& election,
                                    std::span<const Voter> voters) {
  Bitset vs(election.num_voters());
  for (Voter v : voters) {
    if (v >= election.num_voters()) throw InputError("unknown voter " + std::to_string(v));
    vs.set(v);
  }
  auto rounds = agreement_rounds(election, vs).indices();
  return {rounds.begin(), rounds.end()};
}

WelfareOptimum max_welfare_unconstrained(const TemporalElection& election) {
  WelfareOptimum best;
  best.outcome.choices.resize(election.num_rounds(), 0);
  for (Round r = 0; r < election.num_rounds(); ++r) {
    std::size_t top = 0;
    Candidate arg = 0;
    for (Candidate p = 0; p < election.num_candidates(); ++p) {
      if (election.approval_count(r, p) > top) {
        top = election.approval_count(r, p);
        arg = p;
      }
    }
    best.outcome.choices[r] = arg;
    best.value += top;
  }
  return best;
}

Outcome repair_empty_rounds(const TemporalElection& election, const Outcome& outcome) {
  validate_outcome(election, outcome);
  if (!election.is_complete())
    throw InputError("repair_empty_rounds requires a complete election");
  Outcome repaired = outcome;
  for (Round r = 0; r < election.num_rounds(); ++r) {
    if (election.approval_count(r, repaired.choices[r]) == 0)
      repaired.choices[r] = election.approval(0, r).find_first();
  }
  return repaired;
}

Bitset all_voters(const TemporalElection& election) {
  Bitset b(election.num_voters());
  b.fill();
  return b;
}

Bitset all_rounds(const TemporalElection& election) {
  Bitset b(election.num_rounds());
  b.fill();
  return b;
}

}  // namespace tvote
