#include "tvote/typed.hpp"

#include <map>

#include "tvote/errors.hpp"

namespace tvote {

TypedElection::TypedElection(std::vector<std::string> candidates, std::size_t num_rounds,
                             std::vector<VoterType> types,
                             std::optional<std::vector<std::vector<Round>>> profiles)
    : candidates_(std::move(candidates)),
      num_rounds_(num_rounds),
      types_(std::move(types)),
      profiles_(std::move(profiles)) {
  if (candidates_.empty()) throw InputError("a typed election needs at least one candidate");
  if (num_rounds_ == 0) throw InputError("a typed election needs at least one round");
  if (types_.empty()) throw InputError("a typed election needs at least one type");
  for (const auto& t : types_) {
    if (t.count == 0) throw InputError("type '" + t.id + "' has zero voters");
    if (t.rounds.size() != num_rounds_)
      throw InputError("type '" + t.id + "' must have one approval set per round");
    for (const auto& row : t.rounds)
      if (row.size() != candidates_.size())
        throw InputError("type '" + t.id + "' has a row over the wrong candidate universe");
    num_voters_ += t.count;
  }
  if (profiles_) {
    std::vector<bool> seen(num_rounds_, false);
    for (const auto& profile : *profiles_) {
      if (profile.empty()) throw InputError("profiles must be nonempty");
      for (Round r : profile) {
        if (r >= num_rounds_ || seen[r])
          throw InputError("profiles must partition the rounds");
        seen[r] = true;
        for (const auto& t : types_)
          if (!(t.rounds[r] == t.rounds[profile.front()]))
            throw InputError("rounds in one profile must have identical approval rows");
      }
    }
    for (bool s : seen)
      if (!s) throw InputError("profiles must cover every round");
  }
}

TypedElection TypedElection::from_election(const TemporalElection& election) {
  std::map<std::vector<Bitset>, std::size_t> index;  // rows -> type position
  std::vector<VoterType> types;
  for (Voter v = 0; v < election.num_voters(); ++v) {
    std::vector<Bitset> rows;
    rows.reserve(election.num_rounds());
    for (Round r = 0; r < election.num_rounds(); ++r) rows.push_back(election.approval(v, r));
    auto [it, inserted] = index.emplace(rows, types.size());
    if (inserted)
      types.push_back({"t" + std::to_string(types.size()), 0, std::move(rows)});
    ++types[it->second].count;
  }
  return TypedElection(election.candidates(), election.num_rounds(), std::move(types));
}

TypedElection TypedElection::with_derived_profiles() const {
  std::map<std::vector<Bitset>, std::size_t> index;
  std::vector<std::vector<Round>> profiles;
  for (Round r = 0; r < num_rounds_; ++r) {
    std::vector<Bitset> column;
    for (const auto& t : types_) column.push_back(t.rounds[r]);
    auto [it, inserted] = index.emplace(std::move(column), profiles.size());
    if (inserted) profiles.emplace_back();
    profiles[it->second].push_back(r);
  }
  return TypedElection(candidates_, num_rounds_, types_, std::move(profiles));
}

bool TypedElection::is_static() const {
  for (const auto& t : types_)
    for (Round r = 1; r < num_rounds_; ++r)
      if (!(t.rounds[r] == t.rounds[0])) return false;
  return true;
}

TemporalElection TypedElection::expand() const {
  std::vector<std::vector<std::vector<Candidate>>> approvals;
  approvals.reserve(num_voters_);
  for (const auto& t : types_) {
    std::vector<std::vector<Candidate>> rows;
    for (const auto& row : t.rounds) {
      auto idx = row.indices();
      rows.emplace_back(idx.begin(), idx.end());
    }
    for (std::size_t c = 0; c < t.count; ++c) approvals.push_back(rows);
  }
  return TemporalElection(candidates_, num_voters_, num_rounds_, approvals);
}

}  // namespace tvote
