#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tvote/bitset.hpp"
#include "tvote/election.hpp"

namespace tvote {

// A voter type: `count` voters sharing the same approval set in every round.
struct VoterType {
  std::string id;
  std::size_t count = 0;
  std::vector<Bitset> rounds;  // A_{type, r} over candidates, one per round
};

// Compressed election: voter types with multiplicities and, optionally, a
// partition of rounds into profiles (rounds whose per-type rows coincide).
class TypedElection {
 public:
  TypedElection(std::vector<std::string> candidates, std::size_t num_rounds,
                std::vector<VoterType> types,
                std::optional<std::vector<std::vector<Round>>> profiles = std::nullopt);

  // Groups voters with identical rows in every round; type order follows the
  // first voter of each type. No profiles are attached.
  static TypedElection from_election(const TemporalElection& election);

  const std::vector<std::string>& candidates() const { return candidates_; }
  std::size_t num_candidates() const { return candidates_.size(); }
  std::size_t num_rounds() const { return num_rounds_; }
  std::size_t num_types() const { return types_.size(); }
  std::size_t num_voters() const { return num_voters_; }
  const std::vector<VoterType>& types() const { return types_; }
  const VoterType& type(std::size_t t) const { return types_[t]; }
  const Bitset& approval(std::size_t t, Round r) const { return types_[t].rounds[r]; }

  bool has_profiles() const { return profiles_.has_value(); }
  const std::vector<std::vector<Round>>& profiles() const { return *profiles_; }
  // Same election with rounds grouped by identical per-type rows, in order of
  // each profile's first round.
  TypedElection with_derived_profiles() const;

  bool is_static() const;

  // Voters are laid out type-major: the `count` voters of type 0 first.
  TemporalElection expand() const;

 private:
  std::vector<std::string> candidates_;
  std::size_t num_rounds_;
  std::vector<VoterType> types_;
  std::optional<std::vector<std::vector<Round>>> profiles_;
  std::size_t num_voters_ = 0;
};

}  // namespace tvote
