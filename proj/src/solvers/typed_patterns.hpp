#pragma once

#include <cstdint>
#include <vector>

#include "tvote/typed.hpp"

namespace tvote::detail {

// A distinct set of approving types in one round, realized first by `rep`.
struct RoundPattern {
  std::uint32_t mask = 0;
  std::size_t weight = 0;
  Candidate rep = 0;
};

std::vector<RoundPattern> round_patterns(const TypedElection& typed, Round r);

void check_type_limit(const TypedElection& typed, std::size_t max_types);

}  // namespace tvote::detail
