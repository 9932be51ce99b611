#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "tvote/election.hpp"
#include "tvote/typed.hpp"

namespace tvote {

// Smallest k with k * k >= x.
std::size_t ceil_sqrt(std::size_t x);

// n = l voters: k = ceil(sqrt(l)) core voters approving {z, y_c_r} and l - k
// private voters approving {x_i_r} in round r.
TemporalElection gen_core_private(std::size_t num_rounds);

// Static: k = ceil(sqrt(n)) voters on {z}, n - k voters on private {p_i}.
// Requires l >= n.
TemporalElection gen_jr_tight(std::size_t num_voters, std::size_t num_rounds);

// Same electorate as gen_jr_tight over l = a * n rounds; requires a >= 2.
TemporalElection gen_separation(std::size_t num_voters, std::size_t a);

// Universe {1, ..., 3q} and a family of 3-element subsets.
struct X3cInstance {
  std::size_t q = 0;
  std::vector<std::array<std::size_t, 3>> triples;

  // Throws InputError unless every triple has three distinct elements of the
  // universe and every element is covered by some triple.
  void validate() const;
  bool has_exact_cover() const;  // exhaustive search
};

struct X3cReduction {
  TemporalElection election;
  std::size_t threshold = 0;  // B = 4l - q
};

X3cReduction gen_x3c_reduction(const X3cInstance& x3c);

struct CubicGraph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  // Throws InputError unless the graph is simple and 3-regular.
  void validate() const;
  std::size_t min_vertex_cover() const;  // exhaustive search
};

CubicGraph complete_graph_k4();
CubicGraph complete_bipartite_k33();

TemporalElection gen_vc_reduction(const CubicGraph& graph);

struct RandomParams {
  std::size_t num_voters = 4;
  std::size_t num_candidates = 3;
  std::size_t num_rounds = 4;
  double approval_probability = 0.4;
  bool is_static = false;
  bool complete = false;
  // Nonzero values produce a TypedElection with this many voter types and/or
  // round profiles.
  std::size_t type_count = 0;
  std::size_t profile_count = 0;
};

std::variant<TemporalElection, TypedElection> gen_random(const RandomParams& params,
                                                         std::uint64_t seed);

}  // namespace tvote
