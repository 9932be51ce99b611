#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tvote/axioms.hpp"
#include "tvote/election.hpp"
#include "tvote/ip.hpp"
#include "tvote/typed.hpp"

namespace tvote {

enum class SolverId {
  kAuto,
  kBrute,
  kJrIlp,
  kPjrIlp,
  kEjrIlp,
  kJrDp,
  kEjrDp,
  kPjrProfile,
  kJrRounding,
};

std::string_view solver_name(SolverId id);  // "brute", "jr-ilp", ...
SolverId parse_solver(std::string_view text);

struct SolverLimits {
  // Search nodes visited by the brute-force solver.
  std::uint64_t brute_nodes = 10'000'000;
  std::uint64_t ip_nodes = 10'000'000;
  // Stored dynamic-programming states, summed over rounds.
  std::uint64_t dp_states = 50'000'000;
  std::size_t max_types = 20;
  // Largest 2^m subset family enumerated for the static PJR program.
  std::size_t max_pjr_candidates = 20;
  // Largest number of class orderings tried by the static EJR program.
  std::uint64_t max_permutations = 40'320;
  VerifyLimits verify;
  // Receives the integer program behind an ILP-based result.
  IntegerProgram* dump_ip = nullptr;
};

struct SolverResult {
  bool feasible = false;  // false: no outcome satisfies the axiom
  Outcome outcome;
  std::size_t welfare = 0;
  Axiom axiom = Axiom::kJR;
  SolverId solver = SolverId::kAuto;
  // The outcome was re-checked by the axiom verifier. False only when the
  // verifier itself ran out of capability.
  bool certified = false;
};

// Per type union U (bitmask, U != 0): gamma_U agreement rounds, w(U) voters
// and demand d_U = floor(gamma_U * w(U) / n).
struct DemandTable {
  std::vector<std::size_t> gamma;
  std::vector<std::size_t> weight;
  std::vector<std::size_t> demand;
  std::size_t max_demand = 0;

  static DemandTable build(const TypedElection& typed, std::size_t max_types = 20);
};

enum class BruteMode {
  kClasses,    // one representative per class of welfare/axiom-equivalent outcomes
  kSequences,  // every sequence in P^l
};

// Exhaustive search; ties go to the lexicographically smallest outcome.
SolverResult brute_force_max_util(const TemporalElection& election, Axiom axiom,
                                  const SolverLimits& limits = {},
                                  BruteMode mode = BruteMode::kClasses);

// JR outcome that reserves the n cheapest rounds to represent every voter.
// Requires a complete election with l >= n.
SolverResult jr_reserve_rounding(const TemporalElection& election, const SolverLimits& limits = {});

SolverResult static_jr_ilp(const TemporalElection& election, const SolverLimits& limits = {});
SolverResult static_pjr_ilp(const TemporalElection& election, const SolverLimits& limits = {});
// Also exact for EJR+ on static elections.
SolverResult static_ejr_ilp(const TemporalElection& election, Axiom axiom = Axiom::kEJR,
                            const SolverLimits& limits = {});

SolverResult typed_jr_dp(const TypedElection& typed, const SolverLimits& limits = {});
// EJR, or EJR+ when the typed election is static.
SolverResult typed_ejr_dp(const TypedElection& typed, Axiom axiom = Axiom::kEJR,
                          const SolverLimits& limits = {});
// Uses the attached profiles, or derives them when absent.
SolverResult profile_pjr_ilp(const TypedElection& typed, const SolverLimits& limits = {});

// Dispatches to a solver. kAuto tries, in order, the profile program (PJR),
// the typed programs, the static programs and brute force, moving on when a
// solver does not apply or exceeds its budget.
SolverResult solve(const TemporalElection& election, Axiom axiom, SolverId solver,
                   const SolverLimits& limits = {});
SolverResult solve(const TypedElection& typed, Axiom axiom, SolverId solver,
                   const SolverLimits& limits = {});

}  // namespace tvote
