#include <functional>

#include "common.hpp"

namespace tvote {
namespace {

constexpr std::pair<SolverId, std::string_view> kNames[] = {
    {SolverId::kAuto, "auto"},        {SolverId::kBrute, "brute"},
    {SolverId::kJrIlp, "jr-ilp"},     {SolverId::kPjrIlp, "pjr-ilp"},
    {SolverId::kEjrIlp, "ejr-ilp"},   {SolverId::kJrDp, "jr-dp"},
    {SolverId::kEjrDp, "ejr-dp"},     {SolverId::kPjrProfile, "pjr-profile"},
    {SolverId::kJrRounding, "jr-rounding"},
};

void require_axiom(SolverId id, Axiom axiom, std::initializer_list<Axiom> allowed) {
  for (Axiom a : allowed)
    if (a == axiom) return;
  throw InputError(std::string(solver_name(id)) + " does not solve " +
                   std::string(axiom_name(axiom)));
}

using Attempt = std::function<SolverResult()>;

// First attempt that fits its budget wins; the last failure propagates.
SolverResult first_within_budget(const std::vector<Attempt>& attempts) {
  for (std::size_t k = 0; k + 1 < attempts.size(); ++k) {
    try {
      return attempts[k]();
    } catch (const CapabilityError&) {
    }
  }
  return attempts.back()();
}

}  // namespace

std::string_view solver_name(SolverId id) {
  for (const auto& [k, name] : kNames)
    if (k == id) return name;
  return "?";
}

SolverId parse_solver(std::string_view text) {
  for (const auto& [k, name] : kNames)
    if (name == text) return k;
  throw InputError("unknown solver '" + std::string(text) + "'");
}

SolverResult solve(const TemporalElection& election, Axiom axiom, SolverId solver,
                   const SolverLimits& limits) {
  switch (solver) {
    case SolverId::kBrute:
      return brute_force_max_util(election, axiom, limits);
    case SolverId::kJrRounding:
      require_axiom(solver, axiom, {Axiom::kJR});
      return jr_reserve_rounding(election, limits);
    case SolverId::kJrIlp:
      require_axiom(solver, axiom, {Axiom::kJR});
      return static_jr_ilp(election, limits);
    case SolverId::kPjrIlp:
      require_axiom(solver, axiom, {Axiom::kPJR});
      return static_pjr_ilp(election, limits);
    case SolverId::kEjrIlp:
      return static_ejr_ilp(election, axiom, limits);
    case SolverId::kJrDp:
    case SolverId::kEjrDp:
    case SolverId::kPjrProfile:
      return solve(TypedElection::from_election(election), axiom, solver, limits);
    case SolverId::kAuto:
      break;
  }

  std::vector<Attempt> attempts;
  if (election.is_static()) {
    switch (axiom) {
      case Axiom::kJR:
        attempts.push_back([&] { return static_jr_ilp(election, limits); });
        break;
      case Axiom::kPJR:
        attempts.push_back([&] { return static_pjr_ilp(election, limits); });
        break;
      case Axiom::kEJR:
      case Axiom::kEJRPlus:
        attempts.push_back([&] { return static_ejr_ilp(election, axiom, limits); });
        attempts.push_back(
            [&] { return typed_ejr_dp(TypedElection::from_election(election), axiom, limits); });
        break;
    }
  }
  attempts.push_back([&] { return brute_force_max_util(election, axiom, limits); });
  return first_within_budget(attempts);
}

SolverResult solve(const TypedElection& typed, Axiom axiom, SolverId solver,
                   const SolverLimits& limits) {
  switch (solver) {
    case SolverId::kJrDp:
      require_axiom(solver, axiom, {Axiom::kJR});
      return typed_jr_dp(typed, limits);
    case SolverId::kEjrDp:
      return typed_ejr_dp(typed, axiom, limits);
    case SolverId::kPjrProfile:
      require_axiom(solver, axiom, {Axiom::kPJR});
      return profile_pjr_ilp(typed, limits);
    case SolverId::kAuto:
      break;
    default:
      return solve(typed.expand(), axiom, solver, limits);
  }

  std::vector<Attempt> attempts;
  switch (axiom) {
    case Axiom::kPJR:
      attempts.push_back([&] { return profile_pjr_ilp(typed, limits); });
      break;
    case Axiom::kJR:
      attempts.push_back([&] { return typed_jr_dp(typed, limits); });
      break;
    case Axiom::kEJR:
      attempts.push_back([&] { return typed_ejr_dp(typed, axiom, limits); });
      break;
    case Axiom::kEJRPlus:
      if (typed.is_static()) attempts.push_back([&] { return typed_ejr_dp(typed, axiom, limits); });
      break;
  }
  attempts.push_back([&] { return solve(typed.expand(), axiom, SolverId::kAuto, limits); });
  return first_within_budget(attempts);
}

}  // namespace tvote
