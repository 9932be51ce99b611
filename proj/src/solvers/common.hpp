#pragma once

#include <string>

#include "tvote/errors.hpp"
#include "tvote/solvers.hpp"

namespace tvote::detail {

// Fills in welfare and re-verifies the outcome. A verifier that runs out of
// capability leaves the result uncertified; a verifier that rejects the
// outcome indicates a solver bug.
inline SolverResult finish(const TemporalElection& election, Outcome outcome, Axiom axiom,
                           SolverId id, const VerifyLimits& limits) {
  SolverResult res;
  res.feasible = true;
  res.axiom = axiom;
  res.solver = id;
  res.welfare = utilitarian_welfare(election, outcome);
  try {
    const auto report = AxiomChecker(election, limits).check(outcome, axiom);
    if (!report.holds)
      throw InternalError(std::string(solver_name(id)) + " returned an outcome violating " +
                          std::string(axiom_name(axiom)));
    res.certified = true;
  } catch (const CapabilityError&) {
    res.certified = false;
  }
  res.outcome = std::move(outcome);
  return res;
}

inline SolverResult infeasible(Axiom axiom, SolverId id) {
  SolverResult res;
  res.axiom = axiom;
  res.solver = id;
  res.certified = true;
  return res;
}

inline void require_static(const TemporalElection& election, SolverId id) {
  if (!election.is_static())
    throw InputError(std::string(solver_name(id)) + " requires static preferences");
}

}  // namespace tvote::detail
