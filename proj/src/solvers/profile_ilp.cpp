#include "common.hpp"
#include "typed_patterns.hpp"

namespace tvote {

SolverResult profile_pjr_ilp(const TypedElection& typed, const SolverLimits& limits) {
  const TypedElection profiled = typed.has_profiles() ? typed : typed.with_derived_profiles();
  const auto table = DemandTable::build(profiled, limits.max_types);
  const std::size_t full = std::size_t{1} << profiled.num_types();
  const auto& profiles = profiled.profiles();

  IntegerProgram ip;
  std::vector<std::vector<detail::RoundPattern>> patterns;
  std::vector<std::vector<std::size_t>> y;
  std::vector<LinearTerm> objective;
  for (std::size_t j = 0; j < profiles.size(); ++j) {
    patterns.push_back(detail::round_patterns(profiled, profiles[j].front()));
    const auto rounds = static_cast<std::int64_t>(profiles[j].size());
    y.emplace_back();
    std::vector<LinearTerm> total;
    for (const auto& x : patterns[j]) {
      y[j].push_back(ip.add_variable(
          "y_" + std::to_string(j) + "_" + profiled.candidates()[x.rep], 0, rounds));
      total.push_back({y[j].back(), 1});
      if (x.weight > 0) objective.push_back({y[j].back(), static_cast<std::int64_t>(x.weight)});
    }
    ip.add_constraint(total, Comparator::kEq, rounds);
  }
  for (std::size_t u = 1; u < full; ++u) {
    if (table.demand[u] == 0) continue;
    std::vector<LinearTerm> terms;
    for (std::size_t j = 0; j < profiles.size(); ++j)
      for (std::size_t k = 0; k < patterns[j].size(); ++k)
        if (patterns[j][k].mask & u) terms.push_back({y[j][k], 1});
    ip.add_constraint(terms, Comparator::kGe, static_cast<std::int64_t>(table.demand[u]));
  }
  ip.set_objective(objective);
  ip.normalize();
  if (limits.dump_ip) *limits.dump_ip = ip;

  IpOptions opt;
  opt.node_budget = limits.ip_nodes;
  const auto sol = solve_ip(ip, opt);
  if (sol.status != IpStatus::kOptimal) return detail::infeasible(Axiom::kPJR, SolverId::kPjrProfile);

  // Rounds of each profile are filled block by block in pattern order.
  Outcome o;
  o.choices.assign(profiled.num_rounds(), 0);
  for (std::size_t j = 0; j < profiles.size(); ++j) {
    std::size_t next = 0;
    for (std::size_t k = 0; k < patterns[j].size(); ++k)
      for (std::int64_t c = 0; c < sol.assignment[y[j][k]]; ++c)
        o.choices[profiles[j][next++]] = patterns[j][k].rep;
  }
  return detail::finish(profiled.expand(), std::move(o), Axiom::kPJR, SolverId::kPjrProfile,
                        limits.verify);
}

}  // namespace tvote
