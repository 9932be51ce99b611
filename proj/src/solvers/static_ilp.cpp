#include <algorithm>
#include <numeric>

#include "common.hpp"

namespace tvote {
namespace {

struct ApprovalClass {
  std::vector<Candidate> members;
  std::size_t voters = 0;
};

// Distinct nonempty static approval sets, in order of their first voter.
std::vector<ApprovalClass> approval_classes(const TemporalElection& e) {
  std::vector<Bitset> seen;
  std::vector<ApprovalClass> out;
  for (Voter v = 0; v < e.num_voters(); ++v) {
    const Bitset& row = e.approval(v, 0);
    if (row.none()) continue;
    auto it = std::find(seen.begin(), seen.end(), row);
    if (it == seen.end()) {
      seen.push_back(row);
      out.push_back({row.indices(), 1});
    } else {
      ++out[static_cast<std::size_t>(it - seen.begin())].voters;
    }
  }
  return out;
}

// x_p for every candidate, sum x_p = l, objective sum w(p) x_p.
std::vector<std::size_t> add_multiplicities(const TemporalElection& e, IntegerProgram& ip) {
  const auto l = static_cast<std::int64_t>(e.num_rounds());
  std::vector<std::size_t> x;
  std::vector<LinearTerm> total, objective;
  for (Candidate p = 0; p < e.num_candidates(); ++p) {
    x.push_back(ip.add_variable("x_" + e.candidate_name(p), 0, l));
    total.push_back({x.back(), 1});
    const auto w = static_cast<std::int64_t>(e.approval_count(0, p));
    if (w != 0) objective.push_back({x.back(), w});
  }
  ip.add_constraint(total, Comparator::kEq, l);
  ip.set_objective(objective);
  return x;
}

Outcome expand(const std::vector<std::int64_t>& assignment, std::size_t m) {
  MultiplicityVector mv;
  for (std::size_t p = 0; p < m; ++p) mv.counts.push_back(static_cast<std::size_t>(assignment[p]));
  return mv.to_outcome();
}

SolverResult solve_program(const TemporalElection& e, const IntegerProgram& ip, Axiom axiom,
                           SolverId id, const SolverLimits& limits) {
  if (limits.dump_ip) *limits.dump_ip = ip;
  IpOptions opt;
  opt.node_budget = limits.ip_nodes;
  const auto sol = solve_ip(ip, opt);
  if (sol.status != IpStatus::kOptimal) return detail::infeasible(axiom, id);
  return detail::finish(e, expand(sol.assignment, e.num_candidates()), axiom, id, limits.verify);
}

}  // namespace

SolverResult static_jr_ilp(const TemporalElection& election, const SolverLimits& limits) {
  const auto& e = election;
  detail::require_static(e, SolverId::kJrIlp);
  const auto n = static_cast<std::int64_t>(e.num_voters());
  const auto l = static_cast<std::int64_t>(e.num_rounds());
  const std::int64_t eta = (n + l - 1) / l;
  const auto classes = approval_classes(e);

  IntegerProgram ip;
  const auto x = add_multiplicities(e, ip);
  // y_C = 1 exactly when some candidate of C is selected.
  std::vector<std::size_t> y;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    y.push_back(ip.add_variable("y_" + std::to_string(c), 0, 1));
    std::vector<LinearTerm> lower{{y[c], -1}}, upper{{y[c], -l}};
    for (Candidate p : classes[c].members) {
      lower.push_back({x[p], 1});
      upper.push_back({x[p], 1});
    }
    ip.add_constraint(lower, Comparator::kGe, 0);
    ip.add_constraint(upper, Comparator::kLe, 0);
  }
  // Fewer than eta unsatisfied approvers of every candidate.
  for (Candidate p = 0; p < e.num_candidates(); ++p) {
    std::vector<LinearTerm> terms;
    std::int64_t total = 0;
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (std::binary_search(classes[c].members.begin(), classes[c].members.end(), p)) {
        const auto nc = static_cast<std::int64_t>(classes[c].voters);
        terms.push_back({y[c], nc});
        total += nc;
      }
    if (total <= eta - 1) continue;
    ip.add_constraint(terms, Comparator::kGe, total - (eta - 1));
  }
  return solve_program(e, ip, Axiom::kJR, SolverId::kJrIlp, limits);
}

SolverResult static_pjr_ilp(const TemporalElection& election, const SolverLimits& limits) {
  const auto& e = election;
  detail::require_static(e, SolverId::kPjrIlp);
  const std::size_t m = e.num_candidates();
  if (m > limits.max_pjr_candidates || m > 30)
    throw CapabilityError("pjr-ilp enumerates 2^m candidate subsets; m = " + std::to_string(m) +
                          " exceeds the limit of " + std::to_string(limits.max_pjr_candidates));
  const auto n = e.num_voters();
  const auto l = e.num_rounds();
  const auto classes = approval_classes(e);
  std::vector<std::uint32_t> mask;
  for (const auto& c : classes) {
    std::uint32_t bits = 0;
    for (Candidate p : c.members) bits |= std::uint32_t{1} << p;
    mask.push_back(bits);
  }

  IntegerProgram ip;
  const auto x = add_multiplicities(e, ip);
  for (std::uint32_t u = 1; u < (std::uint32_t{1} << m); ++u) {
    // g(U) and whether U is exactly the union of the classes attaining it;
    // any other U is implied by that smaller union.
    std::size_t g = 0;
    bool tight = false;
    for (Candidate c = 0; c < m; ++c) {
      if (!(u >> c & 1U)) continue;
      std::size_t count = 0;
      std::uint32_t cover = 0;
      for (std::size_t k = 0; k < classes.size(); ++k)
        if ((mask[k] >> c & 1U) && (mask[k] & ~u) == 0) {
          count += classes[k].voters;
          cover |= mask[k];
        }
      if (count > g) {
        g = count;
        tight = cover == u;
      } else if (count == g && cover == u) {
        tight = true;
      }
    }
    const std::size_t rhs = l * g / n;
    if (rhs == 0 || !tight) continue;
    std::vector<LinearTerm> terms;
    for (Candidate p = 0; p < m; ++p)
      if (u >> p & 1U) terms.push_back({x[p], 1});
    ip.add_constraint(terms, Comparator::kGe, static_cast<std::int64_t>(rhs));
  }
  ip.normalize();
  return solve_program(e, ip, Axiom::kPJR, SolverId::kPjrIlp, limits);
}

SolverResult static_ejr_ilp(const TemporalElection& election, Axiom axiom,
                            const SolverLimits& limits) {
  const auto& e = election;
  detail::require_static(e, SolverId::kEjrIlp);
  if (axiom != Axiom::kEJR && axiom != Axiom::kEJRPlus)
    throw InputError("ejr-ilp solves EJR and EJR+ only");
  const auto n = e.num_voters();
  const auto l = e.num_rounds();
  const auto classes = approval_classes(e);
  const std::size_t rho = classes.size();

  std::uint64_t perms = 1;
  for (std::size_t k = 2; k <= rho; ++k) {
    perms *= k;
    if (perms > limits.max_permutations)
      throw CapabilityError("ejr-ilp would try " + std::to_string(rho) +
                            "! class orderings, above the limit of " +
                            std::to_string(limits.max_permutations));
  }

  auto build = [&](const std::vector<std::size_t>& pi) {
    IntegerProgram ip;
    const auto x = add_multiplicities(e, ip);
    std::vector<std::size_t> v;
    for (std::size_t c = 0; c < rho; ++c) {
      v.push_back(ip.add_variable("v_" + std::to_string(c), 0, static_cast<std::int64_t>(l)));
      std::vector<LinearTerm> def{{v[c], 1}};
      for (Candidate p : classes[c].members) def.push_back({x[p], -1});
      ip.add_constraint(def, Comparator::kEq, 0);
    }
    for (std::size_t k = 0; k + 1 < rho; ++k)
      ip.add_constraint({{v[pi[k]], 1}, {v[pi[k + 1]], -1}}, Comparator::kLe, 0);
    // Boundary constraints along each candidate's subsequence of pi.
    for (Candidate p = 0; p < e.num_candidates(); ++p) {
      std::size_t h = 0;
      for (std::size_t c : pi) {
        const auto& mem = classes[c].members;
        if (!std::binary_search(mem.begin(), mem.end(), p)) continue;
        h += classes[c].voters;
        const std::size_t rhs = l * h / n;
        if (rhs > 0) ip.add_constraint({{v[c], 1}}, Comparator::kGe, static_cast<std::int64_t>(rhs));
      }
    }
    ip.normalize();
    return ip;
  };

  std::vector<std::size_t> pi(rho);
  std::iota(pi.begin(), pi.end(), 0);
  std::optional<std::vector<std::size_t>> winner;
  std::int64_t best = 0;
  do {
    IpOptions opt;
    opt.node_budget = limits.ip_nodes;
    opt.lexicographic = false;
    if (winner) opt.cutoff = best + 1;
    const auto sol = solve_ip(build(pi), opt);
    if (sol.status == IpStatus::kOptimal) {
      winner = pi;
      best = sol.value;
    }
  } while (std::next_permutation(pi.begin(), pi.end()));

  if (!winner) {
    if (limits.dump_ip) *limits.dump_ip = build(pi);
    return detail::infeasible(axiom, SolverId::kEjrIlp);
  }
  return solve_program(e, build(*winner), axiom, SolverId::kEjrIlp, limits);
}

}  // namespace tvote
