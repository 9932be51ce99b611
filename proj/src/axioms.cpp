#include "tvote/axioms.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "tvote/errors.hpp"

namespace tvote {
namespace {

// Distinct nonempty per-round approver sets, with sets contained in another
// kept set dropped (their subsets are enumerated anyway).
std::vector<Bitset> maximal_approver_sets(const TemporalElection& e) {
  std::unordered_set<Bitset, BitsetHash> distinct;
  for (Round r = 0; r < e.num_rounds(); ++r)
    for (Candidate p = 0; p < e.num_candidates(); ++p)
      if (e.approval_count(r, p) > 0) distinct.insert(e.approvers(r, p));
  std::vector<Bitset> sets(distinct.begin(), distinct.end());
  std::sort(sets.begin(), sets.end(), [](const Bitset& a, const Bitset& b) {
    auto ca = a.count(), cb = b.count();
    return ca != cb ? ca > cb : a < b;
  });
  std::vector<Bitset> kept;
  for (const auto& s : sets) {
    bool dominated = std::any_of(kept.begin(), kept.end(),
                                 [&](const Bitset& k) { return s.is_subset_of(k); });
    if (!dominated) kept.push_back(s);
  }
  return kept;
}

std::size_t largest_approver_set(const TemporalElection& e) {
  std::size_t best = 0;
  for (Round r = 0; r < e.num_rounds(); ++r)
    for (Candidate p = 0; p < e.num_candidates(); ++p)
      best = std::max(best, e.approval_count(r, p));
  return best;
}

}  // namespace

std::string_view axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::kJR: return "JR";
    case Axiom::kPJR: return "PJR";
    case Axiom::kEJR: return "EJR";
    case Axiom::kEJRPlus: return "EJR+";
  }
  return "?";
}

Axiom parse_axiom(std::string_view text) {
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "jr") return Axiom::kJR;
  if (s == "pjr") return Axiom::kPJR;
  if (s == "ejr") return Axiom::kEJR;
  if (s == "ejrplus" || s == "ejr+") return Axiom::kEJRPlus;
  throw InputError("unknown axiom '" + std::string(text) + "'");
}

std::string_view collapse_name(CollapseClass cls) {
  switch (cls) {
    case CollapseClass::kNone: return "NONE";
    case CollapseClass::kLowDemand: return "LOW_DEMAND";
    case CollapseClass::kStatic: return "STATIC";
  }
  return "?";
}

AxiomChecker::AxiomChecker(const TemporalElection& election, VerifyLimits limits)
    : election_(&election) {
  const auto& e = election;
  const std::size_t n = e.num_voters();
  const std::size_t widest = largest_approver_set(e);
  if (widest > limits.max_exhaustive_voters)
    throw CapabilityError("exhaustive verification would enumerate subsets of a " +
                          std::to_string(widest) + "-voter approver set (limit " +
                          std::to_string(limits.max_exhaustive_voters) + ")");

  // Every group agreeing in some round sits inside some approver set.
  std::unordered_set<Bitset, BitsetHash> seen;
  for (const Bitset& seed : maximal_approver_sets(e)) {
    const auto members = seed.indices();
    const std::uint64_t total = std::uint64_t{1} << members.size();
    for (std::uint64_t mask = 1; mask < total; ++mask) {
      Bitset g(n);
      for (std::size_t k = 0; k < members.size(); ++k)
        if (mask >> k & 1U) g.set(members[k]);
      seen.insert(std::move(g));
      if (seen.size() > limits.max_groups)
        throw CapabilityError("more than " + std::to_string(limits.max_groups) +
                                  " agreeing groups to enumerate",
                              seen.size());
    }
  }

  groups_.reserve(seen.size());
  for (const Bitset& g : seen) {
    Group grp;
    grp.members = g;
    grp.list = g.indices();
    groups_.push_back(std::move(grp));
  }
  std::sort(groups_.begin(), groups_.end(), [](const Group& a, const Group& b) {
    return a.list.size() != b.list.size() ? a.list.size() < b.list.size() : a.list < b.list;
  });

  std::vector<std::size_t> tally(e.num_candidates(), 0);
  std::vector<Candidate> touched;
  for (auto& grp : groups_) {
    grp.agree = agreement_rounds(e, grp.members);
    grp.t_max = grp.agree.count();
    grp.demand = grp.t_max * grp.list.size() / n;
    max_demand_ = std::max(max_demand_, grp.demand);

    // Per round, the largest number of group members approving one candidate.
    std::vector<std::size_t> top(e.num_rounds(), 0);
    for (Round r = 0; r < e.num_rounds(); ++r) {
      for (Voter v : grp.list)
        e.approval(v, r).for_each([&](std::size_t p) {
          if (tally[p]++ == 0) touched.push_back(p);
        });
      for (Candidate p : touched) {
        top[r] = std::max(top[r], tally[p]);
        tally[p] = 0;
      }
      touched.clear();
    }
    for (std::size_t sigma = 1; sigma <= grp.list.size(); ++sigma) {
      std::size_t tau = 0;
      for (auto c : top)
        if (c >= sigma) ++tau;
      if (tau * sigma < n) continue;
      const std::size_t d = tau * sigma / n;
      if (d > grp.plus_demand) {
        grp.plus_demand = d;
        grp.plus_sigma = sigma;
        grp.plus_tau = tau;
      }
    }
  }
}

AxiomReport AxiomChecker::check(const Outcome& outcome, Axiom axiom) const {
  const auto& e = *election_;
  const auto sat_rounds = satisfied_rounds(e, outcome);
  std::vector<std::size_t> sat(e.num_voters());
  for (Voter v = 0; v < e.num_voters(); ++v) sat[v] = sat_rounds[v].count();

  AxiomReport report;
  report.axiom = axiom;
  for (const auto& grp : groups_) {
    ++report.groups_checked;
    ViolationWitness w;
    w.axiom = axiom;
    bool violated = false;

    switch (axiom) {
      case Axiom::kJR:
      case Axiom::kPJR: {
        const std::size_t demand =
            axiom == Axiom::kJR ? std::min<std::size_t>(1, grp.demand) : grp.demand;
        if (demand == 0) break;
        Bitset covered(e.num_rounds());
        for (Voter v : grp.list) covered |= sat_rounds[v];
        const std::size_t observed = covered.count();
        if (observed < demand) {
          violated = true;
          w.agreement_size = grp.t_max;
          w.cohesion_size = grp.list.size();
          w.demand = demand;
          w.observed = observed;
        }
        break;
      }
      case Axiom::kEJR: {
        if (grp.demand == 0) break;
        std::size_t best = 0;
        for (Voter v : grp.list) best = std::max(best, sat[v]);
        if (best < grp.demand) {
          violated = true;
          w.agreement_size = grp.t_max;
          w.cohesion_size = grp.list.size();
          w.demand = grp.demand;
          w.observed = best;
        }
        break;
      }
      case Axiom::kEJRPlus: {
        if (grp.plus_demand == 0) break;
        std::size_t best = 0;
        for (Voter v : grp.list) best = std::max(best, sat[v]);
        if (best >= grp.plus_demand) break;
        for (Round r = grp.agree.find_first(); r < e.num_rounds(); r = grp.agree.find_next(r + 1)) {
          if (!grp.members.is_subset_of(e.approvers(r, outcome.choices[r]))) {
            violated = true;
            w.agreement_size = grp.plus_tau;
            w.cohesion_size = grp.plus_sigma;
            w.demand = grp.plus_demand;
            w.observed = best;
            w.offending_round = r;
            break;
          }
        }
        break;
      }
    }

    if (violated) {
      w.group = grp.list;
      report.holds = false;
      report.witness = std::move(w);
      return report;
    }
  }
  return report;
}

AxiomReport check_axiom(const TemporalElection& election, const Outcome& outcome, Axiom axiom,
                        VerifyLimits limits) {
  validate_outcome(election, outcome);
  return AxiomChecker(election, limits).check(outcome, axiom);
}

CollapseInfo static_collapse_class(const TemporalElection& election, VerifyLimits limits) {
  CollapseInfo info;
  info.is_static = election.is_static();
  const std::size_t n = election.num_voters();
  const std::size_t widest = largest_approver_set(election);
  if (election.num_rounds() * widest / n <= 1) {
    info.low_demand = true;
  } else {
    try {
      info.low_demand = AxiomChecker(election, limits).max_demand() <= 1;
    } catch (const CapabilityError&) {
      info.low_demand = false;
    }
  }
  if (info.low_demand)
    info.cls = CollapseClass::kLowDemand;
  else if (info.is_static)
    info.cls = CollapseClass::kStatic;
  return info;
}

HierarchyReport cross_validate_axiom_hierarchy(const TemporalElection& election,
                                               const Outcome& outcome, VerifyLimits limits) {
  validate_outcome(election, outcome);
  const AxiomChecker checker(election, limits);
  HierarchyReport h;
  h.jr = checker.holds(outcome, Axiom::kJR);
  h.pjr = checker.holds(outcome, Axiom::kPJR);
  h.ejr = checker.holds(outcome, Axiom::kEJR);
  h.ejr_plus = checker.holds(outcome, Axiom::kEJRPlus);
  h.consistent = (!h.ejr_plus || h.ejr) && (!h.ejr || h.pjr) && (!h.pjr || h.jr);
  return h;
}

}  // namespace tvote
