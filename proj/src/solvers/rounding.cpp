#include <algorithm>
#include <numeric>

#include "common.hpp"

namespace tvote {

SolverResult jr_reserve_rounding(const TemporalElection& election, const SolverLimits& limits) {
  const auto& e = election;
  const std::size_t n = e.num_voters();
  const std::size_t l = e.num_rounds();
  if (!e.is_complete()) throw InputError("jr-rounding requires a complete election");
  if (l < n) throw InputError("jr-rounding requires at least as many rounds as voters");

  const auto opt = max_welfare_unconstrained(e);
  std::vector<std::size_t> a(l);
  for (Round t = 0; t < l; ++t) a[t] = e.approval_count(t, opt.outcome.choices[t]);

  // B: the n rounds with the smallest maxima.
  std::vector<Round> order(l);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Round x, Round y) { return a[x] < a[y]; });
  std::vector<Round> reserved(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n));

  // T: the q rounds of B with the largest maxima keep their maximizers.
  std::size_t q = 0;
  for (Round t : reserved) q = std::max(q, a[t]);
  std::stable_sort(reserved.begin(), reserved.end(), [&](Round x, Round y) { return a[x] > a[y]; });
  std::vector<Round> rest(reserved.begin() + static_cast<std::ptrdiff_t>(q), reserved.end());
  std::sort(rest.begin(), rest.end());

  Outcome o = opt.outcome;
  Bitset satisfied(n);
  for (std::size_t k = 0; k < q; ++k) {
    const Round t = reserved[k];
    satisfied |= e.approvers(t, o.choices[t]);
  }

  // Each remaining reserved round serves the lowest unsatisfied voter with
  // its most approved candidate.
  for (Round t : rest) {
    Voter v = 0;
    while (v < n && satisfied.test(v)) ++v;
    if (v == n) continue;
    Candidate pick = 0;
    std::size_t best = 0;
    bool any = false;
    e.approval(v, t).for_each([&](std::size_t p) {
      if (!any || e.approval_count(t, p) > best) {
        pick = p;
        best = e.approval_count(t, p);
        any = true;
      }
    });
    o.choices[t] = pick;
    satisfied |= e.approvers(t, pick);
  }
  if (satisfied.count() != n) throw InternalError("jr-rounding left a voter unrepresented");
  return detail::finish(e, std::move(o), Axiom::kJR, SolverId::kJrRounding, limits.verify);
}

}  // namespace tvote
