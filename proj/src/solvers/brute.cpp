#include <algorithm>
#include <limits>
#include <map>

#include "common.hpp"

namespace tvote {
namespace {

constexpr std::size_t kNoLoss = std::numeric_limits<std::size_t>::max();

struct Pattern {
  Bitset voters;
  std::size_t weight = 0;
  Candidate rep = 0;
};

// Rounds whose per-candidate approver sets coincide. Outcomes that differ
// only by permuting choices inside a profile, or by swapping candidates with
// equal approver sets, have the same welfare and the same axiom verdicts.
struct Profile {
  std::vector<Round> rounds;
  std::vector<Pattern> patterns;
  std::size_t max_weight = 0;
};

std::vector<Profile> build_profiles(const TemporalElection& e, std::vector<std::size_t>& of_round) {
  std::map<std::vector<Bitset>, std::size_t> index;
  std::vector<Profile> profiles;
  of_round.assign(e.num_rounds(), 0);
  for (Round r = 0; r < e.num_rounds(); ++r) {
    std::vector<Bitset> key;
    for (Candidate p = 0; p < e.num_candidates(); ++p) key.push_back(e.approvers(r, p));
    auto [it, fresh] = index.emplace(key, profiles.size());
    if (fresh) {
      Profile prof;
      for (Candidate p = 0; p < e.num_candidates(); ++p) {
        const bool seen = std::any_of(prof.patterns.begin(), prof.patterns.end(),
                                      [&](const Pattern& x) { return x.voters == key[p]; });
        if (seen) continue;
        prof.patterns.push_back({key[p], key[p].count(), p});
        prof.max_weight = std::max(prof.max_weight, key[p].count());
      }
      profiles.push_back(std::move(prof));
    }
    profiles[it->second].rounds.push_back(r);
    of_round[r] = it->second;
  }
  return profiles;
}

class ClassSearch {
 public:
  ClassSearch(const TemporalElection& e, const AxiomChecker& checker, Axiom axiom,
              std::uint64_t budget)
      : e_(e), checker_(checker), axiom_(axiom), budget_(budget) {
    profiles_ = build_profiles(e, of_round_);
    const std::size_t q = profiles_.size();
    const std::size_t l = e.num_rounds();

    remaining_.assign(l + 1, std::vector<std::size_t>(q, 0));
    rest_max_.assign(l + 1, 0);
    for (std::size_t k = l; k-- > 0;) {
      remaining_[k] = remaining_[k + 1];
      ++remaining_[k][of_round_[k]];
      rest_max_[k] = rest_max_[k + 1] + profiles_[of_round_[k]].max_weight;
    }

    // Coverage requirements implied by the axiom. EJR and EJR+ imply the
    // PJR requirement, which is all the bound below uses.
    for (const auto& g : checker.groups()) {
      const std::size_t need = axiom == Axiom::kJR ? std::min<std::size_t>(1, g.demand) : g.demand;
      if (need == 0) continue;
      Need nd;
      nd.members = &g.members;
      nd.need = need;
      for (std::size_t j = 0; j < q; ++j) {
        std::size_t best = 0;
        bool any = false;
        for (const auto& x : profiles_[j].patterns)
          if (x.voters.intersects(g.members)) {
            any = true;
            best = std::max(best, x.weight);
          }
        nd.loss.push_back(any ? profiles_[j].max_weight - best : kNoLoss);
      }
      for (std::size_t j = 0; j < q; ++j)
        if (nd.loss[j] != kNoLoss) nd.by_loss.push_back(j);
      std::stable_sort(nd.by_loss.begin(), nd.by_loss.end(),
                       [&](std::size_t a, std::size_t b) { return nd.loss[a] < nd.loss[b]; });
      needs_.push_back(std::move(nd));
    }
    hits_.resize(q);
    for (std::size_t j = 0; j < q; ++j) {
      hits_[j].resize(profiles_[j].patterns.size());
      for (std::size_t t = 0; t < profiles_[j].patterns.size(); ++t)
        for (std::size_t g = 0; g < needs_.size(); ++g)
          if (profiles_[j].patterns[t].voters.intersects(*needs_[g].members)) hits_[j][t].push_back(g);
    }

    // Voters that some remaining pattern serves together with voter i.
    const std::size_t n = e.num_voters();
    std::vector<std::vector<Bitset>> adj_of(q, std::vector<Bitset>(n, Bitset(n)));
    for (std::size_t j = 0; j < q; ++j)
      for (const auto& x : profiles_[j].patterns) x.voters.for_each([&](std::size_t i) { adj_of[j][i] |= x.voters; });
    adjacency_.assign(l + 1, std::vector<Bitset>(n, Bitset(n)));
    for (std::size_t k = 0; k <= l; ++k)
      for (std::size_t j = 0; j < q; ++j)
        if (remaining_[k][j] > 0)
          for (std::size_t i = 0; i < n; ++i) adjacency_[k][i] |= adj_of[j][i];

    coverage_.assign(needs_.size(), 0);
    choice_.assign(l, 0);
    last_rank_.assign(q, 0);
  }

  // Largest feasible welfare, if any.
  std::optional<std::size_t> best_value() {
    order_by_weight();
    best_ = -1;
    target_.reset();
    dfs(0, 0);
    if (best_ < 0) return std::nullopt;
    return static_cast<std::size_t>(best_);
  }

  // Lexicographically smallest feasible outcome of the given welfare.
  Outcome smallest_with_value(std::size_t value) {
    order_by_candidate();
    target_ = value;
    found_.reset();
    dfs(0, 0);
    if (!found_) throw InternalError("brute force lost its optimum");
    return *found_;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Need {
    const Bitset* members = nullptr;
    std::size_t need = 0;
    std::vector<std::size_t> loss;     // per profile
    std::vector<std::size_t> by_loss;  // servable profiles, cheapest first
  };

  void order_by_weight() {
    set_order([](const Pattern& a, const Pattern& b) {
      return a.weight != b.weight ? a.weight > b.weight : a.rep < b.rep;
    });
  }
  void order_by_candidate() {
    set_order([](const Pattern& a, const Pattern& b) { return a.rep < b.rep; });
  }
  template <class Less>
  void set_order(Less less) {
    order_.assign(profiles_.size(), {});
    suffix_max_.assign(profiles_.size(), {});
    for (std::size_t j = 0; j < profiles_.size(); ++j) {
      auto& ord = order_[j];
      const auto& pats = profiles_[j].patterns;
      for (std::size_t t = 0; t < pats.size(); ++t) ord.push_back(t);
      std::stable_sort(ord.begin(), ord.end(),
                       [&](std::size_t a, std::size_t b) { return less(pats[a], pats[b]); });
      auto& suf = suffix_max_[j];
      suf.assign(ord.size() + 1, 0);
      for (std::size_t t = ord.size(); t-- > 0;) suf[t] = std::max(suf[t + 1], pats[ord[t]].weight);
    }
  }

  // Upper bound on the welfare of any completion that can still meet every
  // coverage requirement; nullopt when some requirement is out of reach.
  std::optional<std::size_t> bound(std::size_t k, std::size_t welfare) const {
    std::size_t restricted = welfare;
    for (std::size_t j = 0; j < profiles_.size(); ++j)
      restricted += remaining_[k][j] * suffix_max_[j][last_rank_[j]];

    // Groups still short of their requirement pay at least their cheapest
    // losses. Groups that no remaining pattern serves jointly pay separately.
    std::vector<std::pair<std::size_t, std::size_t>> short_groups;  // (loss, group)
    for (std::size_t g = 0; g < needs_.size(); ++g) {
      if (coverage_[g] >= needs_[g].need) continue;
      std::size_t missing = needs_[g].need - coverage_[g];
      std::size_t loss = 0;
      for (std::size_t j : needs_[g].by_loss) {
        const std::size_t take = std::min(missing, remaining_[k][j]);
        loss += take * needs_[g].loss[j];
        missing -= take;
        if (missing == 0) break;
      }
      if (missing > 0) return std::nullopt;
      if (loss > 0) short_groups.emplace_back(loss, g);
    }
    std::stable_sort(short_groups.begin(), short_groups.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::size_t total_loss = 0;
    std::vector<std::size_t> chosen;
    const std::size_t n = e_.num_voters();
    for (const auto& [loss, g] : short_groups) {
      const Bitset& members = *needs_[g].members;
      Bitset reach(n);
      members.for_each([&](std::size_t i) { reach |= adjacency_[k][i]; });
      reach |= members;
      const bool separate = std::none_of(chosen.begin(), chosen.end(), [&](std::size_t h) {
        return reach.intersects(*needs_[h].members);
      });
      if (!separate) continue;
      chosen.push_back(g);
      total_loss += loss;
    }
    const std::size_t open = welfare + rest_max_[k];
    return std::min(restricted, open - std::min(open, total_loss));
  }

  void dfs(std::size_t k, std::size_t welfare) {
    if (++nodes_ > budget_)
      throw CapabilityError("brute-force search exceeded its budget of " + std::to_string(budget_) +
                                " nodes",
                            nodes_);
    const auto ub = bound(k, welfare);
    if (!ub) return;
    if (target_ ? *ub < *target_ : static_cast<long long>(*ub) <= best_) return;

    if (k == e_.num_rounds()) {
      if (target_ ? welfare != *target_ : static_cast<long long>(welfare) <= best_) return;
      Outcome o;
      for (Round r = 0; r < e_.num_rounds(); ++r)
        o.choices.push_back(profiles_[of_round_[r]].patterns[choice_[r]].rep);
      if (!checker_.holds(o, axiom_)) return;
      if (target_)
        found_ = std::move(o);
      else
        best_ = static_cast<long long>(welfare);
      return;
    }

    const std::size_t j = of_round_[k];
    const std::size_t saved = last_rank_[j];
    const auto& ord = order_[j];
    for (std::size_t t = saved; t < ord.size(); ++t) {
      const std::size_t pat = ord[t];
      for (std::size_t g : hits_[j][pat]) ++coverage_[g];
      choice_[k] = pat;
      last_rank_[j] = t;
      dfs(k + 1, welfare + profiles_[j].patterns[pat].weight);
      for (std::size_t g : hits_[j][pat]) --coverage_[g];
      if (found_) break;
    }
    last_rank_[j] = saved;
  }

  const TemporalElection& e_;
  const AxiomChecker& checker_;
  Axiom axiom_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;

  std::vector<Profile> profiles_;
  std::vector<std::size_t> of_round_;
  std::vector<std::vector<std::size_t>> remaining_;  // [position][profile]
  std::vector<std::size_t> rest_max_;                // [position]
  std::vector<Need> needs_;
  std::vector<std::vector<std::vector<std::size_t>>> hits_;  // [profile][pattern] -> groups
  std::vector<std::vector<Bitset>> adjacency_;               // [position][voter]

  std::vector<std::vector<std::size_t>> order_;
  std::vector<std::vector<std::size_t>> suffix_max_;
  std::vector<std::size_t> coverage_;
  std::vector<std::size_t> choice_;
  std::vector<std::size_t> last_rank_;

  long long best_ = -1;
  std::optional<std::size_t> target_;
  std::optional<Outcome> found_;
};

SolverResult sequences(const TemporalElection& e, const AxiomChecker& checker, Axiom axiom,
                       std::uint64_t budget) {
  const std::size_t m = e.num_candidates();
  const std::size_t l = e.num_rounds();
  std::uint64_t total = 1;
  for (std::size_t r = 0; r < l; ++r) {
    if (total > budget / m)
      throw CapabilityError("m^l outcomes exceed the brute-force budget of " + std::to_string(budget));
    total *= m;
  }

  std::optional<Outcome> best;
  std::size_t best_welfare = 0;
  Outcome o;
  o.choices.assign(l, 0);
  while (true) {
    const auto w = utilitarian_welfare(e, o);
    if ((!best || w > best_welfare) && checker.holds(o, axiom)) {
      best = o;
      best_welfare = w;
    }
    std::size_t r = l;
    while (r > 0 && o.choices[r - 1] + 1 == m) o.choices[--r] = 0;
    if (r == 0) break;
    ++o.choices[r - 1];
  }
  if (!best) return detail::infeasible(axiom, SolverId::kBrute);
  SolverResult res;
  res.feasible = true;
  res.outcome = *best;
  return res;
}

}  // namespace

SolverResult brute_force_max_util(const TemporalElection& election, Axiom axiom,
                                  const SolverLimits& limits, BruteMode mode) {
  const AxiomChecker checker(election, limits.verify);
  Outcome winner;
  if (mode == BruteMode::kSequences) {
    auto res = sequences(election, checker, axiom, limits.brute_nodes);
    if (!res.feasible) return res;
    winner = std::move(res.outcome);
  } else {
    ClassSearch search(election, checker, axiom, limits.brute_nodes);
    const auto value = search.best_value();
    if (!value) return detail::infeasible(axiom, SolverId::kBrute);
    winner = search.smallest_with_value(*value);
  }
  return detail::finish(election, std::move(winner), axiom, SolverId::kBrute, limits.verify);
}

}  // namespace tvote
