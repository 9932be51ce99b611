#include <algorithm>
#include <unordered_map>

#include "common.hpp"
#include "typed_patterns.hpp"

namespace tvote {
namespace detail {

std::vector<RoundPattern> round_patterns(const TypedElection& typed, Round r) {
  std::vector<RoundPattern> out;
  for (Candidate p = 0; p < typed.num_candidates(); ++p) {
    std::uint32_t mask = 0;
    std::size_t weight = 0;
    for (std::size_t t = 0; t < typed.num_types(); ++t)
      if (typed.approval(t, r).test(p)) {
        mask |= std::uint32_t{1} << t;
        weight += typed.type(t).count;
      }
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [&](const RoundPattern& x) { return x.mask == mask; });
    if (!seen) out.push_back({mask, weight, p});
  }
  return out;
}

void check_type_limit(const TypedElection& typed, std::size_t max_types) {
  if (typed.num_types() > max_types || typed.num_types() > 30)
    throw CapabilityError("typed solvers enumerate 2^kappa type sets; kappa = " +
                          std::to_string(typed.num_types()) + " exceeds the limit of " +
                          std::to_string(std::min<std::size_t>(max_types, 30)));
}

}  // namespace detail

DemandTable DemandTable::build(const TypedElection& typed, std::size_t max_types) {
  detail::check_type_limit(typed, max_types);
  const std::size_t kappa = typed.num_types();
  const std::size_t full = std::size_t{1} << kappa;
  DemandTable table;
  table.gamma.assign(full, 0);
  table.weight.assign(full, 0);
  table.demand.assign(full, 0);
  for (std::size_t u = 1; u < full; ++u) {
    const std::size_t low = static_cast<std::size_t>(std::countr_zero(u));
    table.weight[u] = table.weight[u & (u - 1)] + typed.type(low).count;
  }

  // Agreeing type sets per round; supersets of a disagreeing set disagree.
  for (Round r = 0; r < typed.num_rounds(); ++r) {
    auto grow = [&](auto&& self, std::size_t next, std::size_t mask, const Bitset& common) -> void {
      for (std::size_t t = next; t < kappa; ++t) {
        Bitset both = common & typed.approval(t, r);
        if (both.none()) continue;
        const std::size_t m2 = mask | (std::size_t{1} << t);
        ++table.gamma[m2];
        self(self, t + 1, m2, both);
      }
    };
    Bitset everything(typed.num_candidates());
    everything.fill();
    grow(grow, 0, 0, everything);
  }

  const std::size_t n = typed.num_voters();
  for (std::size_t u = 1; u < full; ++u) {
    table.demand[u] = table.gamma[u] * table.weight[u] / n;
    table.max_demand = std::max(table.max_demand, table.demand[u]);
  }
  return table;
}

namespace {

using detail::RoundPattern;

Outcome backtrack_outcome(const std::vector<std::vector<RoundPattern>>& patterns,
                          const std::vector<std::size_t>& picks) {
  Outcome o;
  for (std::size_t r = 0; r < picks.size(); ++r) o.choices.push_back(patterns[r][picks[r]].rep);
  return o;
}

}  // namespace

SolverResult typed_jr_dp(const TypedElection& typed, const SolverLimits& limits) {
  detail::check_type_limit(typed, limits.max_types);
  const std::size_t kappa = typed.num_types();
  const std::size_t l = typed.num_rounds();
  const std::size_t full = std::size_t{1} << kappa;
  if (static_cast<std::uint64_t>(full) * l > limits.dp_states)
    throw CapabilityError("jr-dp needs l * 2^kappa = " + std::to_string(full * l) +
                          " states, above the budget of " + std::to_string(limits.dp_states));

  const auto table = DemandTable::build(typed, limits.max_types);
  const std::size_t n = typed.num_voters();
  // covers[Y]: Y contains a JR-relevant union (tested at its largest t).
  std::vector<char> covers(full, 0);
  for (std::size_t u = 1; u < full; ++u) covers[u] = table.gamma[u] * table.weight[u] >= n;
  for (std::size_t b = 0; b < kappa; ++b)
    for (std::size_t y = 0; y < full; ++y)
      if (y >> b & 1U) covers[y] |= covers[y ^ (std::size_t{1} << b)];

  std::vector<std::vector<RoundPattern>> patterns;
  for (Round r = 0; r < l; ++r) patterns.push_back(detail::round_patterns(typed, r));

  // value[X] = best welfare with satisfied-type set X; parents per layer.
  std::vector<long long> value(full, -1), next(full);
  value[0] = 0;
  std::vector<std::vector<std::uint32_t>> parent(l, std::vector<std::uint32_t>(full));
  std::vector<std::vector<std::uint16_t>> pick(l, std::vector<std::uint16_t>(full));
  for (Round r = 0; r < l; ++r) {
    std::fill(next.begin(), next.end(), -1);
    for (std::size_t x = 0; x < full; ++x) {
      if (value[x] < 0) continue;
      for (std::size_t k = 0; k < patterns[r].size(); ++k) {
        const std::size_t y = x | patterns[r][k].mask;
        const long long v = value[x] + static_cast<long long>(patterns[r][k].weight);
        if (v > next[y]) {
          next[y] = v;
          parent[r][y] = static_cast<std::uint32_t>(x);
          pick[r][y] = static_cast<std::uint16_t>(k);
        }
      }
    }
    value.swap(next);
  }

  long long best = -1;
  std::size_t final_state = 0;
  for (std::size_t x = 0; x < full; ++x)
    if (value[x] > best && !covers[(full - 1) & ~x]) {
      best = value[x];
      final_state = x;
    }
  const TemporalElection expanded = typed.expand();
  if (best < 0) return detail::infeasible(Axiom::kJR, SolverId::kJrDp);

  std::vector<std::size_t> picks(l);
  std::size_t x = final_state;
  for (std::size_t r = l; r-- > 0;) {
    picks[r] = pick[r][x];
    x = parent[r][x];
  }
  return detail::finish(expanded, backtrack_outcome(patterns, picks), Axiom::kJR, SolverId::kJrDp,
                        limits.verify);
}

SolverResult typed_ejr_dp(const TypedElection& typed, Axiom axiom, const SolverLimits& limits) {
  if (axiom != Axiom::kEJR && axiom != Axiom::kEJRPlus)
    throw InputError("ejr-dp solves EJR, and EJR+ on static elections");
  if (axiom == Axiom::kEJRPlus && !typed.is_static())
    throw InputError("ejr-dp solves EJR+ only on static elections");
  const auto table = DemandTable::build(typed, limits.max_types);
  const std::size_t kappa = typed.num_types();
  const std::size_t l = typed.num_rounds();
  const std::size_t full = std::size_t{1} << kappa;

  // Satisfaction of type t only matters up to the largest demand of a union
  // containing t, so each coordinate is truncated there.
  std::vector<std::size_t> cap(kappa, 0);
  std::vector<std::pair<std::size_t, std::size_t>> binding;  // (U, d_U)
  for (std::size_t u = 1; u < full; ++u) {
    if (table.demand[u] == 0) continue;
    binding.emplace_back(u, table.demand[u]);
    for (std::size_t t = 0; t < kappa; ++t)
      if (u >> t & 1U) cap[t] = std::max(cap[t], table.demand[u]);
  }
  std::vector<std::uint64_t> radix(kappa, 1);
  {
    long double space = 1;
    for (std::size_t t = 0; t < kappa; ++t) {
      radix[t] = static_cast<std::uint64_t>(space);
      space *= static_cast<long double>(cap[t] + 1);
    }
    if (space > 1.8e19L) throw CapabilityError("ejr-dp state encoding overflows 64 bits");
  }
  auto digit = [&](std::uint64_t code, std::size_t t) { return code / radix[t] % (cap[t] + 1); };

  std::vector<std::vector<RoundPattern>> patterns;
  for (Round r = 0; r < l; ++r) patterns.push_back(detail::round_patterns(typed, r));

  struct Entry {
    std::uint64_t code;
    long long value;
    std::uint32_t parent;
    std::uint16_t pick;
  };
  std::vector<std::vector<Entry>> layers(l + 1);
  layers[0].push_back({0, 0, 0, 0});
  std::uint64_t stored = 1;
  for (Round r = 0; r < l; ++r) {
    std::unordered_map<std::uint64_t, std::uint32_t> where;
    auto& out = layers[r + 1];
    for (std::uint32_t i = 0; i < layers[r].size(); ++i) {
      const Entry& cur = layers[r][i];
      for (std::size_t k = 0; k < patterns[r].size(); ++k) {
        std::uint64_t code = cur.code;
        for (std::size_t t = 0; t < kappa; ++t)
          if ((patterns[r][k].mask >> t & 1U) && digit(code, t) < cap[t]) code += radix[t];
        const long long v = cur.value + static_cast<long long>(patterns[r][k].weight);
        auto [it, fresh] = where.emplace(code, static_cast<std::uint32_t>(out.size()));
        if (fresh) {
          out.push_back({code, v, i, static_cast<std::uint16_t>(k)});
          if (++stored > limits.dp_states)
            throw CapabilityError("ejr-dp exceeded its budget of " +
                                      std::to_string(limits.dp_states) + " states",
                                  stored);
        } else if (v > out[it->second].value) {
          out[it->second].value = v;
          out[it->second].parent = i;
          out[it->second].pick = static_cast<std::uint16_t>(k);
        }
      }
    }
  }

  long long best = -1;
  std::size_t final_index = 0;
  for (std::size_t i = 0; i < layers[l].size(); ++i) {
    const Entry& e = layers[l][i];
    if (e.value <= best) continue;
    const bool ok = std::all_of(binding.begin(), binding.end(), [&](const auto& b) {
      for (std::size_t t = 0; t < kappa; ++t)
        if ((b.first >> t & 1U) && digit(e.code, t) >= b.second) return true;
      return false;
    });
    if (ok) {
      best = e.value;
      final_index = i;
    }
  }
  const TemporalElection expanded = typed.expand();
  if (best < 0) return detail::infeasible(axiom, SolverId::kEjrDp);

  std::vector<std::size_t> picks(l);
  std::size_t idx = final_index;
  for (std::size_t r = l; r-- > 0;) {
    picks[r] = layers[r + 1][idx].pick;
    idx = layers[r + 1][idx].parent;
  }
  return detail::finish(expanded, backtrack_outcome(patterns, picks), axiom, SolverId::kEjrDp,
                        limits.verify);
}

}  // namespace tvote
