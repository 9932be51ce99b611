#include "tvote/generators.hpp"

#include <algorithm>
#include <string>

#include "tvote/errors.hpp"
#include "tvote/rng.hpp"

namespace tvote {
namespace {

// 1-based index padded to the width of `count`.
std::string padded(std::size_t index, std::size_t count) {
  std::string s = std::to_string(index);
  const std::size_t width = std::to_string(count).size();
  return std::string(width - std::min(width, s.size()), '0') + s;
}

TemporalElection core_and_private(std::size_t n, std::size_t l) {
  const std::size_t k = ceil_sqrt(n);
  std::vector<std::string> names{"z"};
  for (std::size_t i = 1; i <= n - k; ++i) names.push_back("p_" + padded(i, n - k));
  std::vector<std::vector<Candidate>> rows;
  for (std::size_t c = 0; c < k; ++c) rows.push_back({0});
  for (std::size_t i = 1; i <= n - k; ++i) rows.push_back({i});
  return TemporalElection::from_static(std::move(names), l, rows);
}

}  // namespace

std::size_t ceil_sqrt(std::size_t x) {
  std::size_t k = 0;
  while (k * k < x) ++k;
  return k;
}

TemporalElection gen_core_private(std::size_t l) {
  if (l == 0) throw InputError("core-private needs at least one round");
  const std::size_t n = l;
  const std::size_t k = ceil_sqrt(l);
  const std::size_t d = n - k;
  std::vector<std::string> names{"z"};
  // x_{i,r} for private voters, then y_{c,r} for core voters.
  auto x_id = [&](std::size_t i, std::size_t r) { return 1 + i * l + r; };
  auto y_id = [&](std::size_t c, std::size_t r) { return 1 + d * l + c * l + r; };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t r = 0; r < l; ++r) names.push_back("x_" + padded(i + 1, d) + "_" + padded(r + 1, l));
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < l; ++r) names.push_back("y_" + padded(c + 1, k) + "_" + padded(r + 1, l));

  std::vector<std::vector<std::vector<Candidate>>> approvals(n);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < l; ++r) approvals[c].push_back({0, y_id(c, r)});
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t r = 0; r < l; ++r) approvals[k + i].push_back({x_id(i, r)});
  return TemporalElection(std::move(names), n, l, approvals);
}

TemporalElection gen_jr_tight(std::size_t n, std::size_t l) {
  if (n == 0) throw InputError("jr-tight needs at least one voter");
  if (l < n) throw InputError("jr-tight requires l >= n");
  return core_and_private(n, l);
}

TemporalElection gen_separation(std::size_t n, std::size_t a) {
  if (n == 0) throw InputError("separation needs at least one voter");
  if (a < 2) throw InputError("separation requires a >= 2");
  return core_and_private(n, a * n);
}

void X3cInstance::validate() const {
  if (q == 0) throw InputError("X3C instance needs q >= 1");
  const std::size_t u = 3 * q;
  std::vector<bool> covered(u + 1, false);
  for (const auto& t : triples) {
    for (std::size_t e : t)
      if (e < 1 || e > u) throw InputError("X3C element " + std::to_string(e) + " outside 1.." + std::to_string(u));
    if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2])
      throw InputError("X3C triples must have three distinct elements");
    for (std::size_t e : t) covered[e] = true;
  }
  for (std::size_t e = 1; e <= u; ++e)
    if (!covered[e]) throw InputError("X3C element " + std::to_string(e) + " is in no triple");
}

bool X3cInstance::has_exact_cover() const {
  validate();
  const std::size_t u = 3 * q;
  std::vector<bool> used(u + 1, false);
  // Branch on the smallest uncovered element.
  auto search = [&](auto&& self) -> bool {
    std::size_t e = 1;
    while (e <= u && used[e]) ++e;
    if (e > u) return true;
    for (const auto& t : triples) {
      if (std::find(t.begin(), t.end(), e) == t.end()) continue;
      if (used[t[0]] || used[t[1]] || used[t[2]]) continue;
      for (std::size_t x : t) used[x] = true;
      const bool ok = self(self);
      for (std::size_t x : t) used[x] = false;
      if (ok) return true;
    }
    return false;
  };
  return search(search);
}

X3cReduction gen_x3c_reduction(const X3cInstance& x3c) {
  x3c.validate();
  const std::size_t q = x3c.q;
  const std::size_t u = 3 * q;
  const std::size_t sets = x3c.triples.size();
  const std::size_t l = 3 * q + 2;

  std::vector<std::string> names;
  for (std::size_t j = 1; j <= sets; ++j) names.push_back("c_" + padded(j, sets));
  for (std::size_t e = 1; e <= u; ++e) names.push_back("p_" + padded(e, u));
  names.push_back("z");
  const Candidate z = sets + u;

  std::vector<std::vector<Candidate>> rows;
  for (std::size_t e = 1; e <= u; ++e) {
    std::vector<Candidate> x{sets + e - 1};
    for (std::size_t j = 0; j < sets; ++j) {
      const auto& t = x3c.triples[j];
      if (std::find(t.begin(), t.end(), e) != t.end()) x.push_back(j);
    }
    std::sort(x.begin(), x.end());
    rows.push_back(x);
    rows.push_back({sets + e - 1});
    rows.push_back({sets + e - 1});
  }
  for (int d = 0; d < 4; ++d) rows.push_back({z});
  return {TemporalElection::from_static(std::move(names), l, rows), 4 * l - q};
}

void CubicGraph::validate() const {
  if (vertices == 0) throw InputError("graph needs at least one vertex");
  std::vector<std::size_t> degree(vertices, 0);
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  for (auto [a, b] : edges) {
    if (a >= vertices || b >= vertices) throw InputError("edge endpoint out of range");
    if (a == b) throw InputError("graph must not have loops");
    auto key = std::minmax(a, b);
    if (std::find(seen.begin(), seen.end(), std::pair{key.first, key.second}) != seen.end())
      throw InputError("graph must not have parallel edges");
    seen.emplace_back(key.first, key.second);
    ++degree[a];
    ++degree[b];
  }
  for (std::size_t v = 0; v < vertices; ++v)
    if (degree[v] != 3)
      throw InputError("graph is not cubic: vertex " + std::to_string(v) + " has degree " +
                       std::to_string(degree[v]));
}

std::size_t CubicGraph::min_vertex_cover() const {
  validate();
  if (vertices > 30) throw CapabilityError("vertex cover search is limited to 30 vertices");
  std::size_t best = vertices;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vertices); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size >= best) continue;
    const bool covers = std::all_of(edges.begin(), edges.end(), [&](const auto& e) {
      return (mask >> e.first & 1U) || (mask >> e.second & 1U);
    });
    if (covers) best = size;
  }
  return best;
}

CubicGraph complete_graph_k4() {
  return {4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
}

CubicGraph complete_bipartite_k33() {
  CubicGraph g{6, {}};
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 3; b < 6; ++b) g.edges.emplace_back(a, b);
  return g;
}

TemporalElection gen_vc_reduction(const CubicGraph& graph) {
  graph.validate();
  const std::size_t m = graph.vertices;
  const std::size_t edges = graph.edges.size();
  std::vector<std::string> names{"z"};
  for (std::size_t v = 1; v <= m; ++v) names.push_back("c_" + padded(v, m));
  for (std::size_t e = 1; e <= edges; ++e) names.push_back("p_" + padded(e, edges));
  auto c = [](std::size_t v) { return 1 + v; };
  auto p = [&](std::size_t e) { return 1 + m + e; };

  std::vector<std::vector<Candidate>> rows;
  for (int b = 0; b < 8; ++b) rows.push_back({0});
  for (std::size_t v = 0; v < m; ++v) {
    rows.push_back({c(v)});
    rows.push_back({c(v)});
  }
  for (std::size_t e = 0; e < edges; ++e) {
    for (int k = 0; k < 3; ++k) rows.push_back({p(e)});
    auto [a, b] = std::minmax(graph.edges[e].first, graph.edges[e].second);
    rows.push_back({c(a), c(b), p(e)});
  }
  return TemporalElection::from_static(std::move(names), 2 * (m + 1), rows);
}

std::variant<TemporalElection, TypedElection> gen_random(const RandomParams& params,
                                                         std::uint64_t seed) {
  const auto& pr = params;
  if (pr.num_voters == 0 || pr.num_candidates == 0 || pr.num_rounds == 0)
    throw InputError("random instances need n, m, l >= 1");
  if (!(pr.approval_probability >= 0.0 && pr.approval_probability <= 1.0))
    throw InputError("approval probability must lie in [0, 1]");
  if (pr.type_count > pr.num_voters) throw InputError("type count exceeds the number of voters");
  if (pr.profile_count > pr.num_rounds) throw InputError("profile count exceeds the number of rounds");
  if (pr.is_static && pr.profile_count > 1)
    throw InputError("a static election has a single round profile");

  Rng rng(seed);
  const std::size_t m = pr.num_candidates;
  auto draw = [&]() {
    Bitset row(m);
    for (Candidate p = 0; p < m; ++p)
      if (rng.bernoulli(pr.approval_probability)) row.set(p);
    if (pr.complete && row.none()) row.set(rng.below(m));
    return row;
  };
  std::vector<std::string> names;
  for (std::size_t p = 1; p <= m; ++p) names.push_back("c" + padded(p, m));

  const bool typed = pr.type_count > 0 || pr.profile_count > 0;
  const std::size_t kappa = pr.type_count > 0 ? pr.type_count : pr.num_voters;
  const std::size_t l = pr.num_rounds;
  std::size_t q = pr.profile_count > 0 ? pr.profile_count : l;
  if (pr.is_static) q = 1;

  // Round r belongs to profile r for r < q, the rest are spread at random.
  std::vector<std::size_t> profile_of(l);
  for (Round r = 0; r < l; ++r) profile_of[r] = r < q ? r : rng.below(q);

  std::vector<std::vector<Bitset>> rows(kappa);
  for (auto& per_type : rows)
    for (std::size_t j = 0; j < q; ++j) per_type.push_back(draw());

  if (!typed) {
    std::vector<std::vector<std::vector<Candidate>>> approvals(pr.num_voters);
    for (Voter v = 0; v < pr.num_voters; ++v)
      for (Round r = 0; r < l; ++r) approvals[v].push_back(rows[v][profile_of[r]].indices());
    return TemporalElection(std::move(names), pr.num_voters, l, approvals);
  }

  std::vector<std::size_t> counts(kappa, 1);
  for (std::size_t extra = kappa; extra < pr.num_voters; ++extra) ++counts[rng.below(kappa)];
  std::vector<VoterType> types;
  for (std::size_t t = 0; t < kappa; ++t) {
    VoterType vt{"t" + std::to_string(t), counts[t], {}};
    for (Round r = 0; r < l; ++r) vt.rounds.push_back(rows[t][profile_of[r]]);
    types.push_back(std::move(vt));
  }
  std::optional<std::vector<std::vector<Round>>> profiles;
  if (pr.profile_count > 0) {
    profiles.emplace(q);
    for (Round r = 0; r < l; ++r) (*profiles)[profile_of[r]].push_back(r);
  }
  return TypedElection(std::move(names), l, std::move(types), std::move(profiles));
}

}  // namespace tvote
