#pragma once

#include <string>
#include <vector>

#include "tvote/election.hpp"
#include "tvote/rng.hpp"

namespace tvote::test {

inline std::vector<Candidate> ids(const std::vector<std::string>& all,
                                  const std::vector<std::string>& names) {
  std::vector<Candidate> out;
  for (const auto& n : names)
    for (Candidate p = 0; p < all.size(); ++p)
      if (all[p] == n) out.push_back(p);
  return out;
}

inline TemporalElection static_election(const std::vector<std::string>& candidates,
                                        std::size_t rounds,
                                        const std::vector<std::vector<std::string>>& sets) {
  std::vector<std::vector<Candidate>> rows;
  for (const auto& s : sets) rows.push_back(ids(candidates, s));
  return TemporalElection::from_static(candidates, rounds, rows);
}

inline TemporalElection election(const std::vector<std::string>& candidates,
                                 const std::vector<std::vector<std::vector<std::string>>>& sets) {
  std::vector<std::vector<std::vector<Candidate>>> rows;
  for (const auto& voter : sets) {
    rows.emplace_back();
    for (const auto& s : voter) rows.back().push_back(ids(candidates, s));
  }
  return TemporalElection(candidates, sets.size(), sets.front().size(), rows);
}

inline Outcome outcome(const TemporalElection& e, const std::vector<std::string>& names) {
  Outcome o;
  for (const auto& n : names) o.choices.push_back(e.candidate_index(n));
  return o;
}

inline Outcome repeated(const TemporalElection& e,
                        const std::vector<std::pair<std::string, std::size_t>>& blocks) {
  Outcome o;
  for (const auto& [name, k] : blocks)
    for (std::size_t i = 0; i < k; ++i) o.choices.push_back(e.candidate_index(name));
  return o;
}

// n=2, l=2, static {a} and {b}.
inline TemporalElection two_voters(std::vector<std::string> candidates = {"a", "b"}) {
  return static_election(candidates, 2, {{"a"}, {"b"}});
}

// n=4, l=8, three voters on {a}, one on {b}.
inline TemporalElection three_one(std::size_t rounds = 8) {
  return static_election({"a", "b"}, rounds, {{"a"}, {"a"}, {"a"}, {"b"}});
}

inline std::vector<std::string> names(std::size_t m) {
  std::vector<std::string> out;
  for (std::size_t p = 0; p < m; ++p) out.push_back("c" + std::to_string(p));
  return out;
}

inline TemporalElection random_election(Rng& rng, std::size_t n, std::size_t m, std::size_t l,
                                        double p, bool is_static, bool complete) {
  std::vector<std::vector<std::vector<Candidate>>> rows(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t r = 0; r < (is_static ? 1 : l); ++r) {
      std::vector<Candidate> s;
      for (Candidate c = 0; c < m; ++c)
        if (rng.bernoulli(p)) s.push_back(c);
      if (s.empty() && complete) s.push_back(rng.below(m));
      rows[v].push_back(s);
    }
  if (is_static) {
    std::vector<std::vector<Candidate>> flat;
    for (auto& r : rows) flat.push_back(r[0]);
    return TemporalElection::from_static(names(m), l, flat);
  }
  return TemporalElection(names(m), n, l, rows);
}

inline Outcome random_outcome(Rng& rng, const TemporalElection& e) {
  Outcome o;
  for (Round r = 0; r < e.num_rounds(); ++r) o.choices.push_back(rng.below(e.num_candidates()));
  return o;
}

}  // namespace tvote::test
