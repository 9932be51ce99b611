#include "doctest.h"
#include "support.hpp"
#include "tvote/errors.hpp"

using namespace tvote;
using namespace tvote::test;

TEST_CASE("satisfaction counts rounds covered by the group") {
  auto e = two_voters();
  const std::vector<Round> rounds{0, 1};
  CHECK(satisfaction(e, outcome(e, {"a", "b"}), std::vector<Voter>{0}, rounds) == 1);
  CHECK(satisfaction(e, outcome(e, {"a", "b"}), std::vector<Voter>{0, 1}, rounds) == 2);
  CHECK(satisfaction(e, outcome(e, {"b", "b"}), std::vector<Voter>{0}, rounds) == 0);
  CHECK_THROWS_AS(satisfaction(e, outcome(e, {"a", "b"}), std::vector<Voter>{2}, rounds), InputError);
  CHECK_THROWS_AS(satisfaction(e, outcome(e, {"a", "b"}), std::vector<Voter>{0}, std::vector<Round>{2}),
                  InputError);
  CHECK_THROWS_AS(satisfaction(e, outcome(e, {"a", "b"}), std::vector<Voter>{}, rounds), InputError);
}

TEST_CASE("utilitarian welfare") {
  auto e = two_voters();
  CHECK(utilitarian_welfare(e, outcome(e, {"a", "b"})) == 2);
  auto f = three_one();
  CHECK(utilitarian_welfare(f, repeated(f, {{"a", 7}, {"b", 1}})) == 22);
  CHECK_THROWS_AS(utilitarian_welfare(f, outcome(f, {"a"})), InputError);
}

TEST_CASE("agreement rounds") {
  auto e = two_voters();
  CHECK(agreement_rounds(e, std::vector<Voter>{0, 1}).empty());
  auto s = static_election({"a", "b"}, 3, {{"a"}, {"a", "b"}});
  CHECK(agreement_rounds(s, std::vector<Voter>{0, 1}) == std::vector<Round>{0, 1, 2});
  auto t = election({"a", "b"}, {{{"a"}, {"a"}}, {{"a"}, {"b"}}});
  CHECK(agreement_rounds(t, std::vector<Voter>{0, 1}) == std::vector<Round>{0});
  CHECK_FALSE(t.is_static());
}

TEST_CASE("election flags and validation") {
  auto e = two_voters();
  CHECK(e.is_static());
  CHECK(e.is_complete());
  auto t = election({"a", "b"}, {{{"a"}, {}}, {{"a"}, {"b"}}});
  CHECK_FALSE(t.is_complete());
  CHECK_THROWS_AS(TemporalElection::from_static({}, 1, {{}}), InputError);
  CHECK_THROWS_AS(TemporalElection::from_static({"a"}, 0, {{0}}), InputError);
  CHECK_THROWS_AS(TemporalElection::from_static({"a", "a"}, 1, {{0}}), InputError);
  CHECK_THROWS_AS(TemporalElection::from_static({"a"}, 1, {{1}}), InputError);
  CHECK_THROWS_AS(TemporalElection::from_static({"a"}, 1000, {{0}}, 100), CapabilityError);
}

TEST_CASE("unconstrained optimum") {
  auto f = three_one();
  auto best = max_welfare_unconstrained(f);
  CHECK(best.value == 24);
  CHECK(best.outcome == repeated(f, {{"a", 8}}));
  auto t = election({"a", "b"}, {{{"a"}, {}}, {{"b"}, {}}});
  auto w = max_welfare_unconstrained(t);
  CHECK(w.value == 1);
  CHECK(w.outcome.choices == std::vector<Candidate>{0, 0});
}

TEST_CASE("repair of empty rounds") {
  auto e = two_voters({"a", "b", "c"});
  auto fine = outcome(e, {"a", "b"});
  CHECK(repair_empty_rounds(e, fine) == fine);
  auto all_empty = outcome(e, {"c", "c"});
  CHECK(utilitarian_welfare(e, all_empty) == 0);
  auto fixed = repair_empty_rounds(e, all_empty);
  CHECK(fixed == outcome(e, {"a", "a"}));
  CHECK(utilitarian_welfare(e, fixed) >= 2);
  auto half = repair_empty_rounds(e, outcome(e, {"a", "c"}));
  CHECK(half.choices[0] == 0);
  CHECK(utilitarian_welfare(e, half) >= 2);
  auto incomplete = election({"a", "b"}, {{{"a"}, {}}});
  CHECK_THROWS_AS(repair_empty_rounds(incomplete, outcome(incomplete, {"b", "b"})), InputError);
}

TEST_CASE("multiplicity vectors expand in candidate order") {
  auto f = three_one();
  auto o = outcome(f, {"b", "a", "a", "a", "a", "a", "a", "a"});
  auto x = MultiplicityVector::from_outcome(f, o);
  CHECK(x.counts == std::vector<std::size_t>{7, 1});
  CHECK(x.to_outcome() == repeated(f, {{"a", 7}, {"b", 1}}));
}

TEST_CASE("welfare and satisfaction properties on random instances") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const bool is_static = trial % 2 == 0;
    auto e = random_election(rng, 1 + rng.below(5), 1 + rng.below(4), 1 + rng.below(5), 0.4,
                             is_static, trial % 3 != 0);
    const auto best = max_welfare_unconstrained(e);
    CHECK(utilitarian_welfare(e, best.outcome) == best.value);
    for (int k = 0; k < 1000; ++k) {
      auto o = random_outcome(rng, e);
      const auto w = utilitarian_welfare(e, o);
      CHECK(w <= best.value);
      if (k % 50 != 0) continue;
      std::size_t sum = 0;
      for (Voter v = 0; v < e.num_voters(); ++v) sum += voter_satisfaction(e, o, v);
      CHECK(sum == w);
      // Monotone in voters and rounds, bounded by |R|.
      Bitset s(e.num_voters()), r(e.num_rounds());
      std::size_t last = 0;
      for (Voter v = 0; v < e.num_voters(); ++v) {
        s.set(v);
        r.clear();
        std::size_t prev = 0;
        for (Round t = 0; t < e.num_rounds(); ++t) {
          r.set(t);
          const auto cur = satisfaction(e, o, s, r);
          CHECK(cur >= prev);
          CHECK(cur <= r.count());
          prev = cur;
        }
        CHECK(prev >= last);
        last = prev;
      }
      if (e.is_complete()) {
        auto fixed = repair_empty_rounds(e, o);
        CHECK(repair_empty_rounds(e, fixed) == fixed);
        CHECK(utilitarian_welfare(e, fixed) >= e.num_rounds());
        for (Voter v = 0; v < e.num_voters(); ++v)
          CHECK(voter_satisfaction(e, fixed, v) >= voter_satisfaction(e, o, v));
      }
    }
    if (is_static) {
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << e.num_voters()); ++mask) {
        Bitset g(e.num_voters());
        for (Voter v = 0; v < e.num_voters(); ++v)
          if (mask >> v & 1U) g.set(v);
        const auto a = agreement_rounds(e, g).count();
        CHECK((a == 0 || a == e.num_rounds()));
      }
    }
  }
}
