#include <doctest.h>

#include <set>

#include "support.hpp"
#include "tvote/errors.hpp"
#include "tvote/generators.hpp"
#include "tvote/solvers.hpp"

using namespace tvote;

namespace {

std::size_t max_approvers(const TemporalElection& e) {
  std::size_t best = 0;
  for (Round r = 0; r < e.num_rounds(); ++r)
    for (Candidate p = 0; p < e.num_candidates(); ++p) best = std::max(best, e.approval_count(r, p));
  return best;
}

std::size_t max_ballot(const TemporalElection& e) {
  std::size_t best = 0;
  for (Voter v = 0; v < e.num_voters(); ++v)
    for (Round r = 0; r < e.num_rounds(); ++r) best = std::max(best, e.approval(v, r).count());
  return best;
}

X3cInstance single_triple() { return {1, {{1, 2, 3}}}; }
X3cInstance no_cover() { return {2, {{1, 2, 3}, {1, 4, 5}, {2, 4, 6}}}; }

}  // namespace

TEST_CASE("ceil_sqrt") {
  CHECK(ceil_sqrt(0) == 0);
  CHECK(ceil_sqrt(1) == 1);
  CHECK(ceil_sqrt(8) == 3);
  CHECK(ceil_sqrt(9) == 3);
  CHECK(ceil_sqrt(10) == 4);
}

TEST_CASE("core private") {
  auto e = gen_core_private(9);
  CHECK(e.num_voters() == 9);
  CHECK(e.num_candidates() == 1 + 6 * 9 + 3 * 9);
  CHECK(e.is_complete());
  CHECK(max_welfare_unconstrained(e).value == 27);
  CHECK(e.candidate_name(1) == "x_1_1");
  for (Axiom ax : {Axiom::kJR, Axiom::kEJR}) CHECK(brute_force_max_util(e, ax).welfare == 15);

  auto four = gen_core_private(4);
  CHECK(max_welfare_unconstrained(four).value == 8);
  for (Axiom ax : kAllAxioms) CHECK(brute_force_max_util(four, ax).welfare == 6);

  auto one = gen_core_private(1);
  CHECK(one.num_voters() == 1);
  CHECK(max_welfare_unconstrained(one).value == 1);
  CHECK(brute_force_max_util(one, Axiom::kEJRPlus).welfare == 1);
  CHECK_THROWS_AS(gen_core_private(0), InputError);
}

TEST_CASE("jr tight") {
  auto e = gen_jr_tight(9, 12);
  CHECK(e.is_static());
  CHECK(e.is_complete());
  CHECK(max_welfare_unconstrained(e).value == 36);
  CHECK(static_jr_ilp(e).welfare == 24);
  CHECK(brute_force_max_util(e, Axiom::kJR).welfare == 24);

  CHECK(static_jr_ilp(gen_jr_tight(1, 5)).welfare == 5);
  auto four = gen_jr_tight(4, 4);
  CHECK(max_welfare_unconstrained(four).value == 8);
  CHECK(brute_force_max_util(four, Axiom::kJR, {}, BruteMode::kSequences).welfare == 6);
  CHECK_THROWS_AS(gen_jr_tight(5, 4), InputError);
}

TEST_CASE("separation") {
  auto e = gen_separation(9, 2);
  CHECK(e.num_rounds() == 18);
  CHECK(max_welfare_unconstrained(e).value == 54);
  CHECK(static_pjr_ilp(e).welfare == 30);
  CHECK(static_ejr_ilp(e).welfare == 30);
  CHECK(static_ejr_ilp(e, Axiom::kEJRPlus).welfare == 30);
  CHECK(static_jr_ilp(e).welfare == 42);

  for (Axiom ax : kAllAxioms) CHECK(solve(gen_separation(1, 2), ax, SolverId::kAuto).welfare == 2);
  auto four = gen_separation(4, 2);
  CHECK(max_welfare_unconstrained(four).value == 16);
  auto typed = TypedElection::from_election(four);
  CHECK(typed.num_types() == 3);
  CHECK(typed_ejr_dp(typed).welfare == 12);
  CHECK(static_ejr_ilp(four).welfare == 12);
  CHECK_THROWS_AS(gen_separation(4, 1), InputError);
}

TEST_CASE("x3c reduction") {
  auto yes = gen_x3c_reduction(single_triple());
  CHECK(yes.election.num_voters() == 13);
  CHECK(yes.election.num_rounds() == 5);
  CHECK(yes.threshold == 19);
  CHECK(yes.election.is_static());
  CHECK(yes.election.is_complete());
  CHECK(max_approvers(yes.election) <= 4);
  CHECK(static_collapse_class(yes.election).low_demand);
  auto o = test::outcome(yes.election, {"c_1", "z", "z", "z", "z"});
  CHECK(utilitarian_welfare(yes.election, o) == 19);
  for (Axiom ax : kAllAxioms) {
    CHECK(check_axiom(yes.election, o, ax).holds);
    CHECK(solve(yes.election, ax, SolverId::kAuto).welfare == 19);
  }

  auto dup = gen_x3c_reduction({1, {{1, 2, 3}, {1, 2, 3}}});
  CHECK(static_pjr_ilp(dup.election).welfare == 19);

  auto no = gen_x3c_reduction(no_cover());
  CHECK(no.threshold == 30);
  CHECK_FALSE(no_cover().has_exact_cover());
  CHECK(static_collapse_class(no.election).low_demand);
  for (Axiom ax : kAllAxioms) CHECK(brute_force_max_util(no.election, ax).welfare < 30);

  X3cInstance cover{2, {{1, 2, 3}, {4, 5, 6}, {1, 4, 5}}};
  CHECK(cover.has_exact_cover());
  CHECK(brute_force_max_util(gen_x3c_reduction(cover).election, Axiom::kPJR).welfare >= 30);

  CHECK_THROWS_AS(gen_x3c_reduction({1, {{1, 2, 4}}}), InputError);
  CHECK_THROWS_AS(gen_x3c_reduction({1, {{1, 1, 2}}}), InputError);
  CHECK_THROWS_AS(gen_x3c_reduction({2, {{1, 2, 3}, {1, 4, 5}}}), InputError);
}

TEST_CASE("vertex cover reduction") {
  auto k4 = complete_graph_k4();
  CHECK(k4.min_vertex_cover() == 3);
  auto e = gen_vc_reduction(k4);
  CHECK(e.num_voters() == 40);
  CHECK(e.num_rounds() == 10);
  CHECK(e.is_static());
  CHECK(max_ballot(e) <= 3);
  CHECK(max_approvers(e) <= 8);
  CHECK(max_welfare_unconstrained(e).value == 80);
  for (Axiom ax : kAllAxioms) CHECK(solve(e, ax, SolverId::kAuto).welfare == 71);
  CHECK(brute_force_max_util(e, Axiom::kJR).welfare == 71);

  auto k33 = complete_bipartite_k33();
  CHECK(k33.min_vertex_cover() == 3);
  auto b = gen_vc_reduction(k33);
  CHECK(b.num_voters() == 56);
  CHECK(b.num_rounds() == 14);
  CHECK(static_pjr_ilp(b).welfare == 103);
  CHECK(brute_force_max_util(b, Axiom::kEJR).welfare == 103);

  CHECK_THROWS_AS(gen_vc_reduction({4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}}), InputError);
  CHECK_THROWS_AS(gen_vc_reduction({4, {{0, 1}, {0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 3}}}), InputError);
}

TEST_CASE("random generator") {
  RandomParams p;
  p.num_voters = 5;
  p.num_candidates = 4;
  p.num_rounds = 6;
  p.complete = true;
  auto a = std::get<TemporalElection>(gen_random(p, 42));
  auto b = std::get<TemporalElection>(gen_random(p, 42));
  CHECK(a.is_complete());
  for (Voter v = 0; v < 5; ++v)
    for (Round r = 0; r < 6; ++r) CHECK(a.approval(v, r) == b.approval(v, r));

  p.is_static = true;
  CHECK(std::get<TemporalElection>(gen_random(p, 1)).is_static());

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomParams t;
    t.num_voters = 8;
    t.type_count = 3;
    t.is_static = true;
    auto typed = std::get<TypedElection>(gen_random(t, seed));
    CHECK(typed.num_voters() == 8);
    CHECK(typed.num_types() == 3);
    CHECK(TypedElection::from_election(typed.expand()).num_types() <= 3);
  }

  RandomParams q;
  q.num_rounds = 6;
  q.profile_count = 2;
  auto profiled = std::get<TypedElection>(gen_random(q, 3));
  REQUIRE(profiled.has_profiles());
  CHECK(profiled.profiles().size() == 2);

  RandomParams bad;
  bad.type_count = 9;
  CHECK_THROWS_AS(gen_random(bad, 0), InputError);
  bad = {};
  bad.approval_probability = 1.5;
  CHECK_THROWS_AS(gen_random(bad, 0), InputError);
  bad = {};
  bad.is_static = true;
  bad.profile_count = 2;
  CHECK_THROWS_AS(gen_random(bad, 0), InputError);
}
