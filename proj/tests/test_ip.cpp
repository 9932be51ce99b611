#include <optional>

#include "doctest.h"
#include "tvote/errors.hpp"
#include "tvote/ip.hpp"
#include "tvote/rng.hpp"

using namespace tvote;

namespace {

struct Brute {
  bool feasible = false;
  std::int64_t value = 0;
  std::vector<std::int64_t> x;
};

// Lexicographic odometer; the first optimum found is the lexicographic minimum.
Brute enumerate(const IntegerProgram& p) {
  Brute best;
  std::vector<std::int64_t> x;
  for (const auto& v : p.variables()) x.push_back(v.lower);
  while (true) {
    if (p.is_feasible(x)) {
      const auto v = p.evaluate_objective(x);
      if (!best.feasible || v > best.value) best = {true, v, x};
    }
    std::size_t j = x.size();
    bool done = true;
    while (j-- > 0) {
      if (x[j] < p.variables()[j].upper) {
        ++x[j];
        for (std::size_t k = j + 1; k < x.size(); ++k) x[k] = p.variables()[k].lower;
        done = false;
        break;
      }
    }
    if (done) return best;
  }
}

IntegerProgram random_program(Rng& rng) {
  IntegerProgram p;
  const auto nv = 1 + rng.below(6);
  for (std::size_t j = 0; j < nv; ++j) {
    const auto lo = rng.between(0, 3);
    p.add_variable("x" + std::to_string(j), lo, rng.between(lo, 8));
  }
  const auto nc = rng.below(5);
  for (std::size_t c = 0; c < nc; ++c) {
    std::vector<LinearTerm> terms;
    for (std::size_t j = 0; j < nv; ++j)
      if (rng.bernoulli(0.7)) terms.push_back({j, rng.between(-4, 4)});
    const auto cmp = static_cast<Comparator>(rng.below(3));
    p.add_constraint(terms, cmp, rng.between(-6, 20));
  }
  std::vector<LinearTerm> obj;
  for (std::size_t j = 0; j < nv; ++j) obj.push_back({j, rng.between(-5, 5)});
  p.set_objective(obj);
  return p;
}

}  // namespace

TEST_CASE("single bounded variable") {
  IntegerProgram p;
  p.add_variable("x", 0, 5);
  p.set_objective({{0, 1}});
  auto s = solve_ip(p);
  CHECK(s.status == IpStatus::kOptimal);
  CHECK(s.assignment == std::vector<std::int64_t>{5});
  CHECK(s.value == 5);
}

TEST_CASE("three-one PJR formulation") {
  IntegerProgram p;
  auto a = p.add_variable("x_a", 0, 8);
  auto b = p.add_variable("x_b", 0, 8);
  p.add_constraint({{a, 1}, {b, 1}}, Comparator::kEq, 8);
  p.add_constraint({{a, 1}}, Comparator::kGe, 6);
  p.add_constraint({{b, 1}}, Comparator::kGe, 2);
  p.set_objective({{a, 3}, {b, 1}});
  for (std::uint64_t threshold : {std::uint64_t{0}, std::uint64_t{4096}}) {
    IpOptions opt;
    opt.enumeration_threshold = threshold;
    auto s = solve_ip(p, opt);
    CHECK(s.status == IpStatus::kOptimal);
    CHECK(s.assignment == std::vector<std::int64_t>{6, 2});
    CHECK(s.value == 20);
  }
}

TEST_CASE("contradictory bounds are infeasible") {
  IntegerProgram p;
  p.add_variable("x", 0, 10);
  p.add_constraint({{0, 1}}, Comparator::kGe, 3);
  p.add_constraint({{0, 1}}, Comparator::kLe, 2);
  p.set_objective({{0, 1}});
  CHECK(solve_ip(p).status == IpStatus::kInfeasible);
  IpOptions opt;
  opt.enumeration_threshold = 0;
  CHECK(solve_ip(p, opt).status == IpStatus::kInfeasible);
}

TEST_CASE("undeclared variables are rejected") {
  IntegerProgram p;
  p.add_variable("x", 0, 1);
  CHECK_THROWS_AS(p.add_constraint({{3, 1}}, Comparator::kLe, 1), InputError);
  CHECK_THROWS_AS(p.set_objective({{1, 1}}), InputError);
}

TEST_CASE("cutoff filters weaker optima") {
  IntegerProgram p;
  p.add_variable("x", 0, 5);
  p.set_objective({{0, 1}});
  IpOptions opt;
  opt.cutoff = 6;
  CHECK(solve_ip(p, opt).status == IpStatus::kInfeasible);
  opt.cutoff = 5;
  CHECK(solve_ip(p, opt).value == 5);
}

TEST_CASE("node budget raises a capability error") {
  IntegerProgram p;
  for (int j = 0; j < 12; ++j) p.add_variable("x" + std::to_string(j), 0, 1);
  std::vector<LinearTerm> row, obj;
  for (std::size_t j = 0; j < 12; ++j) {
    row.push_back({j, 2});
    obj.push_back({j, 1});
  }
  p.add_constraint(row, Comparator::kEq, 11);  // odd: no integer solution
  p.set_objective(obj);
  IpOptions opt;
  opt.node_budget = 5;
  opt.enumeration_threshold = 0;
  try {
    solve_ip(p, opt);
    FAIL("expected a capability error");
  } catch (const CapabilityError& e) {
    CHECK(e.explored() > 5);
  }
  opt.node_budget = 10'000'000;
  CHECK(solve_ip(p, opt).status == IpStatus::kInfeasible);
}

TEST_CASE("agrees with exhaustive enumeration on 500 random programs") {
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    auto p = random_program(rng);
    const auto oracle = enumerate(p);
    IpOptions opt;
    opt.enumeration_threshold = trial % 2 == 0 ? 0 : 4096;
    const auto s = solve_ip(p, opt);
    const auto again = solve_ip(p, opt);
    CAPTURE(trial);
    REQUIRE((s.status == IpStatus::kOptimal) == oracle.feasible);
    CHECK(again.assignment == s.assignment);
    if (!oracle.feasible) continue;
    CHECK(s.value == oracle.value);
    CHECK(s.assignment == oracle.x);
    CHECK(p.is_feasible(s.assignment));
  }
}
