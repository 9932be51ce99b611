#include <doctest.h>

#include <sstream>

#include "support.hpp"
#include "tvote/errors.hpp"
#include "tvote/generators.hpp"
#include "tvote/price.hpp"

using namespace tvote;

namespace {

Verdict verdict_of(const PriceRecord& r, const std::string& name) {
  for (const auto& b : r.bounds)
    if (b.name == name) return b.verdict;
  FAIL("missing bound " << name);
  return Verdict::kUndefined;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("ratio") {
  CHECK(Ratio::make(27, 15) == Ratio{9, 5});
  CHECK(Ratio::make(27, 15).str() == "9/5");
  CHECK(Ratio::make(3, 2).decimal() == "1.500000");
  CHECK_THROWS_AS(Ratio::make(1, 0), InputError);
}

TEST_CASE("price ratio examples") {
  FamilySpec cp{"core-private", 0, 9, 0};
  auto r = price_ratio(build_family(cp), Axiom::kJR, SolverId::kAuto, {}, cp);
  CHECK(r.util_star == 27);
  CHECK(r.util_phi == 15);
  CHECK(*r.ratio == Ratio{9, 5});
  CHECK(verdict_of(r, "sqrt_lower") == Verdict::kPass);
  CHECK(verdict_of(r, "rho<=n") == Verdict::kPass);
  CHECK(verdict_of(r, "jr_horizon") == Verdict::kTight);

  FamilySpec jt{"jr-tight", 9, 12, 0};
  auto t = price_ratio(build_family(jt), Axiom::kJR, SolverId::kAuto, {}, jt);
  CHECK(*t.ratio == Ratio{3, 2});
  CHECK(verdict_of(t, "jr_horizon") == Verdict::kTight);
  CHECK(t.instance_id == "jr-tight/n=9/ell=12");

  FamilySpec sp{"separation", 9, 0, 2};
  auto s = price_ratio(build_family(sp), Axiom::kJR, SolverId::kAuto, {}, sp);
  CHECK(*s.ratio == Ratio{9, 7});
  CHECK(verdict_of(s, "jr_separation") == Verdict::kPass);
  for (Axiom ax : {Axiom::kPJR, Axiom::kEJR, Axiom::kEJRPlus}) {
    auto x = price_ratio(build_family(sp), ax, SolverId::kAuto, {}, sp);
    CHECK(*x.ratio == Ratio{9, 5});
    CHECK(verdict_of(x, "separation_exact") == Verdict::kTight);
  }

  auto one = price_ratio(test::static_election({"a"}, 3, {{"a"}, {"a"}}), Axiom::kEJR, SolverId::kAuto);
  CHECK(*one.ratio == Ratio{1, 1});
  CHECK(verdict_of(one, "rho>=1") == Verdict::kTight);
}

TEST_CASE("bound scoping") {
  auto short_horizon = price_ratio(test::three_one(2), Axiom::kJR, SolverId::kAuto);
  CHECK(verdict_of(short_horizon, "rho<=n") == Verdict::kNotApplicable);

  auto incomplete = price_ratio(test::static_election({"a"}, 3, {{"a"}, {}}), Axiom::kJR, SolverId::kAuto);
  CHECK(verdict_of(incomplete, "jr_horizon") == Verdict::kNotApplicable);

  PriceRecord undefined;
  undefined.n = 2;
  undefined.ell = 3;
  undefined.complete = true;
  undefined.util_star = 4;
  CHECK(verdict_of({.bounds = bound_suite(undefined)}, "rho<=n") == Verdict::kUndefined);

  PriceRecord broken = undefined;
  broken.util_phi = 1;
  broken.ratio = Ratio::make(4, 1);
  broken.bounds = bound_suite(broken);
  CHECK(verdict_of(broken, "rho<=n") == Verdict::kFail);
  CHECK_FALSE(bounds_hold(broken));
}

TEST_CASE("sweep") {
  std::vector<SweepCell> cells;
  for (std::size_t l : {4, 9, 16}) cells.push_back({{"core-private", 0, l, 0}, Axiom::kJR});
  SolverLimits limits;
  limits.brute_nodes = 2'000'000;
  auto serial = sweep(cells, SolverId::kAuto, limits, 1);
  auto parallel = sweep(cells, SolverId::kAuto, limits, 3);
  REQUIRE(serial.size() == 3);
  CHECK(*serial[0].ratio == Ratio{4, 3});
  CHECK(*serial[1].ratio == Ratio{9, 5});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(serial[i].instance_id == parallel[i].instance_id);
    CHECK(serial[i].status == parallel[i].status);
    CHECK(serial[i].util_phi == parallel[i].util_phi);
  }

  std::ostringstream csv;
  write_csv(csv, serial);
  CHECK(count_lines(csv.str()) == 4);
  CHECK(csv.str().rfind("instance_id,family,n,m,ell,axiom,util_star,util_phi,ratio_rational,"
                        "ratio_decimal,bound_name,bound_value,verdict,status,runtime_ms\n",
                        0) == 0);
  CHECK(csv.str().find("core-private/ell=9,core-private,9,82,9,JR,27,15,9/5,1.800000") !=
        std::string::npos);

  std::ostringstream empty;
  write_csv(empty, sweep({}, SolverId::kAuto));
  CHECK(count_lines(empty.str()) == 1);

  SolverLimits tiny;
  tiny.brute_nodes = 5;
  auto skipped = sweep({{{"core-private", 0, 9, 0}, Axiom::kJR}}, SolverId::kBrute, tiny);
  CHECK(skipped[0].status == "SKIPPED");
  CHECK(skipped[0].util_star == 27);
  CHECK_FALSE(skipped[0].ratio);

  CHECK_THROWS_AS(sweep({{{"jr-tight", 5, 2, 0}, Axiom::kJR}}, SolverId::kAuto), InputError);
}

TEST_CASE("price properties on random complete instances") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    Rng rng(seed + 31);
    const std::size_t n = 1 + rng.below(5);
    const std::size_t l = n + rng.below(3);
    auto e = test::random_election(rng, n, 1 + rng.below(3), l, 0.5, rng.bernoulli(0.4), true);
    CAPTURE(seed);
    std::vector<PriceRecord> recs;
    for (Axiom ax : {Axiom::kJR, Axiom::kPJR, Axiom::kEJR}) recs.push_back(price_ratio(e, ax, SolverId::kAuto));
    for (const auto& r : recs) {
      CHECK(r.certified);
      CHECK(bounds_hold(r));
    }
    CHECK(recs[0].util_phi >= recs[1].util_phi);
    CHECK(recs[1].util_phi >= recs[2].util_phi);
  }
}
