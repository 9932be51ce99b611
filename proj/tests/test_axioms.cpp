#include <algorithm>

#include "doctest.h"
#include "support.hpp"
#include "tvote/axioms.hpp"
#include "tvote/errors.hpp"

using namespace tvote;
using namespace tvote::test;

namespace {

// Recomputes the violation described by a witness from the definitions.
bool replay(const TemporalElection& e, const Outcome& o, const ViolationWitness& w) {
  Bitset group(e.num_voters());
  for (Voter v : w.group) group.set(v);
  const std::size_t n = e.num_voters();
  std::size_t best = 0;
  for (Voter v : w.group) best = std::max(best, voter_satisfaction(e, o, v));
  switch (w.axiom) {
    case Axiom::kJR:
    case Axiom::kPJR: {
      const std::size_t t = agreement_rounds(e, group).count();
      if (w.agreement_size != t || w.cohesion_size != w.group.size()) return false;
      std::size_t d = t * w.group.size() / n;
      if (w.axiom == Axiom::kJR) d = std::min<std::size_t>(d, 1);
      const auto sat = satisfaction(e, o, group, all_rounds(e));
      return d == w.demand && sat == w.observed && sat < d;
    }
    case Axiom::kEJR: {
      const std::size_t t = agreement_rounds(e, group).count();
      const std::size_t d = t * w.group.size() / n;
      return d == w.demand && best == w.observed && best < d;
    }
    case Axiom::kEJRPlus: {
      // sigma voters of S approve a common candidate in tau rounds.
      std::size_t tau = 0;
      for (Round r = 0; r < e.num_rounds(); ++r)
        for (Candidate p = 0; p < e.num_candidates(); ++p)
          if ((e.approvers(r, p) & group).count() >= w.cohesion_size) {
            ++tau;
            break;
          }
      if (tau != w.agreement_size || w.agreement_size * w.cohesion_size / n != w.demand) return false;
      if (!(best < w.demand) || !w.offending_round) return false;
      const Round r = *w.offending_round;
      return agreement_rounds(e, group).test(r) &&
             !group.is_subset_of(e.approvers(r, o.choices[r]));
  }
  }
  return false;
}

}  // namespace

TEST_CASE("JR violation on two disjoint voters") {
  auto e = two_voters();
  auto r = check_axiom(e, outcome(e, {"a", "a"}), Axiom::kJR);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness);
  CHECK(r.witness->group == std::vector<Voter>{1});
  CHECK(r.witness->agreement_size == 2);
  CHECK(r.witness->demand == 1);
  CHECK(r.witness->observed == 0);
  for (Axiom a : kAllAxioms) CHECK(check_axiom(e, outcome(e, {"a", "b"}), a).holds);
}

TEST_CASE("PJR on the three-one instance") {
  auto e = three_one();
  auto o = repeated(e, {{"a", 7}, {"b", 1}});
  auto r = check_axiom(e, o, Axiom::kPJR);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness);
  CHECK(r.witness->group == std::vector<Voter>{3});
  CHECK(r.witness->agreement_size == 8);
  CHECK(r.witness->demand == 2);
  CHECK(r.witness->observed == 1);
  CHECK(check_axiom(e, o, Axiom::kJR).holds);

  auto h = cross_validate_axiom_hierarchy(e, o);
  CHECK(h.jr);
  CHECK_FALSE(h.pjr);
  CHECK_FALSE(h.ejr);
  CHECK_FALSE(h.ejr_plus);
  CHECK(h.consistent);

  auto good = cross_validate_axiom_hierarchy(e, repeated(e, {{"a", 6}, {"b", 2}}));
  CHECK(good.jr);
  CHECK(good.pjr);
  CHECK(good.ejr);
  CHECK(good.ejr_plus);
}

TEST_CASE("collapse classification") {
  auto e = three_one();
  auto c = static_collapse_class(e);
  CHECK(c.cls == CollapseClass::kStatic);
  CHECK_FALSE(c.low_demand);
  CHECK(c.is_static);

  // Size-n group agreeing everywhere with l >= 2n, not static.
  auto t = election({"a", "b"}, {{{"a"}, {"a"}, {"a"}, {"a", "b"}}, {{"a"}, {"a"}, {"a"}, {"a"}}});
  CHECK(static_collapse_class(t).cls == CollapseClass::kNone);

  auto low = two_voters();
  auto info = static_collapse_class(low);
  CHECK(info.cls == CollapseClass::kLowDemand);
  CHECK(info.is_static);
}

TEST_CASE("verification limits are explicit") {
  std::vector<std::vector<std::string>> sets(17, {"a"});
  auto e = static_election({"a"}, 2, sets);
  CHECK_THROWS_AS(AxiomChecker{e}, CapabilityError);
  VerifyLimits wide;
  wide.max_exhaustive_voters = 17;
  CHECK(AxiomChecker(e, wide).holds(outcome(e, {"a", "a"}), Axiom::kEJR));
}

TEST_CASE("axiom names") {
  CHECK(parse_axiom("EJRPLUS") == Axiom::kEJRPlus);
  CHECK(parse_axiom("ejr+") == Axiom::kEJRPlus);
  CHECK(parse_axiom("Pjr") == Axiom::kPJR);
  CHECK(axiom_name(Axiom::kEJRPlus) == "EJR+");
  CHECK_THROWS_AS(parse_axiom("fjr"), InputError);
}

TEST_CASE("hierarchy, collapse equivalences, witnesses and repair on random instances") {
  Rng rng(2024);
  int low_demand_seen = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const bool is_static = trial % 2 == 0;
    auto e = random_election(rng, 1 + rng.below(6), 1 + rng.below(4), 1 + rng.below(6),
                             0.25 + 0.5 * rng.unit(), is_static, trial % 4 != 3);
    const AxiomChecker checker(e);
    const auto info = static_collapse_class(e);
    if (info.low_demand) ++low_demand_seen;
    for (int k = 0; k < 200; ++k) {
      auto o = random_outcome(rng, e);
      bool verdict[4];
      for (Axiom a : kAllAxioms) {
        auto r = checker.check(o, a);
        verdict[static_cast<int>(a)] = r.holds;
        CHECK(r.holds == !r.witness.has_value());
        if (r.witness) CHECK(replay(e, o, *r.witness));
        if (r.holds && e.is_complete()) CHECK(checker.holds(repair_empty_rounds(e, o), a));
      }
      const bool jr = verdict[0], pjr = verdict[1], ejr = verdict[2], plus = verdict[3];
      CHECK((!plus || ejr));
      CHECK((!ejr || pjr));
      CHECK((!pjr || jr));
      if (info.low_demand) {
        CHECK(jr == pjr);
        CHECK(pjr == ejr);
      }
      if (e.is_static()) CHECK(ejr == plus);
    }
  }
  CHECK(low_demand_seen > 0);
}
