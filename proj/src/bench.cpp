#include "tvote/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <ostream>
#include <thread>

#include "tvote/axioms.hpp"
#include "tvote/errors.hpp"
#include "tvote/generators.hpp"
#include "tvote/price.hpp"
#include "tvote/rng.hpp"
#include "tvote/solvers.hpp"

namespace tvote {
namespace {

using i128 = __int128;

// Records the first failed requirement.
class Check {
 public:
  void require(bool cond, const std::string& what) {
    if (!cond && ok_) {
      ok_ = false;
      detail_ = what;
    }
  }
  void note(const std::string& text) {
    if (ok_) detail_ = text;
  }
  bool ok() const { return ok_; }
  const std::string& detail() const { return detail_; }

 private:
  bool ok_ = true;
  std::string detail_;
};

std::string str(std::size_t x) { return std::to_string(x); }

TemporalElection random_temporal(Rng& rng, std::size_t n, std::size_t m, std::size_t l, double p,
                                 bool is_static, bool complete) {
  RandomParams params;
  params.num_voters = n;
  params.num_candidates = m;
  params.num_rounds = l;
  params.approval_probability = p;
  params.is_static = is_static;
  params.complete = complete;
  return std::get<TemporalElection>(gen_random(params, rng.next()));
}

Outcome random_outcome(Rng& rng, const TemporalElection& e) {
  Outcome o;
  for (Round r = 0; r < e.num_rounds(); ++r) o.choices.push_back(rng.below(e.num_candidates()));
  return o;
}

// 4 U*^2 >= l U_phi^2, i.e. rho >= sqrt(l) / 2.
bool above_half_sqrt(std::size_t util_star, std::size_t util_phi, std::size_t l) {
  const i128 us = static_cast<i128>(util_star), up = static_cast<i128>(util_phi);
  return 4 * us * us >= static_cast<i128>(l) * up * up;
}

// w l >= (l - n + 2 sqrt(n) - 1) u in squared integer form.
bool meets_rounding_bound(std::size_t welfare, std::size_t util_star, std::size_t n, std::size_t l) {
  const i128 w = static_cast<i128>(welfare), u = static_cast<i128>(util_star);
  const i128 nn = static_cast<i128>(n), ll = static_cast<i128>(l);
  const i128 lhs = w * ll - (ll - nn - 1) * u;
  return lhs >= 0 && lhs * lhs >= 4 * nn * u * u;
}

void core_private(Check& c) {
  for (std::size_t l : {4, 9}) {
    const auto e = gen_core_private(l);
    const std::size_t k = ceil_sqrt(l);
    const std::size_t star = max_welfare_unconstrained(e).value;
    c.require(star == k * l, "l=" + str(l) + ": Util*=" + str(star) + ", expected " + str(k * l));
    for (Axiom ax : kAllAxioms) {
      const auto r = brute_force_max_util(e, ax);
      const std::string tag = "l=" + str(l) + " " + std::string(axiom_name(ax));
      c.require(r.feasible && r.certified, tag + ": no certified optimum");
      c.require(r.welfare == l - k + k * k,
                tag + ": Util^Phi=" + str(r.welfare) + ", expected " + str(l - k + k * k));
      c.require(above_half_sqrt(star, r.welfare, l), tag + ": rho below sqrt(l)/2");
    }
  }
  c.note("l=4: 8/6, l=9: 27/15 = 9/5 >= 3/2 for all four axioms");
}

void jr_tight(Check& c) {
  const FamilySpec spec{"jr-tight", 9, 12, 0};
  const auto e = build_family(spec);
  const auto rec = price_ratio(e, Axiom::kJR, SolverId::kJrIlp, {}, spec);
  c.require(rec.util_phi == 24, "Util_JR=" + str(rec.util_phi) + ", expected 24");
  c.require(rec.ratio && *rec.ratio == Ratio{3, 2}, "rho_JR is not 3/2");
  const auto dp = typed_jr_dp(TypedElection::from_election(e));
  c.require(dp.welfare == 24, "typed JR program disagrees: " + str(dp.welfare));
  bool tight = false;
  for (const auto& b : rec.bounds)
    if (b.name == "jr_horizon") tight = b.verdict == Verdict::kTight;
  c.require(tight, "rho_JR does not meet 12/(12-9+2*3-1) with equality");
  const auto rounded = jr_reserve_rounding(e);
  c.require(rounded.welfare >= 24, "rounding welfare " + str(rounded.welfare) + " < 24");
  c.require(check_axiom(e, rounded.outcome, Axiom::kJR).holds, "rounding output violates JR");
  c.note("Util_JR=24, rho=3/2 TIGHT, rounding welfare " + str(rounded.welfare));
}

void separation(Check& c) {
  const auto e = gen_separation(9, 2);
  const auto typed = TypedElection::from_election(e);
  const std::size_t star = max_welfare_unconstrained(e).value;
  c.require(star == 54, "Util*=" + str(star) + ", expected 54");
  const std::size_t pjr = static_pjr_ilp(e).welfare;
  const std::size_t ejr = static_ejr_ilp(e).welfare;
  const std::size_t plus = static_ejr_ilp(e, Axiom::kEJRPlus).welfare;
  const std::size_t dp = typed_ejr_dp(typed).welfare;
  const std::size_t jr = static_jr_ilp(e).welfare;
  c.require(pjr == 30 && ejr == 30 && plus == 30 && dp == 30,
            "Util^Phi for PJR/EJR/EJR+/DP = " + str(pjr) + "/" + str(ejr) + "/" + str(plus) + "/" +
                str(dp) + ", expected 30");
  c.require(jr == 42, "Util_JR=" + str(jr) + ", expected 42");
  const Ratio rho_pjr = Ratio::make(star, pjr), rho_jr = Ratio::make(star, jr);
  c.require(rho_pjr == Ratio{9, 5} && rho_jr == Ratio{9, 7}, "ratios " + rho_pjr.str() + ", " + rho_jr.str());
  c.require(i128{rho_pjr.num} * rho_jr.den > i128{rho_jr.num} * rho_pjr.den, "rho_PJR <= rho_JR");
  c.require(rho_jr.num <= 2 * rho_jr.den, "rho_JR above a/(a-1) = 2");
  c.note("Util^PJR=Util^EJR=Util^EJR+=30, Util_JR=42, rho 9/5 > 9/7 <= 2");
}

void universal(Check& c) {
  Rng rng(0x3f2);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng.below(6), l = 1 + rng.below(6), m = 1 + rng.below(4);
    const auto e = random_temporal(rng, n, m, l, 0.2 + 0.5 * rng.unit(), rng.bernoulli(0.4), true);
    const Axiom ax = kAllAxioms[rng.below(4)];
    const auto r = solve(e, ax, SolverId::kAuto);
    const std::size_t star = max_welfare_unconstrained(e).value;
    c.require(r.feasible && r.certified, "instance " + str(i) + ": no certified optimum");
    c.require(star <= n * r.welfare, "instance " + str(i) + ": rho=" + str(star) + "/" +
                                         str(r.welfare) + " above n=" + str(n));
  }

  std::size_t pairs = 0, attempts = 0;
  while (pairs < 300 && attempts < 500'000) {
    ++attempts;
    const std::size_t n = 1 + rng.below(5), l = 1 + rng.below(5), m = 2 + rng.below(3);
    const auto e = random_temporal(rng, n, m, l, 0.3, rng.bernoulli(0.4), true);
    const auto o = random_outcome(rng, e);
    bool empty = false;
    for (Round r = 0; r < l; ++r) empty |= e.approval_count(r, o.choices[r]) == 0;
    if (!empty) continue;
    const Axiom ax = kAllAxioms[rng.below(4)];
    if (!check_axiom(e, o, ax).holds) continue;
    ++pairs;
    c.require(check_axiom(e, repair_empty_rounds(e, o), ax).holds,
              "repair broke " + std::string(axiom_name(ax)) + " on pair " + str(pairs));
  }
  c.require(pairs == 300, "only " + str(pairs) + " satisfying outcomes with empty rounds found");
  c.note("300 instances with rho <= n; repair preserved the axiom on 300 pairs");
}

X3cInstance random_x3c(Rng& rng, std::size_t q) {
  const std::size_t u = 3 * q;
  std::vector<std::array<std::size_t, 3>> all;
  for (std::size_t a = 1; a <= u; ++a)
    for (std::size_t b = a + 1; b <= u; ++b)
      for (std::size_t d = b + 1; d <= u; ++d) all.push_back({a, b, d});
  for (;;) {
    X3cInstance x{q, {}};
    const std::size_t count = q + rng.below(2 * q + 1);
    for (std::size_t i = 0; i < count; ++i) x.triples.push_back(all[rng.below(all.size())]);
    std::vector<bool> seen(u + 1, false);
    for (const auto& t : x.triples)
      for (std::size_t e : t) seen[e] = true;
    if (std::count(seen.begin() + 1, seen.end(), true) == static_cast<long>(u)) return x;
  }
}

void x3c(Check& c) {
  Rng rng(0x3c);
  std::size_t yes = 0, no = 0;
  for (std::size_t q : {1, 2}) {
    for (int i = 0; i < 20; ++i) {
      const auto inst = random_x3c(rng, q);
      const bool cover = inst.has_exact_cover();
      (cover ? yes : no)++;
      const auto red = gen_x3c_reduction(inst);
      const auto& e = red.election;
      const std::string tag = "q=" + str(q) + " #" + str(i);
      c.require(static_collapse_class(e).low_demand, tag + ": not LOW_DEMAND");
      for (Round r = 0; r < e.num_rounds(); ++r)
        for (Candidate p = 0; p < e.num_candidates(); ++p)
          c.require(e.approval_count(r, p) <= 4, tag + ": candidate with more than 4 approvers");
      for (Axiom ax : kAllAxioms) {
        const auto best = brute_force_max_util(e, ax);
        c.require((best.feasible && best.welfare >= red.threshold) == cover,
                  tag + " " + std::string(axiom_name(ax)) + ": optimum " + str(best.welfare) +
                      " vs B=" + str(red.threshold) + ", exact cover " + (cover ? "exists" : "absent"));
      }
    }
  }
  c.note("40 instances (" + str(yes) + " yes, " + str(no) + " no), all four axioms agree with the X3C oracle");
}

void vertex_cover(Check& c) {
  for (const auto& [name, g] : {std::pair{"K4", complete_graph_k4()}, std::pair{"K33", complete_bipartite_k33()}}) {
    const auto e = gen_vc_reduction(g);
    const std::size_t vc = g.min_vertex_cover();
    const std::size_t target = 8 * e.num_rounds() - 3 * vc;
    for (Axiom ax : kAllAxioms) {
      const auto r = solve(e, ax, SolverId::kAuto);
      c.require(r.certified && r.welfare == target, std::string(name) + " " + std::string(axiom_name(ax)) +
                                                        ": " + str(r.welfare) + ", expected " + str(target));
    }
  }
  c.note("K4: 71 of 80, K33: 103 of 112 for all four axioms");
}

void solvers(Check& c) {
  Rng rng(0x57a7);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng.below(8), m = 1 + rng.below(3), l = 1 + rng.below(6);
    const auto e = random_temporal(rng, n, m, l, 0.5, true, rng.bernoulli(0.7));
    const std::string tag = "static #" + str(i);
    const auto jr = brute_force_max_util(e, Axiom::kJR);
    const auto pjr = brute_force_max_util(e, Axiom::kPJR);
    const auto ejr = brute_force_max_util(e, Axiom::kEJR);
    c.require(static_jr_ilp(e).welfare == jr.welfare, tag + ": JR program");
    c.require(static_pjr_ilp(e).welfare == pjr.welfare, tag + ": PJR program");
    c.require(static_ejr_ilp(e).welfare == ejr.welfare, tag + ": EJR program");
  }
  for (int i = 0; i < 200; ++i) {
    RandomParams p;
    p.type_count = 1 + rng.below(3);
    p.num_voters = p.type_count + rng.below(4);
    p.num_candidates = 1 + rng.below(3);
    p.num_rounds = 1 + rng.below(6);
    p.approval_probability = 0.5;
    p.complete = rng.bernoulli(0.7);
    p.is_static = rng.bernoulli(0.3);
    const auto typed = std::get<TypedElection>(gen_random(p, rng.next()));
    const auto e = typed.expand();
    const std::string tag = "typed #" + str(i);
    c.require(typed_jr_dp(typed).welfare == brute_force_max_util(e, Axiom::kJR).welfare, tag + ": JR program");
    c.require(typed_ejr_dp(typed).welfare == brute_force_max_util(e, Axiom::kEJR).welfare, tag + ": EJR program");
  }
  for (int i = 0; i < 100; ++i) {
    RandomParams p;
    p.type_count = 1 + rng.below(3);
    p.num_voters = p.type_count + rng.below(5);
    p.num_candidates = 1 + rng.below(4);
    p.num_rounds = 1 + rng.below(8);
    p.is_static = true;
    p.profile_count = 1;
    const auto typed = std::get<TypedElection>(gen_random(p, rng.next()));
    c.require(profile_pjr_ilp(typed).welfare == static_pjr_ilp(typed.expand()).welfare,
              "profile #" + str(i) + ": profile program disagrees with the static PJR program");
  }
  c.note("200 static, 200 typed and 100 single-profile instances agree");
}

void collapse(Check& c) {
  Rng rng(0x1e33);
  std::size_t low = 0, tries = 0;
  while (low < 100 && tries < 100'000) {
    ++tries;
    const auto e = random_temporal(rng, 1 + rng.below(6), 1 + rng.below(4), 1 + rng.below(5),
                                   0.2 + 0.4 * rng.unit(), rng.bernoulli(0.5), rng.bernoulli(0.7));
    if (!static_collapse_class(e).low_demand) continue;
    ++low;
    const AxiomChecker checker(e);
    for (int k = 0; k < 50; ++k) {
      const auto o = random_outcome(rng, e);
      const bool jr = checker.holds(o, Axiom::kJR), pjr = checker.holds(o, Axiom::kPJR),
                 ejr = checker.holds(o, Axiom::kEJR), plus = checker.holds(o, Axiom::kEJRPlus);
      c.require(jr == pjr && pjr == ejr, "low-demand instance " + str(low) + ": JR/PJR/EJR verdicts differ");
      c.require((!plus || ejr) && (!ejr || pjr) && (!pjr || jr), "hierarchy violated");
    }
  }
  c.require(low == 100, "only " + str(low) + " low-demand instances found");
  for (int i = 0; i < 100; ++i) {
    const auto e = random_temporal(rng, 1 + rng.below(6), 1 + rng.below(4), 1 + rng.below(6),
                                   0.2 + 0.5 * rng.unit(), true, rng.bernoulli(0.7));
    const AxiomChecker checker(e);
    for (int k = 0; k < 50; ++k) {
      const auto o = random_outcome(rng, e);
      const bool jr = checker.holds(o, Axiom::kJR), pjr = checker.holds(o, Axiom::kPJR),
                 ejr = checker.holds(o, Axiom::kEJR), plus = checker.holds(o, Axiom::kEJRPlus);
      c.require(ejr == plus, "static instance " + str(i) + ": EJR/EJR+ verdicts differ");
      c.require((!plus || ejr) && (!ejr || pjr) && (!pjr || jr), "hierarchy violated");
    }
  }
  c.note("100 low-demand and 100 static instances, 50 outcomes each");
}

void rounding(Check& c) {
  Rng rng(0x7e5);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + rng.below(6);
    const std::size_t l = n + rng.below(11 - n);
    const auto e = random_temporal(rng, n, 1 + rng.below(4), l, 0.2 + 0.5 * rng.unit(), rng.bernoulli(0.3), true);
    const auto r = jr_reserve_rounding(e);
    const std::size_t star = max_welfare_unconstrained(e).value;
    const std::string tag = "instance " + str(i);
    c.require(r.certified && check_axiom(e, r.outcome, Axiom::kJR).holds, tag + ": not JR-certified");
    c.require(meets_rounding_bound(r.welfare, star, n, l),
              tag + ": welfare " + str(r.welfare) + " below the bound for Util*=" + str(star));
  }
  c.note("500 instances certified and within the bound");
}

struct Criterion {
  const char* name;
  void (*run)(Check&);
};

const Criterion kCriteria[] = {
    {"core-private", core_private}, {"jr-tight", jr_tight}, {"separation", separation},
    {"universal-bound", universal}, {"x3c-reduction", x3c}, {"vertex-cover-reduction", vertex_cover},
    {"solver-equivalence", solvers}, {"collapse-equivalence", collapse}, {"rounding-guarantee", rounding},
};

}  // namespace

const std::vector<std::string>& criterion_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : kCriteria) out.emplace_back(c.name);
    return out;
  }();
  return names;
}

std::vector<int> select_criteria(std::string_view suite) {
  const auto& names = criterion_names();
  const int count = static_cast<int>(names.size());
  if (suite == "all") {
    std::vector<int> all(names.size());
    for (int i = 0; i < count; ++i) all[i] = i + 1;
    return all;
  }
  for (int i = 0; i < count; ++i)
    if (names[i] == suite || std::to_string(i + 1) == suite) return {i + 1};
  throw InputError("unknown suite '" + std::string(suite) + "'");
}

std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, std::size_t jobs) {
  std::vector<CriterionResult> out(ids.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < ids.size(); i = next++) {
      const Criterion& crit = kCriteria[ids[i] - 1];
      CriterionResult res{ids[i], crit.name, false, "", 0};
      const auto start = std::chrono::steady_clock::now();
      Check check;
      try {
        crit.run(check);
        res.passed = check.ok();
        res.detail = check.detail();
      } catch (const std::exception& e) {
        res.detail = std::string("error: ") + e.what();
      }
      res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      out[i] = std::move(res);
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, ids.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

void print_results(std::ostream& out, const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    char time[32];
    std::snprintf(time, sizeof time, "%.2fs", r.seconds);
    out << (r.passed ? "PASS" : "FAIL") << "  " << r.id << ' ' << r.name << "  (" << time << ")  "
        << r.detail << '\n';
  }
}

}  // namespace tvote
