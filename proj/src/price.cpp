#include "tvote/price.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include "tvote/errors.hpp"
#include "tvote/generators.hpp"

namespace tvote {
namespace {

using i128 = __int128;

Verdict compare_le(i128 lhs, i128 rhs) {
  if (lhs < rhs) return Verdict::kPass;
  return lhs == rhs ? Verdict::kTight : Verdict::kFail;
}

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

bool in_scope(const PriceRecord& r) { return r.complete && r.ell >= r.n; }

}  // namespace

Ratio Ratio::make(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw InputError("ratio with zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  return {num / (g ? g : 1), den / (g ? g : 1)};
}

std::string Ratio::str() const { return std::to_string(num) + "/" + std::to_string(den); }

std::string Ratio::decimal() const {
  return fixed(static_cast<double>(num) / static_cast<double>(den));
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "PASS";
    case Verdict::kTight: return "TIGHT";
    case Verdict::kFail: return "FAIL";
    case Verdict::kNotApplicable: return "NOT_APPLICABLE";
    case Verdict::kUndefined: return "UNDEFINED";
  }
  return "?";
}

std::string FamilySpec::id() const {
  if (family == "core-private") return family + "/ell=" + std::to_string(ell);
  if (family == "jr-tight") return family + "/n=" + std::to_string(n) + "/ell=" + std::to_string(ell);
  if (family == "separation") return family + "/n=" + std::to_string(n) + "/a=" + std::to_string(a);
  return family;
}

TemporalElection build_family(const FamilySpec& spec) {
  if (spec.family == "core-private") return gen_core_private(spec.ell);
  if (spec.family == "jr-tight") return gen_jr_tight(spec.n, spec.ell);
  if (spec.family == "separation") return gen_separation(spec.n, spec.a);
  throw InputError("unknown family '" + spec.family + "' (core-private, jr-tight, separation)");
}

PriceRecord price_ratio(const TemporalElection& e, Axiom axiom, SolverId solver,
                        const SolverLimits& limits, const FamilySpec& family) {
  const auto start = std::chrono::steady_clock::now();
  PriceRecord rec;
  rec.instance_id = family.family.empty() ? "instance" : family.id();
  rec.family = family;
  rec.n = e.num_voters();
  rec.m = e.num_candidates();
  rec.ell = e.num_rounds();
  rec.complete = e.is_complete();
  rec.axiom = axiom;
  rec.util_star = max_welfare_unconstrained(e).value;
  const SolverResult res = solve(e, axiom, solver, limits);
  rec.solver = res.solver;
  rec.certified = res.certified;
  if (res.feasible) rec.util_phi = res.welfare;
  if (rec.util_phi > 0) rec.ratio = Ratio::make(rec.util_star, rec.util_phi);
  rec.bounds = bound_suite(rec);
  rec.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<BoundCheck> bound_suite(const PriceRecord& r) {
  const i128 n = static_cast<i128>(r.n);
  const i128 l = static_cast<i128>(r.ell);
  const i128 us = static_cast<i128>(r.util_star);
  const i128 up = static_cast<i128>(r.util_phi);
  const bool scope = in_scope(r);
  const bool defined = r.status == "OK" && r.ratio.has_value();
  auto verdict = [&](auto&& check) {
    if (!scope) return Verdict::kNotApplicable;
    if (!defined) return Verdict::kUndefined;
    return check();
  };

  std::vector<BoundCheck> out;
  out.push_back({"rho>=1", "1", verdict([&] { return compare_le(up, us); })});
  // rho <= n  <=>  U* <= n U_phi
  out.push_back({"rho<=n", std::to_string(r.n), verdict([&] { return compare_le(us, n * up); })});

  if (r.axiom == Axiom::kJR) {
    // rho <= l / (l - n + 2 sqrt(n) - 1)  <=>  2 sqrt(n) U* <= L with
    // L = l U_phi - (l - n - 1) U*.
    const double bound = static_cast<double>(r.ell) /
                         (static_cast<double>(r.ell) - static_cast<double>(r.n) +
                          2 * std::sqrt(static_cast<double>(r.n)) - 1);
    out.push_back({"jr_horizon", fixed(bound), verdict([&] {
                     const i128 L = l * up - (l - n - 1) * us;
                     if (L < 0) return Verdict::kFail;
                     return compare_le(4 * n * us * us, L * L);
                   })});
  }

  const auto& fam = r.family;
  if (fam.family == "core-private") {
    // rho >= sqrt(l) / 2  <=>  l U_phi^2 <= 4 U*^2
    out.push_back({"sqrt_lower", fixed(std::sqrt(static_cast<double>(r.ell)) / 2),
                   verdict([&] { return compare_le(l * up * up, 4 * us * us); })});
  }
  if (fam.family == "separation") {
    const std::size_t k = ceil_sqrt(fam.n);
    if (r.axiom == Axiom::kJR) {
      const Ratio cap = Ratio::make(fam.a, fam.a - 1);
      out.push_back({"jr_separation", cap.str(), verdict([&] {
                       return compare_le(us * static_cast<i128>(cap.den),
                                         static_cast<i128>(cap.num) * up);
                     })});
    } else {
      const Ratio exact = Ratio::make(fam.a * k * fam.n, fam.a * (fam.n - k + k * k));
      out.push_back({"separation_exact", exact.str(), verdict([&] {
                       return *r.ratio == exact ? Verdict::kTight : Verdict::kFail;
                     })});
    }
  }
  return out;
}

void bound_suite(std::vector<PriceRecord>& records) {
  for (auto& r : records) r.bounds = bound_suite(r);
}

bool bounds_hold(const PriceRecord& record) {
  for (const auto& b : record.bounds)
    if (b.verdict == Verdict::kFail) return false;
  return true;
}

std::vector<PriceRecord> sweep(const std::vector<SweepCell>& cells, SolverId solver,
                               const SolverLimits& limits, std::size_t jobs) {
  std::vector<PriceRecord> out(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const auto& cell = cells[i];
      const auto start = std::chrono::steady_clock::now();
      try {
        out[i] = price_ratio(build_family(cell.family), cell.axiom, solver, limits, cell.family);
      } catch (const CapabilityError& e) {
        PriceRecord rec;
        rec.instance_id = cell.family.id();
        rec.family = cell.family;
        rec.axiom = cell.axiom;
        rec.status = "SKIPPED";
        rec.note = e.what();
        const auto election = build_family(cell.family);
        rec.n = election.num_voters();
        rec.m = election.num_candidates();
        rec.ell = election.num_rounds();
        rec.complete = election.is_complete();
        rec.util_star = max_welfare_unconstrained(election).value;
        rec.bounds = bound_suite(rec);
        rec.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out[i] = std::move(rec);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, cells.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

void write_csv(std::ostream& out, const std::vector<PriceRecord>& records) {
  out << "instance_id,family,n,m,ell,axiom,util_star,util_phi,ratio_rational,ratio_decimal,"
         "bound_name,bound_value,verdict,status,runtime_ms\n";
  for (const auto& r : records) {
    std::string names, values, verdicts;
    for (std::size_t i = 0; i < r.bounds.size(); ++i) {
      const char* sep = i ? ";" : "";
      names += sep + r.bounds[i].name;
      values += sep + r.bounds[i].value;
      verdicts += sep + std::string(verdict_name(r.bounds[i].verdict));
    }
    const bool ok = r.status == "OK";
    out << r.instance_id << ',' << r.family.family << ',' << r.n << ',' << r.m << ',' << r.ell << ','
        << axiom_name(r.axiom) << ',' << r.util_star << ',' << (ok ? std::to_string(r.util_phi) : "")
        << ',' << (r.ratio ? r.ratio->str() : "") << ',' << (r.ratio ? r.ratio->decimal() : "")
        << ',' << names << ',' << values << ',' << verdicts << ',' << r.status << ','
        << fixed(r.runtime_ms) << '\n';
  }
}

}  // namespace tvote
