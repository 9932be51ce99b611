#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tvote/axioms.hpp"
#include "tvote/election.hpp"
#include "tvote/solvers.hpp"

namespace tvote {

// Nonnegative fraction in lowest terms.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Ratio make(std::uint64_t num, std::uint64_t den);
  std::string str() const;      // "p/q"
  std::string decimal() const;  // six decimals
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

enum class Verdict { kPass, kTight, kFail, kNotApplicable, kUndefined };
std::string_view verdict_name(Verdict v);  // PASS, TIGHT, FAIL, NOT_APPLICABLE, UNDEFINED

struct BoundCheck {
  std::string name;
  std::string value;  // the bound, rendered for reports
  Verdict verdict = Verdict::kNotApplicable;
};

// Which generator produced an instance; enables family-specific bounds.
struct FamilySpec {
  std::string family;  // "core-private", "jr-tight", "separation" or empty
  std::size_t n = 0;
  std::size_t ell = 0;
  std::size_t a = 0;

  std::string id() const;
};

TemporalElection build_family(const FamilySpec& spec);

struct PriceRecord {
  std::string instance_id;
  FamilySpec family;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t ell = 0;
  bool complete = false;
  Axiom axiom = Axiom::kJR;
  std::size_t util_star = 0;
  std::size_t util_phi = 0;
  std::optional<Ratio> ratio;  // absent when util_phi = 0
  SolverId solver = SolverId::kAuto;
  bool certified = false;
  std::vector<BoundCheck> bounds;
  std::string status = "OK";  // OK or SKIPPED
  std::string note;
  double runtime_ms = 0;
};

PriceRecord price_ratio(const TemporalElection& election, Axiom axiom, SolverId solver,
                        const SolverLimits& limits = {}, const FamilySpec& family = {});

// Evaluates the applicable bounds of one record, in exact integer arithmetic.
std::vector<BoundCheck> bound_suite(const PriceRecord& record);
// Fills record.bounds for every record.
void bound_suite(std::vector<PriceRecord>& records);
// True when no bound verdict is FAIL.
bool bounds_hold(const PriceRecord& record);

struct SweepCell {
  FamilySpec family;
  Axiom axiom = Axiom::kJR;
};

// Cells run on up to `jobs` threads; records come back in cell order. Cells
// exceeding a budget yield status SKIPPED.
std::vector<PriceRecord> sweep(const std::vector<SweepCell>& cells, SolverId solver,
                               const SolverLimits& limits = {}, std::size_t jobs = 1);

// Header plus one row per record; multiple bounds are joined with ';'.
void write_csv(std::ostream& out, const std::vector<PriceRecord>& records);

}  // namespace tvote
