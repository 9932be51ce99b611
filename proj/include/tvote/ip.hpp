#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tvote {

struct LinearTerm {
  std::size_t var = 0;
  std::int64_t coef = 0;
};

enum class Comparator { kLe, kGe, kEq };

struct IpVariable {
  std::string name;
  std::int64_t lower = 0;
  std::int64_t upper = 0;
};

struct IpConstraint {
  std::vector<LinearTerm> terms;
  Comparator cmp = Comparator::kLe;
  std::int64_t rhs = 0;
};

// max c.x subject to linear constraints over bounded integer variables.
class IntegerProgram {
 public:
  std::size_t add_variable(std::string name, std::int64_t lower, std::int64_t upper);
  void add_constraint(std::vector<LinearTerm> terms, Comparator cmp, std::int64_t rhs);
  void set_objective(std::vector<LinearTerm> terms);

  const std::vector<IpVariable>& variables() const { return variables_; }
  const std::vector<IpConstraint>& constraints() const { return constraints_; }
  const std::vector<LinearTerm>& objective() const { return objective_; }
  std::size_t num_variables() const { return variables_.size(); }

  // Merges duplicate terms, drops zero coefficients and removes constraints
  // that are exact duplicates of earlier ones.
  void normalize();

  std::int64_t evaluate_objective(const std::vector<std::int64_t>& x) const;
  bool is_feasible(const std::vector<std::int64_t>& x) const;

 private:
  void check_terms(const std::vector<LinearTerm>& terms) const;

  std::vector<IpVariable> variables_;
  std::vector<IpConstraint> constraints_;
  std::vector<LinearTerm> objective_;
};

enum class IpStatus { kOptimal, kInfeasible };

struct IpSolution {
  IpStatus status = IpStatus::kInfeasible;
  std::vector<std::int64_t> assignment;
  std::int64_t value = 0;
  std::uint64_t nodes = 0;
};

struct IpOptions {
  std::uint64_t node_budget = 10'000'000;
  // Programs whose box has at most this many points are enumerated directly.
  std::uint64_t enumeration_threshold = 4096;
  // Return the lexicographically smallest optimal assignment (declaration
  // order). Costs one extra search per variable.
  bool lexicographic = true;
  // Only solutions with objective >= cutoff are of interest; INFEASIBLE is
  // returned when none exists.
  std::optional<std::int64_t> cutoff;
};

// Exact: branch-and-bound over rational LP relaxations, or enumeration for
// small boxes. Throws CapabilityError when the node budget runs out.
IpSolution solve_ip(const IntegerProgram& program, const IpOptions& options = {});

}  // namespace tvote
