#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tvote {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

// Names of the acceptance criteria, indexed from 1.
const std::vector<std::string>& criterion_names();

// Accepts "all", a criterion number or a criterion name; throws InputError
// otherwise.
std::vector<int> select_criteria(std::string_view suite);

// Runs the selected criteria, up to `jobs` at a time; results follow `ids`.
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, std::size_t jobs = 1);

// One "PASS"/"FAIL" line per result.
void print_results(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace tvote
