#include <iostream>
#include <thread>

#include "tvote/bench.hpp"

int main() {
  const auto results = tvote::run_criteria(tvote::select_criteria("all"),
                                           std::max(1U, std::thread::hardware_concurrency()));
  tvote::print_results(std::cout, results);
  for (const auto& r : results)
    if (!r.passed) return 1;
  return 0;
}
