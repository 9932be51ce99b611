#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "tvote/ip.hpp"

namespace tvote::detail {

struct LpRow {
  std::vector<mpq_class> coefs;  // dense, one per structural column
  Comparator cmp = Comparator::kLe;
  mpq_class rhs;
};

struct LpResult {
  bool feasible = false;
  mpq_class value;
  std::vector<mpq_class> x;
};

// max c.z subject to rows, z >= 0. Two-phase tableau simplex in exact
// rational arithmetic with Bland's rule. The caller must supply rows that
// bound every column (the region is assumed bounded).
LpResult solve_lp(const std::vector<LpRow>& rows, const std::vector<mpq_class>& objective);

}  // namespace tvote::detail
