#pragma once

#include <vector>

#include "sbim/scalars.hpp"

namespace sbim {

/// Smith normal form U*A*V = D with U, V unimodular and D diagonal,
/// d_1 | d_2 | ..., all diagonal entries nonnegative.
struct SmithResult {
  IntMat U, D, V;
  std::vector<std::int64_t> diag;  // nonzero diagonal entries, in divisibility order
  int rank = 0;
};

SmithResult smith_normal_form(const IntMat& a);

}  // namespace sbim
