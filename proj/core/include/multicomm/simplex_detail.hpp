#pragma once

#include "multicomm/rational.hpp"

namespace multicomm::detail {

enum class StdLpStatus { Optimal, Infeasible, Unbounded };

/// Exact simplex with Bland's rule on the standard form
///   min c.x  s.t.  A x = b,  x >= 0.
StdLpStatus solve_standard_lp(const RatMat& A, const RatVec& b, const RatVec& c,
                              RatVec& x, Rat& value);

}  // namespace multicomm::detail
