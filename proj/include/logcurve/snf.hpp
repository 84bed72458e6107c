#pragma once

#include <vector>

#include "logcurve/matrix.hpp"

namespace logcurve {

/// Smith normal form u * a * v = d with u, v unimodular and d diagonal,
/// nonnegative, each entry dividing the next.
struct SmithResult {
  ZMat d, u, v;
  std::vector<Int> divisors;  // nonzero diagonal entries of d, in order
};

// Exact integer reduction; verifies u*a*v == d and |det u| = |det v| = 1
// before returning.
SmithResult smith_normal_form(const ZMat& a);

// Saturated basis of { x : a x = 0 } as matrix columns.  Columns extend to a
// basis of Z^cols, so the span is primitive in the ambient lattice.
ZMat z_right_kernel(const ZMat& a);

}  // namespace logcurve
