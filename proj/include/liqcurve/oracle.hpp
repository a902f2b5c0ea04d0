#pragma once

#include "liqcurve/curve_engine.hpp"

namespace liqcurve::oracle {

/// Search interval for an unknown growth factor.
struct BracketingInterval {
    double lo = 0.5;
    double hi = 2.0;
};

/// Plain bisection on curve_residual over `bracket`. Slow, but its only
/// assumptions are continuity and a sign change, which is what makes it a
/// usable reference for the closed-form solver. Stops when the bracket is
/// narrower than 1e-15 relative or cannot be split further.
double bisect_growth(const CurveResidualSpec& spec, BracketingInterval bracket,
                     int max_iter = 200);

/// Expands [1/2, 2] geometrically by 4x per side until the residual changes
/// sign, giving up (NoSignChange) at [1e-9, 1e9].
BracketingInterval auto_bracket(const CurveResidualSpec& spec);

/// auto_bracket followed by bisect_growth.
double solve_by_bisection(const CurveResidualSpec& spec, int max_iter = 200);

}  // namespace liqcurve::oracle
