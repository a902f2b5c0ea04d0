#pragma once

#include "liqcurve/core_model.hpp"
#include "liqcurve/weights.hpp"

namespace liqcurve {

/// Everything the liquidity curve relates for one step: the curve parameter,
/// weights before and after the step, and the growth factors (at most one of
/// which is unknown).
struct CurveResidualSpec {
    double k = 0.5;
    WeightVector omega_prev;
    WeightVector omega_new;
    GrowthVector growths;

    void validate(double tol = 1e-12) const;
};

/// Growth factors below this are treated as a drained balance.
inline constexpr double kGrowthFloor = 1e-12;

/// k * f_new + (1 - k) * f_prev
double ek_average(double f_new, double f_prev, double k);

/// Pool-token growth implied by the asset growths:
///   g0 = [k + (1-k) sum w_prev_i g_i] / [(1-k) + k sum w_new_i / g_i]
/// The pool slot of `spec.growths` is ignored.
double eval_g0(const CurveResidualSpec& spec);

/// R = g0 [(1-k) + k sum w_new_i / g_i] - k - (1-k) sum w_prev_i g_i.
/// Zero exactly on the curve, affine in g0 and strictly decreasing in each g_i.
double curve_residual(const CurveResidualSpec& spec);

/// Sum of the magnitudes of the terms of R; the scale residual tolerances are
/// measured against (never below 1).
double curve_residual_scale(const CurveResidualSpec& spec);

/// Solves the curve for the single unknown slot of `spec.growths`.
///
/// An unknown g0 is the closed form eval_g0. An unknown asset growth g_j turns
/// R * g_j = 0 into a*g^2 + b*g + c = 0 with a = (1-k) w_prev_j >= 0 and
/// c = -g0 k w_new_j <= 0. For 0 < k < 1 exactly one root is positive and it
/// is taken with the cancellation-free form of the quadratic formula. k = 0
/// and k = 1 degenerate to linear equations whose solution may be
/// non-positive, reported as NoPositiveRoot (for k = 1 this is the
/// half-pool restriction).
double solve_unknown_growth(const CurveResidualSpec& spec, double rel_tol = 1e-12);

/// Copy of `spec` with the unknown slot set to `value`.
CurveResidualSpec fill_unknown(const CurveResidualSpec& spec, double value);

}  // namespace liqcurve
