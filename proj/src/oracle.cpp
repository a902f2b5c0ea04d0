#include "liqcurve/oracle.hpp"

#include <algorithm>

#include "liqcurve/errors.hpp"

namespace liqcurve::oracle {

namespace {

constexpr double kMinBracket = 1e-9;
constexpr double kMaxBracket = 1e9;

// Evaluated here directly rather than through curve_residual so that the
// reference shares no arithmetic with the solver it checks.
double residual_at(const CurveResidualSpec& spec, double x) {
    const double k = spec.k;
    const double g0 = spec.growths.pool.value_or(x);
    double inverse = 0.0;
    double growth = 0.0;
    for (std::size_t i = 0; i < spec.growths.size(); ++i) {
        const double g = spec.growths.assets[i].value_or(x);
        inverse += spec.omega_new[i] / g;
        growth += spec.omega_prev[i] * g;
    }
    return g0 * ((1.0 - k) + k * inverse) - k - (1.0 - k) * growth;
}

bool straddles(double r_lo, double r_hi) {
    return (r_lo <= 0.0 && r_hi >= 0.0) || (r_lo >= 0.0 && r_hi <= 0.0);
}

void require_one_unknown(const CurveResidualSpec& spec) {
    const auto unknowns = spec.growths.unknown_count();
    if (unknowns == 0) fail(ErrorCode::NoUnknown, "nothing to solve for");
    if (unknowns > 1) fail(ErrorCode::MultipleUnknowns, "exactly one growth may be unknown");
}

}  // namespace

double bisect_growth(const CurveResidualSpec& spec, BracketingInterval bracket, int max_iter) {
    require_one_unknown(spec);
    if (!(bracket.lo > 0.0 && bracket.hi > bracket.lo)) {
        fail(ErrorCode::NonPositiveInput, "bracket must satisfy 0 < lo < hi");
    }
    double lo = bracket.lo;
    double hi = bracket.hi;
    double r_lo = residual_at(spec, lo);
    const double r_hi = residual_at(spec, hi);
    if (r_lo == 0.0) return lo;
    if (r_hi == 0.0) return hi;
    if (!straddles(r_lo, r_hi)) {
        fail(ErrorCode::NoSignChange, "residual keeps its sign across the bracket");
    }
    for (int iter = 0; iter < max_iter; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi || hi - lo <= 1e-15 * mid) return mid;
        const double r_mid = residual_at(spec, mid);
        if (r_mid == 0.0) return mid;
        if (straddles(r_lo, r_mid)) {
            hi = mid;
        } else {
            lo = mid;
            r_lo = r_mid;
        }
    }
    fail(ErrorCode::MaxIterations, "bisection did not converge");
}

BracketingInterval auto_bracket(const CurveResidualSpec& spec) {
    require_one_unknown(spec);
    BracketingInterval b;
    for (;;) {
        if (straddles(residual_at(spec, b.lo), residual_at(spec, b.hi))) return b;
        if (b.lo <= kMinBracket && b.hi >= kMaxBracket) break;
        b.lo = std::max(kMinBracket, b.lo / 4.0);
        b.hi = std::min(kMaxBracket, b.hi * 4.0);
    }
    fail(ErrorCode::NoSignChange, "no sign change in [1e-9, 1e9]: trade is infeasible");
}

double solve_by_bisection(const CurveResidualSpec& spec, int max_iter) {
    return bisect_growth(spec, auto_bracket(spec), max_iter);
}

}  // namespace liqcurve::oracle
