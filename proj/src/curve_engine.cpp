#include "liqcurve/curve_engine.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "liqcurve/errors.hpp"

namespace liqcurve {

namespace {

void check_k(double k) {
    if (!(k >= 0.0 && k <= 1.0)) {
        fail(ErrorCode::KOutOfRange, "k must lie in [0, 1], got " + format_real(k));
    }
}

void check_growth(double g) {
    if (!(g >= kGrowthFloor) || !std::isfinite(g)) {
        fail(ErrorCode::NonPositiveGrowth, "growth factor out of domain: " + format_real(g));
    }
}

struct Sums {
    double weighted_growth = 0.0;   // sum w_prev_i g_i
    double weighted_inverse = 0.0;  // sum w_new_i / g_i
};

Sums asset_sums(const CurveResidualSpec& spec, std::optional<std::size_t> skip = {}) {
    Sums s;
    for (std::size_t i = 0; i < spec.growths.size(); ++i) {
        if (skip && *skip == i) continue;
        const double g = *spec.growths.assets[i];
        check_growth(g);
        s.weighted_growth += spec.omega_prev[i] * g;
        s.weighted_inverse += spec.omega_new[i] / g;
    }
    return s;
}

}  // namespace

void CurveResidualSpec::validate(double tol) const {
    check_k(k);
    if (omega_prev.size() != omega_new.size() || omega_prev.size() != growths.size() ||
        growths.size() == 0) {
        fail(ErrorCode::ShapeMismatch, "weights and growths must have equal, non-zero length");
    }
    omega_prev.validate(tol);
    omega_new.validate(tol);
    growths.validate();
}

double ek_average(double f_new, double f_prev, double k) {
    check_k(k);
    return k * f_new + (1.0 - k) * f_prev;
}

double eval_g0(const CurveResidualSpec& spec) {
    check_k(spec.k);
    for (const auto& g : spec.growths.assets) {
        if (!g) fail(ErrorCode::MultipleUnknowns, "eval_g0 needs every asset growth");
    }
    const Sums s = asset_sums(spec);

    // Staking every asset in the same proportion collapses the curve to g0 = g.
    const double first = *spec.growths.assets.front();
    bool uniform = true;
    for (const auto& g : spec.growths.assets) uniform = uniform && *g == first;
    if (uniform) return first;

    const double k = spec.k;
    return (k + (1.0 - k) * s.weighted_growth) / ((1.0 - k) + k * s.weighted_inverse);
}

double curve_residual(const CurveResidualSpec& spec) {
    check_k(spec.k);
    if (!spec.growths.fully_known()) {
        fail(ErrorCode::NoUnknown, "curve_residual needs every growth factor");
    }
    const double g0 = *spec.growths.pool;
    check_growth(g0);
    const Sums s = asset_sums(spec);
    const double k = spec.k;
    return g0 * ((1.0 - k) + k * s.weighted_inverse) - k - (1.0 - k) * s.weighted_growth;
}

double curve_residual_scale(const CurveResidualSpec& spec) {
    const double k = spec.k;
    const double g0 = spec.growths.pool.value_or(1.0);
    double scale = std::abs(g0 * (1.0 - k)) + k;
    for (std::size_t i = 0; i < spec.growths.size(); ++i) {
        const double g = spec.growths.assets[i].value_or(1.0);
        scale += std::abs(g0 * k * spec.omega_new[i] / g) +
                 std::abs((1.0 - k) * spec.omega_prev[i] * g);
    }
    return std::max(1.0, scale);
}

CurveResidualSpec fill_unknown(const CurveResidualSpec& spec, double value) {
    CurveResidualSpec out = spec;
    if (!out.growths.pool) {
        out.growths.pool = value;
        return out;
    }
    for (auto& g : out.growths.assets) {
        if (!g) {
            g = value;
            return out;
        }
    }
    fail(ErrorCode::NoUnknown, "growth vector has no unknown slot");
}

double solve_unknown_growth(const CurveResidualSpec& spec, double rel_tol) {
    const std::size_t unknowns = spec.growths.unknown_count();
    if (unknowns == 0) fail(ErrorCode::NoUnknown, "nothing to solve for");
    if (unknowns > 1) fail(ErrorCode::MultipleUnknowns, "exactly one growth may be unknown");
    spec.validate(rel_tol);

    if (!spec.growths.pool) return eval_g0(spec);

    std::size_t j = 0;
    while (spec.growths.assets[j]) ++j;

    const double g0 = *spec.growths.pool;
    check_growth(g0);

    // The identity point lies on every curve, and R is strictly monotone in g_j.
    bool identity = g0 == 1.0;
    for (const auto& g : spec.growths.assets) identity = identity && (!g || *g == 1.0);
    if (identity) return 1.0;

    const double k = spec.k;
    const Sums s = asset_sums(spec, j);
    const double a = (1.0 - k) * spec.omega_prev[j];
    const double b = k + (1.0 - k) * s.weighted_growth - g0 * ((1.0 - k) + k * s.weighted_inverse);
    const double c = -g0 * k * spec.omega_new[j];

    double root = 0.0;
    if (k == 0.0) {
        root = -b / a;
    } else if (k == 1.0) {
        if (!(b > 0.0)) {
            fail(ErrorCode::NoPositiveRoot,
                 "k = 1 curve has no positive solution (half-pool restriction)");
        }
        root = -c / b;
    } else {
        const double q = -0.5 * (b + std::copysign(std::sqrt(b * b - 4.0 * a * c), b));
        root = b >= 0.0 ? c / q : q / a;
    }
    if (!(root >= kGrowthFloor) || !std::isfinite(root)) {
        fail(ErrorCode::NoPositiveRoot, "curve has no admissible positive solution");
    }

    const CurveResidualSpec solved = fill_unknown(spec, root);
    const double residual = curve_residual(solved);
    if (std::abs(residual) > rel_tol * curve_residual_scale(solved)) {
        fail(ErrorCode::ResidualCheckFailed,
             "solved growth misses the curve by " + format_real(residual));
    }
    return root;
}

}  // namespace liqcurve
