#include <doctest.h>

#include <cmath>
#include <random>

#include "liqcurve/curve_engine.hpp"
#include "liqcurve/errors.hpp"
#include "liqcurve/oracle.hpp"
#include "liqcurve/rebalancing.hpp"

using namespace liqcurve;

namespace {

WeightVector equal(std::size_t n) { return weights_at(WeightPolicy::equal(), n); }

CurveResidualSpec with_growths(double k, std::vector<double> g, std::optional<double> g0) {
    const auto w = equal(g.size());
    CurveResidualSpec spec{k, w, w, {}};
    for (double x : g) spec.growths.assets.emplace_back(x);
    spec.growths.pool = g0;
    return spec;
}

// g0 unknown; asset j unknown when `unknown` is set.
CurveResidualSpec swap_spec(double k, std::size_t n, double g1) {
    const auto w = equal(n);
    CurveResidualSpec spec{k, w, w, GrowthVector::ones(n)};
    spec.growths.assets[0] = g1;
    spec.growths.assets[1].reset();
    return spec;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected liqcurve::Error");
    return ErrorCode::InvalidTrade;
}

}  // namespace

TEST_CASE("ek_average") {
    CHECK(ek_average(4.0, 2.0, 0.0) == 2.0);
    CHECK(ek_average(4.0, 2.0, 1.0) == 4.0);
    CHECK(ek_average(4.0, 2.0, 0.5) == 3.0);
    CHECK(code_of([] { ek_average(4.0, 2.0, 1.5); }) == ErrorCode::KOutOfRange);
    CHECK(code_of([] { ek_average(4.0, 2.0, -0.1); }) == ErrorCode::KOutOfRange);
}

TEST_CASE("eval_g0 examples") {
    for (double k : {0.0, 0.2, 0.5, 1.0}) {
        CHECK(eval_g0(with_growths(k, {1.0, 1.0, 1.0}, std::nullopt)) == 1.0);
    }
    CHECK(eval_g0(with_growths(0.0, {0.5, 1.5}, std::nullopt)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval_g0(with_growths(1.0, {0.5, 1.5}, std::nullopt)) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(code_of([] { eval_g0(with_growths(0.5, {0.0, 1.5}, std::nullopt)); }) ==
          ErrorCode::NonPositiveGrowth);
    CHECK(code_of([] { eval_g0(with_growths(0.5, {1e-13, 1.5}, std::nullopt)); }) ==
          ErrorCode::NonPositiveGrowth);
}

TEST_CASE("eval_g0 reduces to the equal-weight closed form") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        const double k = unit(rng);
        std::vector<double> g(n);
        double sum = 0.0, inv = 0.0;
        for (auto& x : g) {
            x = 0.05 + 20.0 * unit(rng);
            sum += x;
            inv += 1.0 / x;
        }
        const double nn = static_cast<double>(n);
        const double expected = (nn * k + (1.0 - k) * sum) / (nn * (1.0 - k) + k * inv);
        CHECK(eval_g0(with_growths(k, g, std::nullopt)) == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("curve_residual examples") {
    CHECK(curve_residual(with_growths(0.3, {1.0, 1.0}, 1.0)) == 0.0);
    CHECK(curve_residual(with_growths(0.5, {2.0, 0.5}, 1.0)) == doctest::Approx(0.0));
    // 1 * (1 + 0) - 0 - (0.5 + 1.4) / 2
    CHECK(curve_residual(with_growths(0.0, {0.5, 1.4}, 1.0)) ==
          doctest::Approx(0.05).epsilon(1e-14));
    CHECK(code_of([] { curve_residual(with_growths(0.5, {1.0, 1.0}, std::nullopt)); }) ==
          ErrorCode::NoUnknown);
}

TEST_CASE("curve_residual is affine in g0 with the stated slope") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double k = unit(rng);
        std::vector<double> g{0.05 + 5 * unit(rng), 0.05 + 5 * unit(rng), 0.05 + 5 * unit(rng)};
        const double a = 0.1 + unit(rng), b = a + 0.1 + unit(rng);
        const double ra = curve_residual(with_growths(k, g, a));
        const double rb = curve_residual(with_growths(k, g, b));
        const double slope = (1.0 - k) + k * (1.0 / g[0] + 1.0 / g[1] + 1.0 / g[2]) / 3.0;
        CHECK((rb - ra) / (b - a) == doctest::Approx(slope).epsilon(1e-9));
        CHECK(slope > 0.0);
    }
}

TEST_CASE("solve_unknown_growth examples") {
    CHECK(solve_unknown_growth(swap_spec(0.5, 2, 2.0)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(solve_unknown_growth(swap_spec(1.0, 2, 0.75)) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(solve_unknown_growth(swap_spec(0.0, 2, 0.5)) == doctest::Approx(1.5).epsilon(1e-15));
    // Frozen from the bisection oracle (see test_oracle).
    CHECK(solve_unknown_growth(swap_spec(0.3, 2, 0.8)) ==
          doctest::Approx(1.2276659317867236).epsilon(1e-14));
    CHECK(code_of([] { solve_unknown_growth(swap_spec(1.0, 2, 0.5)); }) == ErrorCode::NoPositiveRoot);
    CHECK(code_of([] { solve_unknown_growth(swap_spec(0.0, 2, 2.5)); }) == ErrorCode::NoPositiveRoot);
}

TEST_CASE("solve_unknown_growth argument errors") {
    auto none = with_growths(0.5, {1.0, 1.0}, 1.0);
    CHECK(code_of([&] { solve_unknown_growth(none); }) == ErrorCode::NoUnknown);
    auto two = swap_spec(0.5, 3, 2.0);
    two.growths.pool.reset();
    CHECK(code_of([&] { solve_unknown_growth(two); }) == ErrorCode::MultipleUnknowns);
    auto zero = swap_spec(0.5, 3, 0.0);
    CHECK(code_of([&] { solve_unknown_growth(zero); }) == ErrorCode::NonPositiveGrowth);
    auto bad_k = swap_spec(1.2, 2, 2.0);
    CHECK(code_of([&] { solve_unknown_growth(bad_k); }) == ErrorCode::KOutOfRange);
    auto mismatch = swap_spec(0.5, 2, 2.0);
    mismatch.omega_new = equal(3);
    CHECK(code_of([&] { solve_unknown_growth(mismatch); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("identity point lies on every curve") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        std::vector<double> wp(n), wn(n);
        double sp = 0, sn = 0;
        for (std::size_t i = 0; i < n; ++i) {
            wp[i] = 0.01 + unit(rng);
            wn[i] = 0.01 + unit(rng);
            sp += wp[i];
            sn += wn[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            wp[i] /= sp;
            wn[i] /= sn;
        }
        const double k = trial % 4 == 0 ? std::round(unit(rng)) : unit(rng);
        CurveResidualSpec spec{k, {wp}, {wn}, GrowthVector::ones(n)};
        spec.growths.pool.reset();
        CHECK(eval_g0(spec) == 1.0);
        spec.growths.pool = 1.0;
        spec.growths.assets[rng() % n].reset();
        CHECK(solve_unknown_growth(spec) == 1.0);
    }
}

TEST_CASE("k = 1/2 two-asset swaps are constant product") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> lg(std::log(0.05), std::log(20.0));
    for (int trial = 0; trial < 1000; ++trial) {
        const double g1 = std::exp(lg(rng));
        const double g2 = solve_unknown_growth(swap_spec(0.5, 2, g1));
        CHECK(std::abs(g1 * g2 - 1.0) <= 1e-12);
    }
}

TEST_CASE("two-asset swaps do not depend on pool size") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double k = unit(rng);
        const double g1 = 0.55 + 10.0 * unit(rng);
        const double base = solve_unknown_growth(swap_spec(k, 2, g1));
        for (std::size_t n : {3u, 5u, 10u}) {
            CHECK(std::abs(solve_unknown_growth(swap_spec(k, n, g1)) - base) <= 1e-12 * base);
        }
    }
}

TEST_CASE("pool-token growth lies between harmonic and arithmetic means") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        std::vector<double> g(n);
        double sum = 0, inv = 0;
        for (auto& x : g) {
            x = 0.05 + 20.0 * unit(rng);
            sum += x;
            inv += 1.0 / x;
        }
        const double am = sum / static_cast<double>(n);
        const double hm = static_cast<double>(n) / inv;
        const double k = trial % 10 == 0 ? 0.0 : trial % 10 == 1 ? 1.0 : unit(rng);
        const double g0 = eval_g0(with_growths(k, g, std::nullopt));
        CHECK(g0 >= hm * (1 - 1e-12));
        CHECK(g0 <= am * (1 + 1e-12));
        if (k == 0.0) CHECK(g0 == doctest::Approx(am).epsilon(1e-12));
        if (k == 1.0) CHECK(g0 == doctest::Approx(hm).epsilon(1e-12));
    }
}

TEST_CASE("solved swap growth is non-decreasing in k") {
    for (double g1 = 0.51; g1 < 1.0; g1 += 0.01) {
        double last = 0.0;
        for (double k = 0.0; k <= 1.0; k += 0.01) {
            const double g2 = solve_unknown_growth(swap_spec(std::min(k, 1.0), 2, g1));
            CHECK(g2 >= last * (1 - 1e-14));
            last = g2;
        }
    }
}

TEST_CASE("closed form agrees with bisection on random weighted instances") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + rng() % 8;
        std::vector<double> w(n);
        double total = 0;
        for (auto& x : w) total += (x = 0.02 + unit(rng));
        for (auto& x : w) x /= total;
        CurveResidualSpec spec{0.001 + 0.998 * unit(rng), {w}, {w}, GrowthVector::ones(n)};
        for (auto& g : spec.growths.assets) g = 0.05 + 19.95 * unit(rng);
        spec.growths.pool = 0.05 + 19.95 * unit(rng);
        const std::size_t slot = rng() % (n + 1);
        if (slot == n) spec.growths.pool.reset(); else spec.growths.assets[slot].reset();
        const double closed = solve_unknown_growth(spec);
        const double reference = oracle::solve_by_bisection(spec);
        CHECK(std::abs(closed - reference) <= 1e-10 * reference);
    }
}
