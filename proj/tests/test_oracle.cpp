#include <doctest.h>

#include "liqcurve/errors.hpp"
#include "liqcurve/oracle.hpp"

using namespace liqcurve;
using namespace liqcurve::oracle;

namespace {

const WeightVector kHalf{{0.5, 0.5}};

CurveResidualSpec two_asset(double k, double g1) {
    return {k, kHalf, kHalf, {{g1, std::nullopt}, 1.0}};
}

}  // namespace

TEST_CASE("bisection reproduces the constant-product point") {
    CHECK(bisect_growth(two_asset(0.5, 2.0), {0.01, 100.0}) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("bisection reproduces the k = 0 line") {
    CHECK(bisect_growth(two_asset(0.0, 0.5), {0.01, 100.0}) == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("bisection freezes the k = 0.3 swap constant") {
    // Root of 0.7 g^2 - 0.615 g - 0.3 = 0, checked at 40 digits.
    CHECK(solve_by_bisection(two_asset(0.3, 0.8)) ==
          doctest::Approx(1.2276659317867236).epsilon(1e-14));
}

TEST_CASE("bisection solves for the pool-token growth") {
    const WeightVector tenth{std::vector<double>(10, 0.1)};
    CurveResidualSpec spec{0.5, tenth, tenth, GrowthVector::ones(10)};
    spec.growths.assets[0] = 2.0;
    spec.growths.pool.reset();
    CHECK(solve_by_bisection(spec) == doctest::Approx(10.5 / 9.75).epsilon(1e-14));
}

TEST_CASE("auto_bracket") {
    const auto cp = auto_bracket(two_asset(0.5, 2.0));
    CHECK(cp.lo <= 0.5);
    CHECK(cp.hi >= 0.5);

    const auto identity = auto_bracket(two_asset(0.3, 1.0));
    CHECK(identity.lo <= 1.0);
    CHECK(identity.hi >= 1.0);

    try {
        auto_bracket(two_asset(1.0, 0.4));
        FAIL("expected NoSignChange");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoSignChange);
    }
}

TEST_CASE("bisection error paths") {
    CHECK_THROWS_AS(bisect_growth(two_asset(0.5, 2.0), {1.0, 100.0}), Error);
    CHECK_THROWS_AS(bisect_growth(two_asset(0.5, 2.0), {0.0, 100.0}), Error);
    try {
        bisect_growth(two_asset(0.5, 2.0), {0.01, 100.0}, 5);
        FAIL("expected MaxIterations");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MaxIterations);
    }
    CurveResidualSpec two_unknowns{0.5, kHalf, kHalf, {{std::nullopt, std::nullopt}, 1.0}};
    try {
        auto_bracket(two_unknowns);
        FAIL("expected MultipleUnknowns");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MultipleUnknowns);
    }
}
