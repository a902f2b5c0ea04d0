#pragma once

#include <cstddef>
#include <vector>

namespace liqcurve {

/// Asset weights omega_i at one instant. Entries are positive and sum to one.
struct WeightVector {
    std::vector<double> omega;

    std::size_t size() const noexcept { return omega.size(); }
    double operator[](std::size_t i) const { return omega[i]; }

    /// Throws InvariantViolation unless every entry is positive and the sum is
    /// within `tol` of one.
    void validate(double tol) const;

    bool operator==(const WeightVector&) const = default;
};

/// Rebalancing strategy attached to a pool.
struct WeightPolicy {
    enum class Kind { Equal, Constant };

    Kind kind = Kind::Equal;
    std::vector<double> weights;  // Constant only

    static WeightPolicy equal() { return {Kind::Equal, {}}; }
    static WeightPolicy constant(std::vector<double> w) {
        return {Kind::Constant, std::move(w)};
    }

    bool operator==(const WeightPolicy&) const = default;
};

}  // namespace liqcurve
