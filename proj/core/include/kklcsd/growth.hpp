#pragma once

#include <vector>

#include "kklcsd/signal.hpp"

namespace kklcsd {

/// Growth rate from supersaturation, G = k_g (C_c - C*) / C*.
/// Throws DomainError when C* <= 0.
double growth_rate(double c_c, double c_star, double k_g);

/// Cumulative growth t -> int_{t0}^t G(s) ds for a growth rate that is
/// piecewise linear between its samples.
///
/// The table at the sample times is the trapezoid rule; between samples the
/// integral of the linear interpolant is evaluated exactly (a quadratic), so
/// value() and inverse() are consistent with each other to rounding.
class CumulativeGrowth {
public:
    explicit CumulativeGrowth(Signal growth);

    const Signal& growth() const noexcept { return growth_; }
    const std::vector<double>& table() const noexcept { return table_; }
    double t0() const noexcept { return growth_.front(); }
    double t1() const noexcept { return growth_.back(); }
    double total() const noexcept { return table_.back(); }

    /// Cumulative growth at time t in [t0, t1]; DomainError otherwise.
    double value(double t) const;

    /// Time s with value(s) = v, for v in [0, total()]. Requires a strictly
    /// increasing table (G > 0 on every sample); InvalidScenarioError
    /// otherwise.
    double inverse(double v) const;

    bool strictly_increasing() const noexcept { return increasing_; }

private:
    Signal growth_;
    std::vector<double> table_;
    bool increasing_ = true;
};

/// Cumulative growth of `growth` at time t (trapezoidal table, exact between
/// samples for the piecewise linear interpolant).
double cumulative_growth(const Signal& growth, double t);

/// Positive root sigma of a*sigma^2 + b*sigma = r (r >= 0, b >= 0), evaluated
/// without cancellation.
double positive_quadratic_root(double a, double b, double r);

}  // namespace kklcsd
