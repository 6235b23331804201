#pragma once

#include <vector>

#include "kklcsd/grid.hpp"
#include "kklcsd/lambda_bank.hpp"
#include "kklcsd/signal.hpp"

namespace kklcsd {

/// One exact step of z' = lambda z + y with y held constant over the step:
/// z+ = e^{lambda dt} z + y (e^{lambda dt} - 1) / lambda.
double observer_update(double z, double lambda, double y, double dt);

/// Explicit Euler step z + dt (lambda z + y). Stable only for |lambda| dt < 2.
double euler_update(double z, double lambda, double y, double dt);

/// How the sampled output is reconstructed between samples when stepping
/// the observers.
enum class HoldOrder {
    Zero,   ///< y held at y_k over [t_k, t_k+1) (observer_update)
    Linear, ///< linear through y_k, y_k+1
    Cubic,  ///< cubic through y_k-2 .. y_k+1 (lower order on the first steps)
};

struct ObserverOptions {
    HoldOrder hold = HoldOrder::Cubic;
    bool explicit_euler = false;  ///< overrides `hold`
};

/// Observer trajectories: row i holds z_{lambda_i}(t_k) for every sample
/// time of the output signal.
struct ObserverBank {
    LambdaBank lambdas;
    std::vector<double> times;
    std::vector<double> z0;
    RowMatrix z;

    double operator()(std::size_t i, std::size_t k) const {
        return z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
    }
};

/// Integrates the observer bank z_i' = lambda_i z_i + y from z0. Every hold
/// order integrates the exponential exactly against its interpolant of y, so
/// the scheme is stable for any lambda < 0 and step size.
ObserverBank run_observer_bank(const LambdaBank& lambdas, const Signal& y, std::vector<double> z0,
                               const ObserverOptions& options = {});

}  // namespace kklcsd
