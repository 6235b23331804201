#pragma once

#include <variant>

#include "kklcsd/grid.hpp"
#include "kklcsd/signal.hpp"

namespace kklcsd {

/// Constants linking the third moment to the solid concentration.
struct SensorModel {
    double rho_s = 1.0;  ///< solid density, kg/m^3
    double k_v = 1.0;    ///< volumetric shape factor
    double m_e = 1.0;    ///< solvent mass, kg

    void validate() const;
};

/// Growth rate given directly as a time signal.
struct DirectGrowth {
    Signal rate;
};

/// Growth rate computed from solute concentration and solubility profiles.
struct ConcentrationGrowth {
    Signal c_c;
    Signal c_star;
    double k_g = 0.0;
};

using GrowthModel = std::variant<DirectGrowth, ConcentrationGrowth>;

/// Everything needed to simulate one batch: grid, seed population, nucleation
/// inflow, growth and sensor constants.
struct Scenario {
    Grid grid;
    Signal psi0;  ///< initial number density over size
    Signal u;     ///< nucleation inflow at x_min over time
    GrowthModel growth;
    SensorModel sensor;
    double xbar;  ///< psi0 vanishes on [xbar, x_max]

    /// Growth rate sampled on the grid times. Every consumer (simulation,
    /// kernels, warm start) uses this piecewise linear signal.
    Signal growth_signal() const;

    /// Checks the model hypotheses:
    ///  - u(t0) = psi0(x_min)
    ///  - G >= mu > 0 on the time grid
    ///  - psi0 = 0 on [xbar, x_max] and xbar + int G < x_max
    /// Throws InvalidScenarioError naming the violated rule.
    void validate() const;
};

/// Smallest xbar in [x_min, x_max) such that the sampled psi0 is zero from
/// xbar onward.
double support_edge(const Signal& psi0, double x_min);

enum class Taper {
    Smooth,  ///< multiply by (1 - ((t - c)/w)^2)^3 on the support: C2 at the edges
    Offset,  ///< subtract the edge value and clip at zero: C0 at the edges
};

/// Gaussian bump truncated to [support_lo, support_hi].
double truncated_gaussian(double t, double peak_time, double std_dev, double amplitude,
                          double support_lo, double support_hi, Taper taper);

/// Cosine-squared bump of the given height, zero outside [center - half_width, center + half_width].
double cosine_bump(double x, double center, double half_width, double height);

}  // namespace kklcsd
