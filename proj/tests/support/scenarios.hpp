#pragma once

#include <cmath>
#include <functional>

#include "kklcsd/scenario.hpp"

namespace fixture {

using Fn = std::function<double(double)>;

/// Scenario from plain functions. psi0 and u are sampled 16 times finer than
/// the grid (as the config loader does), the growth rate on the grid nodes.
inline kklcsd::Scenario make(const kklcsd::Grid& grid, const Fn& psi0, const Fn& u, const Fn& growth, double xbar) {
    const auto xs = grid.xs();
    const auto ts = grid.ts();
    return kklcsd::Scenario{grid,
                            kklcsd::Signal::sample(kklcsd::refine_coords(xs, 16), psi0),
                            kklcsd::Signal::sample(kklcsd::refine_coords(ts, 16), u),
                            kklcsd::DirectGrowth{kklcsd::Signal::sample(ts, growth)},
                            kklcsd::SensorModel{},
                            xbar};
}

inline double zero(double) { return 0.0; }
inline double one(double) { return 1.0; }

/// Nucleation profile of the default configuration.
inline double reference_u(double t) { return kklcsd::truncated_gaussian(t, 3.0, 1.0, 1.0, 0.0, 6.0, kklcsd::Taper::Smooth); }
inline double reference_growth(double t) { return 0.92 + 0.08 * std::exp(-t / 3.0); }
/// Exact integral of reference_growth from 0.
inline double reference_cumulative(double t) { return 0.92 * t + 0.24 * (1.0 - std::exp(-t / 3.0)); }

inline kklcsd::Scenario reference(std::size_t n = 100) {
    return make(kklcsd::Grid(0.0, 10.0, n, 0.0, 10.0, n), zero, reference_u, reference_growth, 0.0);
}

}  // namespace fixture
