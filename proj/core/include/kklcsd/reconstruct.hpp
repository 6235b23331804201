#pragma once

#include <span>
#include <vector>

#include "kklcsd/grid.hpp"
#include "kklcsd/kernel.hpp"
#include "kklcsd/observer.hpp"
#include "kklcsd/tikhonov.hpp"

namespace kklcsd {

/// Continuation initial guess: `prev` moved right by G_k * dt with linear
/// interpolation. Cells uncovered at the inflow edge take prev[0].
std::vector<double> warm_start_shift(std::span<const double> prev, double growth, double dt, const Grid& grid);

/// Reconstructed number density plus per-step solver diagnostics.
struct EstimateField {
    Grid grid;
    RowMatrix values;
    std::vector<double> residuals;   ///< ||A psi_hat - z|| per step
    std::vector<double> norms;       ///< ||psi_hat|| per step
    std::vector<int> iterations;
    std::vector<double> wall_ms;     ///< solve time per step, not deterministic
    std::vector<bool> identifiable;  ///< false where A vanishes (k = 0)

    explicit EstimateField(const Grid& g);

    std::vector<double> row(std::size_t k) const;
};

struct ReconstructOptions {
    /// Penalize dx * ||psi||^2 instead of ||psi||^2 (grid-independent scaling).
    bool dx_weighted = false;
    /// Optional per-step upper bound on the support: columns with
    /// x_j > support_limit[k] are fixed to zero. Empty means the full grid.
    std::vector<double> support_limit;
};

/// Solves the regularized inversion at every time index with the previous
/// estimate, transported by the growth rate, as the initial guess.
/// ShapeError when the kernel and observer banks disagree on lambdas or times.
EstimateField reconstruct(const KernelBank& kernels, const ObserverBank& observers, const TikhonovConfig& config,
                          const ReconstructOptions& options = {});

/// x_j <= xbar + cumulative growth at t_k: the zero-tail bound on the
/// support of psi(t_k, .).
std::vector<double> zero_tail_support(const Grid& grid, const Signal& growth_on_grid, double xbar);

}  // namespace kklcsd
