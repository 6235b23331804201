#include "kklcsd/reconstruct.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "kklcsd/errors.hpp"
#include "kklcsd/growth.hpp"

namespace kklcsd {

EstimateField::EstimateField(const Grid& g)
    : grid(g),
      values(RowMatrix::Zero(static_cast<Eigen::Index>(g.n_t()), static_cast<Eigen::Index>(g.n_x()))),
      residuals(g.n_t(), 0.0),
      norms(g.n_t(), 0.0),
      iterations(g.n_t(), 0),
      wall_ms(g.n_t(), 0.0),
      identifiable(g.n_t(), false) {}

std::vector<double> EstimateField::row(std::size_t k) const {
    const auto r = values.row(static_cast<Eigen::Index>(k));
    return {r.data(), r.data() + r.size()};
}

std::vector<double> warm_start_shift(std::span<const double> prev, double growth, double dt, const Grid& grid) {
    if (prev.size() != grid.n_x()) throw ShapeError("warm_start_shift: prev length differs from n_x");
    const double cells = growth * dt / grid.dx();
    std::vector<double> out(prev.size());
    const auto n = static_cast<double>(prev.size());
    for (std::size_t j = 0; j < prev.size(); ++j) {
        const double src = static_cast<double>(j) - cells;
        if (src <= 0.0) {
            out[j] = prev[0];
        } else if (src >= n - 1.0) {
            out[j] = prev.back();
        } else {
            const auto lo = static_cast<std::size_t>(std::floor(src));
            const double w = src - static_cast<double>(lo);
            out[j] = w == 0.0 ? prev[lo] : (1.0 - w) * prev[lo] + w * prev[lo + 1];
        }
    }
    return out;
}

std::vector<double> zero_tail_support(const Grid& grid, const Signal& growth_on_grid, double xbar) {
    const CumulativeGrowth g(growth_on_grid);
    std::vector<double> limit(grid.n_t());
    for (std::size_t k = 0; k < grid.n_t(); ++k) limit[k] = xbar + g.table()[k];
    return limit;
}

EstimateField reconstruct(const KernelBank& kernels, const ObserverBank& observers, const TikhonovConfig& config,
                          const ReconstructOptions& options) {
    config.validate();
    const Grid& grid = kernels.grid;
    if (kernels.lambdas.values() != observers.lambdas.values()) {
        throw ShapeError("reconstruct: kernel and observer banks use different lambdas");
    }
    if (observers.times.size() != grid.n_t()) {
        std::ostringstream msg;
        msg << "reconstruct: observers have " << observers.times.size() << " samples, grid has " << grid.n_t();
        throw ShapeError(msg.str());
    }
    if (!options.support_limit.empty() && options.support_limit.size() != grid.n_t()) {
        throw ShapeError("reconstruct: support_limit length differs from n_t");
    }

    TikhonovConfig step = config;
    if (options.dx_weighted) step.delta *= grid.dx();

    const auto n_x = static_cast<Eigen::Index>(grid.n_x());
    const auto p = static_cast<Eigen::Index>(kernels.size());
    EstimateField est(grid);
    std::vector<double> prev(grid.n_x(), 0.0);

    // a(t0, .) = 0, so the first step carries no information: psi_hat = 0.
    double z0_sq = 0.0;
    for (std::size_t i = 0; i < kernels.size(); ++i) z0_sq += observers(i, 0) * observers(i, 0);
    est.residuals[0] = std::sqrt(z0_sq);

    for (std::size_t k = 1; k < grid.n_t(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        const Eigen::MatrixXd full = observation_matrix(kernels, k);

        // Active columns: everything, or the prefix inside the support bound.
        Eigen::Index cols = n_x;
        if (!options.support_limit.empty()) {
            cols = 0;
            while (cols < n_x && grid.x(static_cast<std::size_t>(cols)) <= options.support_limit[k] + 1e-12 * grid.dx()) {
                ++cols;
            }
            cols = std::max<Eigen::Index>(cols, 1);
        }

        Eigen::VectorXd z(p);
        for (Eigen::Index i = 0; i < p; ++i) z(i) = observers(static_cast<std::size_t>(i), k);

        const auto guess = warm_start_shift(prev, kernels.growth.values()[k - 1], grid.t(k) - grid.t(k - 1), grid);
        const Eigen::VectorXd init = Eigen::Map<const Eigen::VectorXd>(guess.data(), cols);

        const TikhonovResult r = tikhonov_solve(full.leftCols(cols), z, step, init);

        const auto row = static_cast<Eigen::Index>(k);
        est.values.row(row).setZero();
        est.values.row(row).head(cols) = r.x.transpose();
        est.residuals[k] = r.residual;
        est.norms[k] = r.norm;
        est.iterations[k] = r.iterations;
        est.identifiable[k] = full.cwiseAbs().maxCoeff() > 0.0;
        est.wall_ms[k] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        prev = est.row(k);
    }
    return est;
}

}  // namespace kklcsd
