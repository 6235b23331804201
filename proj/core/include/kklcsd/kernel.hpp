#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "kklcsd/grid.hpp"
#include "kklcsd/lambda_bank.hpp"
#include "kklcsd/process_model.hpp"
#include "kklcsd/signal.hpp"

namespace kklcsd {

/// Kernel weights a_lambda(t_k, x_j) on a grid; row k holds time t_k.
struct KernelField {
    Grid grid;
    double lambda;
    RowMatrix values;

    double operator()(std::size_t k, std::size_t j) const {
        return values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
    }
};

/// Solves the kernel transport problem
///
///   a_t + G(t) a_x = lambda a + x^3,   a(t0, .) = 0,   a(., x_min) = 0
///
/// on the grid. The growth rate is resampled on the grid times and treated
/// as piecewise linear, the same convention the simulator uses.
///
/// Each node is traced back along its characteristic. Over one time step the
/// characteristic is a quadratic in the local time, so the source integral
/// int e^{lambda (h - s)} xi(s)^3 ds is a degree-6 polynomial against an
/// exponential and is evaluated in closed form (see expint.hpp). The trace
/// stops where the characteristic enters through x = x_min or reaches t0,
/// or once the accumulated decay factor drops below 1e-18.
///
/// Throws DomainError for lambda >= 0 and InvalidScenarioError unless G > 0.
KernelField solve_kernel(double lambda, const Signal& growth, const Grid& grid);

/// Kernels for a whole bank. Entries are independent, so the solve is split
/// across `threads` workers (0 = hardware concurrency); the result does not
/// depend on the thread count.
struct KernelBank {
    Grid grid;
    LambdaBank lambdas;
    Signal growth;  ///< growth rate on the grid times
    std::vector<RowMatrix> kernels;

    std::size_t size() const noexcept { return kernels.size(); }
    KernelField field(std::size_t i) const { return KernelField{grid, lambdas[i], kernels[i]}; }

    /// Cache key over (grid, growth, lambdas).
    std::uint64_t key() const noexcept;
};

KernelBank compute_kernel_bank(const LambdaBank& lambdas, const Signal& growth, const Grid& grid,
                               unsigned threads = 0);

std::uint64_t kernel_cache_key(const Grid& grid, const Signal& growth_on_grid, const LambdaBank& lambdas);

/// T_lambda(psi)(t_k) = dx * sum_j a(t_k, x_j) psi(t_k, x_j). ShapeError when
/// the grids differ.
double functional_T(const KernelField& kernel, const NdfField& field, std::size_t k);

/// Matrix A with A(i, j) = dx * a_i(t_k, x_j), so that A * psi(t_k, .) is the
/// vector of functionals at t_k.
Eigen::MatrixXd observation_matrix(const KernelBank& bank, std::size_t k);

}  // namespace kklcsd
