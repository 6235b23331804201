#pragma once

#include <Eigen/Core>

namespace kklcsd {

enum class SolveMode {
    ClosedForm,           ///< (A^T A + delta I) x = A^T z by Cholesky
    NonnegativeIterative, ///< same objective restricted to x >= 0
};

struct TikhonovConfig {
    double delta = 0.1;
    SolveMode mode = SolveMode::ClosedForm;
    int max_iter = 1000;
    /// Stop when ||projected gradient|| <= tol * max(1, ||2 A^T z||).
    double tol = 1e-9;

    void validate() const;
};

struct TikhonovResult {
    Eigen::VectorXd x;
    double residual = 0.0;  ///< ||A x - z||
    double norm = 0.0;      ///< ||x||
    int iterations = 0;     ///< 1 for closed form, active-set sweeps otherwise
};

/// Minimizes ||A x - z||^2 + delta ||x||^2.
///
/// Closed form solves the normal equations with an LLT factorization; with
/// delta = 0 a rank-deficient A raises IllPosedError.
///
/// The nonnegative mode is a primal active-set method (Lawson-Hanson on the
/// normal matrix) started from the support of max(init, 0). Each sweep adds
/// the free variable with the most negative gradient, solves the reduced
/// system, and steps back to feasibility when needed. Raises
/// ConvergenceError carrying the last iterate after max_iter sweeps.
TikhonovResult tikhonov_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& z, const TikhonovConfig& config,
                              const Eigen::VectorXd& init);

/// Objective value ||A x - z||^2 + delta ||x||^2.
double tikhonov_objective(const Eigen::MatrixXd& a, const Eigen::VectorXd& z, double delta, const Eigen::VectorXd& x);

}  // namespace kklcsd
