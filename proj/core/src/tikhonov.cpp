#include "kklcsd/tikhonov.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "kklcsd/errors.hpp"

namespace kklcsd {

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

// Solves H_PP s = b_P for the passive index set and scatters into a full vector.
Eigen::VectorXd solve_passive(const Eigen::MatrixXd& h, const Eigen::VectorXd& b, const std::vector<Eigen::Index>& passive) {
    const auto m = static_cast<Eigen::Index>(passive.size());
    Eigen::VectorXd full = Eigen::VectorXd::Zero(b.size());
    if (m == 0) return full;
    Eigen::MatrixXd hp(m, m);
    Eigen::VectorXd bp(m);
    for (Eigen::Index r = 0; r < m; ++r) {
        bp(r) = b(passive[static_cast<std::size_t>(r)]);
        for (Eigen::Index c = 0; c < m; ++c) {
            hp(r, c) = h(passive[static_cast<std::size_t>(r)], passive[static_cast<std::size_t>(c)]);
        }
    }
    const Eigen::VectorXd s = hp.llt().solve(bp);
    for (Eigen::Index r = 0; r < m; ++r) full(passive[static_cast<std::size_t>(r)]) = s(r);
    return full;
}

double projected_gradient_norm(const Eigen::VectorXd& grad, const Eigen::VectorXd& x) {
    double sq = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double g = x(j) > 0.0 ? grad(j) : std::min(grad(j), 0.0);
        sq += g * g;
    }
    return std::sqrt(sq);
}

TikhonovResult finish(const Eigen::MatrixXd& a, const Eigen::VectorXd& z, Eigen::VectorXd x, int iterations) {
    TikhonovResult r;
    r.residual = (a * x - z).norm();
    r.norm = x.norm();
    r.x = std::move(x);
    r.iterations = iterations;
    return r;
}

}  // namespace

void TikhonovConfig::validate() const {
    if (!std::isfinite(delta) || delta < 0.0) throw DomainError("tikhonov: delta must be >= 0");
    if (!(tol > 0.0)) throw DomainError("tikhonov: tol must be > 0");
    if (max_iter < 1) throw DomainError("tikhonov: max_iter must be >= 1");
}

double tikhonov_objective(const Eigen::MatrixXd& a, const Eigen::VectorXd& z, double delta, const Eigen::VectorXd& x) {
    return (a * x - z).squaredNorm() + delta * x.squaredNorm();
}

TikhonovResult tikhonov_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& z, const TikhonovConfig& config,
                              const Eigen::VectorXd& init) {
    config.validate();
    const Eigen::Index n = a.cols();
    if (a.rows() < 1 || n < 1) throw ShapeError("tikhonov: A must have at least one row and one column");
    if (z.size() != a.rows()) throw ShapeError("tikhonov: z length differs from the number of rows of A");
    if (init.size() != n) throw ShapeError("tikhonov: init length differs from the number of columns of A");

    if (config.delta == 0.0) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
        if (qr.rank() < n) {
            std::ostringstream msg;
            msg << "tikhonov: A has rank " << qr.rank() << " < " << n
                << "; the unregularized problem is ill-posed, use delta > 0";
            throw IllPosedError(msg.str());
        }
    }

    Eigen::MatrixXd h = a.transpose() * a;
    h.diagonal().array() += config.delta;
    const Eigen::VectorXd b = a.transpose() * z;

    if (config.mode == SolveMode::ClosedForm) {
        Eigen::LLT<Eigen::MatrixXd> llt(h);
        if (llt.info() != Eigen::Success) {
            throw IllPosedError("tikhonov: normal matrix is not positive definite; use delta > 0");
        }
        return finish(a, z, llt.solve(b), 1);
    }

    // Active set on 0.5 x^T H x - b^T x, x >= 0. Gradient of the full
    // objective is 2 (H x - b).
    const double scale = std::max(1.0, 2.0 * b.norm());
    Eigen::VectorXd x = init.cwiseMax(0.0);
    std::vector<bool> in_passive(static_cast<std::size_t>(n), false);
    for (Eigen::Index j = 0; j < n; ++j) in_passive[static_cast<std::size_t>(j)] = x(j) > 0.0;

    auto passive_list = [&]() {
        std::vector<Eigen::Index> p;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (in_passive[static_cast<std::size_t>(j)]) p.push_back(j);
        }
        return p;
    };

    // Moves x towards the reduced minimizer, dropping variables that hit zero,
    // until the reduced minimizer is strictly positive.
    auto settle = [&]() {
        for (Eigen::Index guard = 0; guard <= n; ++guard) {
            const auto passive = passive_list();
            const Eigen::VectorXd s = solve_passive(h, b, passive);
            double alpha = 1.0;
            bool feasible = true;
            for (Eigen::Index j : passive) {
                if (s(j) <= 0.0) {
                    feasible = false;
                    const double denom = x(j) - s(j);
                    if (denom > 0.0) alpha = std::min(alpha, x(j) / denom);
                }
            }
            if (feasible) {
                x = s;
                return;
            }
            x += alpha * (s - x);
            // The blocking variable lands on zero up to rounding.
            const double floor = 1e-14 * std::max(1.0, x.cwiseAbs().maxCoeff());
            for (Eigen::Index j : passive) {
                if (s(j) <= 0.0 && x(j) <= floor) {
                    x(j) = 0.0;
                    in_passive[static_cast<std::size_t>(j)] = false;
                }
            }
        }
    };

    settle();
    for (int iter = 1; iter <= config.max_iter; ++iter) {
        const Eigen::VectorXd grad = 2.0 * (h * x - b);
        if (projected_gradient_norm(grad, x) <= config.tol * scale) return finish(a, z, x, iter);

        Eigen::Index best = -1;
        double most_negative = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (!in_passive[static_cast<std::size_t>(j)] && grad(j) < most_negative) {
                most_negative = grad(j);
                best = j;
            }
        }
        if (best < 0) {
            // Only passive-set residual left; refine the reduced solve.
            settle();
            const Eigen::VectorXd g2 = 2.0 * (h * x - b);
            if (projected_gradient_norm(g2, x) <= config.tol * scale) return finish(a, z, x, iter);
            continue;
        }
        in_passive[static_cast<std::size_t>(best)] = true;
        settle();
    }
    std::ostringstream msg;
    msg << "tikhonov: nonnegative solve did not converge in " << config.max_iter << " iterations";
    throw ConvergenceError(msg.str(), to_std(x));
}

}  // namespace kklcsd
