// Independent reference computations for the tests. Nothing in here calls
// the library's numerical routines; shared code paths would hide bugs.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Fn = std::function<double(double)>;

/// Composite Simpson rule with n (even) panels.
inline double simpson(const Fn& f, double a, double b, int n = 2000) {
    if (b <= a) return 0.0;
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// Bisection root of a continuous increasing f on [a, b].
inline double bisect(const Fn& f, double a, double b) {
    for (int i = 0; i < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++i) {
        const double m = 0.5 * (a + b);
        (f(m) < 0.0 ? a : b) = m;
    }
    return 0.5 * (a + b);
}

/// Explicit first-order upwind scheme for psi_t + G(t) psi_x = 0 on a
/// uniform grid. Returns rows of psi at every time node.
inline std::vector<std::vector<double>> upwind_transport(double x_min, double x_max, std::size_t n_x, double t0,
                                                          double t1, std::size_t n_t, const Fn& psi0, const Fn& u,
                                                          const Fn& growth) {
    const double dx = (x_max - x_min) / static_cast<double>(n_x - 1);
    const double dt = (t1 - t0) / static_cast<double>(n_t - 1);
    std::vector<std::vector<double>> rows(n_t, std::vector<double>(n_x));
    for (std::size_t j = 0; j < n_x; ++j) rows[0][j] = psi0(x_min + static_cast<double>(j) * dx);
    for (std::size_t k = 0; k + 1 < n_t; ++k) {
        const double t = t0 + static_cast<double>(k) * dt;
        const double c = growth(t + 0.5 * dt) * dt / dx;
        rows[k + 1][0] = u(t + dt);
        for (std::size_t j = 1; j < n_x; ++j) rows[k + 1][j] = rows[k][j] - c * (rows[k][j] - rows[k][j - 1]);
    }
    return rows;
}

/// Kernel value a(t, x) by quadrature along the characteristic through
/// (t, x): a = int e^{lambda (t - s)} xi(s)^3 ds with
/// xi(s) = x - (cum(t) - cum(s)), from the entry time (x_min or t0) to t.
inline double kernel_value(double lambda, const Fn& cum, double x_min, double t0, double t, double x, int panels = 4000) {
    const double ct = cum(t);
    const auto xi = [&](double s) { return x - (ct - cum(s)); };
    double start = t0;
    if (xi(t0) < x_min) start = bisect([&](double s) { return xi(s) - x_min; }, t0, t);
    // Older contributions are below e^-60 of the newest ones.
    start = std::max(start, t + 60.0 / lambda);
    return simpson([&](double s) { const double v = xi(s); return std::exp(lambda * (t - s)) * v * v * v; }, start, t, panels);
}

/// Classical RK4 for z' = lambda z + y(t), with `sub` steps per interval.
inline std::vector<double> observer_rk4(double lambda, const Fn& y, double z0, const std::vector<double>& times, int sub = 200) {
    std::vector<double> z(times.size());
    z[0] = z0;
    double state = z0;
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double h = (times[k + 1] - times[k]) / sub;
        double t = times[k];
        for (int s = 0; s < sub; ++s) {
            const auto f = [&](double tt, double zz) { return lambda * zz + y(tt); };
            const double k1 = f(t, state);
            const double k2 = f(t + 0.5 * h, state + 0.5 * h * k1);
            const double k3 = f(t + 0.5 * h, state + 0.5 * h * k2);
            const double k4 = f(t + h, state + h * k3);
            state += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += h;
        }
        z[k + 1] = state;
    }
    return z;
}

/// Gradient descent on ||A x - z||^2 + delta ||x||^2 with the safe step
/// 1 / L, run until the gradient is tiny. Optional projection onto x >= 0.
inline Eigen::VectorXd tikhonov_descent(const Eigen::MatrixXd& a, const Eigen::VectorXd& z, double delta,
                                        bool nonnegative = false, int max_iter = 2000000) {
    const Eigen::MatrixXd h = a.transpose() * a + delta * Eigen::MatrixXd::Identity(a.cols(), a.cols());
    const Eigen::VectorXd b = a.transpose() * z;
    const double lip = 2.0 * Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h).eigenvalues().maxCoeff();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(a.cols());
    for (int i = 0; i < max_iter; ++i) {
        const Eigen::VectorXd g = 2.0 * (h * x - b);
        Eigen::VectorXd next = x - g / lip;
        if (nonnegative) next = next.cwiseMax(0.0);
        const double moved = (next - x).norm();
        x = next;
        if (moved < 1e-15 * (1.0 + x.norm())) break;
    }
    return x;
}

inline Eigen::MatrixXd random_matrix(int rows, int cols, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> d(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) m(r, c) = d(gen);
    }
    return m;
}

}  // namespace oracle
