#include "kklcsd/observer.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "kklcsd/errors.hpp"
#include "kklcsd/expint.hpp"

namespace kklcsd {

namespace {

// Monomial coefficients (in s = t - t_k) of the Lagrange basis polynomials on
// the nodes `offsets`. basis[i][n] is the s^n coefficient of l_i.
std::array<std::array<double, 4>, 4> lagrange_basis(const std::array<double, 4>& offsets, std::size_t count) {
    std::array<std::array<double, 4>, 4> basis{};
    for (std::size_t i = 0; i < count; ++i) {
        std::array<double, 4> poly{1.0, 0.0, 0.0, 0.0};
        double denom = 1.0;
        std::size_t degree = 0;
        for (std::size_t m = 0; m < count; ++m) {
            if (m == i) continue;
            // poly *= (s - offsets[m])
            std::array<double, 4> next{};
            for (std::size_t n = 0; n <= degree; ++n) {
                next[n + 1] += poly[n];
                next[n] -= offsets[m] * poly[n];
            }
            poly = next;
            ++degree;
            denom *= offsets[i] - offsets[m];
        }
        for (std::size_t n = 0; n < 4; ++n) basis[i][n] = poly[n] / denom;
    }
    return basis;
}

}  // namespace

double observer_update(double z, double lambda, double y, double dt) {
    const double decay = std::exp(lambda * dt);
    return decay * z + y * std::expm1(lambda * dt) / lambda;
}

double euler_update(double z, double lambda, double y, double dt) { return z + dt * (lambda * z + y); }

ObserverBank run_observer_bank(const LambdaBank& lambdas, const Signal& y, std::vector<double> z0,
                               const ObserverOptions& options) {
    const std::size_t p = lambdas.size();
    if (z0.size() != p) {
        std::ostringstream msg;
        msg << "run_observer_bank: z0 has " << z0.size() << " entries for " << p << " lambdas";
        throw ShapeError(msg.str());
    }
    const auto& ts = y.coords();
    const auto& ys = y.values();
    const std::size_t n = ts.size();

    ObserverBank bank{lambdas, ts, z0, RowMatrix(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(n))};
    for (std::size_t i = 0; i < p; ++i) bank.z(static_cast<Eigen::Index>(i), 0) = z0[i];

    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double h = ts[k + 1] - ts[k];

        // Interpolation stencil for this step, as offsets from t_k.
        std::size_t first = k;
        if (options.hold == HoldOrder::Cubic) first = k >= 2 ? k - 2 : 0;
        const std::size_t count = options.hold == HoldOrder::Zero ? 1 : k + 2 - first;
        std::array<double, 4> offsets{};
        for (std::size_t i = 0; i < count; ++i) offsets[i] = ts[first + i] - ts[k];
        const auto basis = lagrange_basis(offsets, count);

        for (std::size_t i = 0; i < p; ++i) {
            const double lambda = lambdas[i];
            const double z = bank.z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
            double next = 0.0;
            if (options.explicit_euler) {
                next = euler_update(z, lambda, ys[k], h);
            } else if (options.hold == HoldOrder::Zero) {
                next = observer_update(z, lambda, ys[k], h);
            } else {
                const auto m = exp_poly_moments(lambda, h);
                next = std::exp(lambda * h) * z;
                for (std::size_t b = 0; b < count; ++b) {
                    double weight = 0.0;
                    for (std::size_t d = 0; d < count; ++d) weight += basis[b][d] * m[d];
                    next += weight * ys[first + b];
                }
            }
            bank.z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k + 1)) = next;
        }
    }
    return bank;
}

}  // namespace kklcsd
