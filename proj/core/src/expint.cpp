#include "kklcsd/expint.hpp"

#include <cmath>

#include "kklcsd/errors.hpp"

namespace kklcsd {

namespace {

constexpr std::size_t kPhiCount = kMaxExpPolyDegree + 2;

double inverse_factorial(std::size_t n) {
    double f = 1.0;
    for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return 1.0 / f;
}

}  // namespace

std::array<double, kMaxExpPolyDegree + 2> phi_functions(double z) {
    std::array<double, kPhiCount> phi{};
    if (std::abs(z) <= 2.0) {
        for (std::size_t k = 0; k < kPhiCount; ++k) {
            // term_j = z^j / (j + k)!
            double term = inverse_factorial(k);
            double sum = term;
            for (std::size_t j = 1; j < 60; ++j) {
                term *= z / static_cast<double>(j + k);
                sum += term;
                if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
            }
            phi[k] = sum;
        }
        return phi;
    }
    phi[0] = std::exp(z);
    phi[1] = std::expm1(z) / z;
    for (std::size_t k = 1; k + 1 < kPhiCount; ++k) {
        phi[k + 1] = (phi[k] - inverse_factorial(k)) / z;
    }
    return phi;
}

std::array<double, kMaxExpPolyDegree + 1> exp_poly_moments(double lambda, double h) {
    const auto phi = phi_functions(lambda * h);
    std::array<double, kMaxExpPolyDegree + 1> m{};
    double hp = h;          // h^{n+1}
    double factorial = 1.0; // n!
    for (std::size_t n = 0; n <= kMaxExpPolyDegree; ++n) {
        if (n > 0) factorial *= static_cast<double>(n);
        m[n] = hp * factorial * phi[n + 1];
        hp *= h;
    }
    return m;
}

double integrate_exp_poly(double lambda, double h, std::span<const double> coeffs) {
    if (coeffs.size() > kMaxExpPolyDegree + 1) {
        throw DomainError("integrate_exp_poly: polynomial degree too large");
    }
    if (h == 0.0) return 0.0;
    const auto m = exp_poly_moments(lambda, h);
    double sum = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) sum += coeffs[n] * m[n];
    return sum;
}

}  // namespace kklcsd
