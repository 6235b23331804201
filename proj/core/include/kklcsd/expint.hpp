#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace kklcsd {

/// Largest polynomial degree handled by the exponential moment helpers.
inline constexpr std::size_t kMaxExpPolyDegree = 7;

/// phi_k(z) = sum_{j>=0} z^j / (j + k)!  for k = 0 .. kMaxExpPolyDegree + 1.
///
/// phi_0 = e^z, phi_1 = (e^z - 1)/z, and phi_{k+1} = (phi_k - 1/k!)/z. The
/// series is used for |z| <= 2 and the recurrence above that, which keeps the
/// relative error near machine precision for every z <= 0.
std::array<double, kMaxExpPolyDegree + 2> phi_functions(double z);

/// Moments m_n = int_0^h e^{lambda (h - s)} s^n ds = h^{n+1} n! phi_{n+1}(lambda h)
/// for n = 0 .. kMaxExpPolyDegree.
std::array<double, kMaxExpPolyDegree + 1> exp_poly_moments(double lambda, double h);

/// int_0^h e^{lambda (h - s)} p(s) ds for p given by monomial coefficients
/// (lowest degree first, at most kMaxExpPolyDegree + 1 of them).
double integrate_exp_poly(double lambda, double h, std::span<const double> coeffs);

}  // namespace kklcsd
