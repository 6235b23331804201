#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kklcsd/grid.hpp"
#include "kklcsd/process_model.hpp"
#include "kklcsd/signal.hpp"

namespace kklcsd {

// ---- moment identities (unit growth) -------------------------------------

/// Successive time derivatives of the third moment, from the moment
/// identities of the unit-speed transport problem:
///
///   y'    = x_min^3 u + 3 m2
///   y''   = x_min^3 u' + 3 x_min^2 u + 6 m1
///   y'''  = x_min^3 u'' + 3 x_min^2 u' + 6 x_min u + 6 m0
///   y'''' = x_min^3 u''' + 3 x_min^2 u'' + 6 x_min u' + 6 u
///
/// m_n are rectangle-rule moments of the field, and derivatives of u are
/// centered second-order differences. All four signals live on grid times
/// t_2 .. t_{n_t-3}.
struct MomentDerivatives {
    Signal y1, y2, y3, y4;
};

/// PreconditionError unless `growth` is identically 1 (reparametrize first).
MomentDerivatives moment_derivatives(const NdfField& field, const Signal& u, const Signal& growth);

/// Back-solves the triangular system
///   y' = x^3 u,  y'' = 3x^2 u + x^3 u',  y''' = 6x u + 3x^2 u' + x^3 u''
/// at x = x_min for (u, u', u''). DomainError when x_min = 0.
std::array<double, 3> recover_boundary(double y1, double y2, double y3, double x_min);

/// The forward map of recover_boundary.
std::array<double, 3> boundary_to_output_derivatives(double u, double u1, double u2, double x_min);

/// First three derivatives of y at its first sample from one-sided
/// second-order differences. Needs at least five uniformly spaced samples.
std::array<double, 3> start_derivatives(const Signal& y);

// ---- time reparametrization ----------------------------------------------

/// Rewrites a signal of t as a signal of s = t0 + int_{t0}^t G on a uniform
/// grid of the same length. With G = 1 this is the identity. DomainError
/// unless G > 0 on every sample.
Signal time_reparametrize(const Signal& s, const Signal& growth);

/// Same for every size column of a field. The result has time range
/// [t0, t0 + int G] and unchanged size grid.
NdfField time_reparametrize(const NdfField& field, const Signal& growth);

// ---- non-observability witnesses -----------------------------------------

/// Two profiles with identical rectangle-rule moments m0..m3.
struct Witness {
    std::vector<double> first;
    std::vector<double> second;
    std::vector<double> kernel_element;  ///< (first - second) / 2
};

/// Builds baseline + c + k and baseline + c - k where
///  - c lives on a 4-cell stencil around one third of the interior and
///    corrects the baseline moments to m (a 4x4 Vandermonde solve),
///  - k = eta * (1, -4, 6, -4, 1) on a 5-cell stencil around two thirds; a
///    fourth difference annihilates every cubic, so k has zero moments.
/// `baseline` may be empty (zero). With require_nonnegative, a negative
/// entry raises ConstructionError (increase the baseline or lower eta).
Witness nonobservability_witness(const std::array<double, 4>& m, const Grid& grid, std::span<const double> baseline,
                                 double eta, bool require_nonnegative = true);

/// Rectangle-rule moments m0..m3 of a profile on the grid's size nodes.
std::array<double, 4> discrete_moments(std::span<const double> profile, const Grid& grid);

/// Relative sup-norm residual of the least-squares cubic fit of y.
/// Zero signals give 0.
double cubic_output_check(const Signal& y);

// ---- noise -----------------------------------------------------------------

enum class NoiseKind { Gaussian, Uniform };

/// y + eta with iid zero-mean samples of standard deviation alpha * max|y|.
/// Deterministic in (y, alpha, seed, kind).
Signal add_noise(const Signal& y, double alpha, std::uint64_t seed, NoiseKind kind = NoiseKind::Gaussian);

// ---- rates -----------------------------------------------------------------

struct RateFit {
    double rate = 0.0;       ///< minus the slope of log(error)
    double intercept = 0.0;  ///< log(error) at t = 0
    double r_squared = 0.0;
    std::size_t samples = 0;
};

/// Least squares of log(error) against t on [t_lo, t_hi], skipping the first
/// `skip_fraction` of the window. DomainError on nonpositive values in the
/// window or fewer than two samples.
RateFit fit_rate(const Signal& error, double t_lo, double t_hi, double skip_fraction = 0.05);

/// How the observer gap |T - z| is made relative.
enum class GapNormalization {
    Pointwise,  ///< divide by |T(t_k)|
    Maximum,    ///< divide by max_k |T(t_k)|
};

/// Relative gap per sample. Pointwise entries where T vanishes are +inf.
std::vector<double> relative_gap(std::span<const double> t_psi, std::span<const double> z, GapNormalization norm);

// ---- reports ---------------------------------------------------------------

struct CheckRow {
    std::string quantity;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// ||a - b|| / ||b||.
double relative_l2_error(std::span<const double> estimate, std::span<const double> truth);

/// Index of the largest entry (first one on ties).
std::size_t peak_index(std::span<const double> values);

}  // namespace kklcsd
