#include "kklcsd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "kklcsd/errors.hpp"
#include "kklcsd/growth.hpp"

namespace kklcsd {

namespace {

bool is_unit_growth(const Signal& growth) {
    return std::all_of(growth.values().begin(), growth.values().end(),
                       [](double g) { return std::abs(g - 1.0) <= 1e-12; });
}

void require_positive_growth(const Signal& growth, const char* where) {
    if (growth.empty() || growth.min_value() <= 0.0) {
        throw DomainError(std::string(where) + ": growth rate must be strictly positive");
    }
}

}  // namespace

MomentDerivatives moment_derivatives(const NdfField& field, const Signal& u, const Signal& growth) {
    if (!is_unit_growth(growth)) {
        throw PreconditionError("moment_derivatives: growth is not identically 1; apply time_reparametrize first");
    }
    const Grid& grid = field.grid;
    const std::size_t n = grid.n_t();
    if (n < 5) throw DomainError("moment_derivatives: needs at least 5 time samples");

    const double h = grid.dt();
    const double xm = grid.x_min();
    std::vector<double> us(n);
    for (std::size_t k = 0; k < n; ++k) us[k] = u(grid.t(k));

    std::vector<double> ts, d1, d2, d3, d4;
    for (std::size_t k = 2; k + 2 < n; ++k) {
        const double u0 = us[k];
        const double u1 = (us[k + 1] - us[k - 1]) / (2.0 * h);
        const double u2 = (us[k + 1] - 2.0 * us[k] + us[k - 1]) / (h * h);
        const double u3 = (us[k + 2] - 2.0 * us[k + 1] + 2.0 * us[k - 1] - us[k - 2]) / (2.0 * h * h * h);
        ts.push_back(grid.t(k));
        d1.push_back(xm * xm * xm * u0 + 3.0 * moment(field, k, 2));
        d2.push_back(xm * xm * xm * u1 + 3.0 * xm * xm * u0 + 6.0 * moment(field, k, 1));
        d3.push_back(xm * xm * xm * u2 + 3.0 * xm * xm * u1 + 6.0 * xm * u0 + 6.0 * moment(field, k, 0));
        d4.push_back(xm * xm * xm * u3 + 3.0 * xm * xm * u2 + 6.0 * xm * u1 + 6.0 * u0);
    }
    return {Signal(ts, d1), Signal(ts, d2), Signal(ts, d3), Signal(ts, std::move(d4))};
}

std::array<double, 3> recover_boundary(double y1, double y2, double y3, double x_min) {
    if (x_min == 0.0) {
        throw DomainError("recover_boundary: x_min = 0 makes the triangular system singular");
    }
    const double x = x_min;
    const double u = y1 / (x * x * x);
    const double u1 = (y2 - 3.0 * x * x * u) / (x * x * x);
    const double u2 = (y3 - 6.0 * x * u - 3.0 * x * x * u1) / (x * x * x);
    return {u, u1, u2};
}

std::array<double, 3> boundary_to_output_derivatives(double u, double u1, double u2, double x_min) {
    const double x = x_min;
    return {x * x * x * u, 3.0 * x * x * u + x * x * x * u1, 6.0 * x * u + 3.0 * x * x * u1 + x * x * x * u2};
}

std::array<double, 3> start_derivatives(const Signal& y) {
    if (y.size() < 5) throw DomainError("start_derivatives: needs at least 5 samples");
    const auto& c = y.coords();
    const auto& v = y.values();
    const double h = c[1] - c[0];
    for (std::size_t i = 1; i < 5; ++i) {
        if (std::abs((c[i] - c[i - 1]) - h) > 1e-9 * h) {
            throw DomainError("start_derivatives: samples must be uniformly spaced");
        }
    }
    return {
        (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h),
        (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / (h * h),
        (-5.0 * v[0] + 18.0 * v[1] - 24.0 * v[2] + 14.0 * v[3] - 3.0 * v[4]) / (2.0 * h * h * h),
    };
}

Signal time_reparametrize(const Signal& s, const Signal& growth) {
    require_positive_growth(growth, "time_reparametrize");
    const CumulativeGrowth cg(growth);
    const double t0 = s.front();
    const double offset = cg.value(t0);
    const double span = cg.value(s.back()) - offset;
    const std::size_t n = s.size();
    std::vector<double> tau(n), values(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double d = k + 1 == n ? span : span * static_cast<double>(k) / static_cast<double>(n - 1);
        tau[k] = t0 + d;
        values[k] = s(std::clamp(cg.inverse(offset + d), t0, s.back()));
    }
    return Signal(std::move(tau), std::move(values));
}

NdfField time_reparametrize(const NdfField& field, const Signal& growth) {
    require_positive_growth(growth, "time_reparametrize");
    const Grid& g = field.grid;
    const CumulativeGrowth cg(growth);
    const double offset = cg.value(g.t0());
    const double span = cg.value(g.t1()) - offset;
    const Grid out_grid(g.x_min(), g.x_max(), g.n_x(), g.t0(), g.t0() + span, g.n_t());
    NdfField out(out_grid);
    const std::size_t n = g.n_t();
    for (std::size_t k = 0; k < n; ++k) {
        const double d = k + 1 == n ? span : span * static_cast<double>(k) / static_cast<double>(n - 1);
        const double t = std::clamp(cg.inverse(offset + d), g.t0(), g.t1());
        const double pos = (t - g.t0()) / g.dt();
        auto lo = static_cast<std::size_t>(std::floor(pos));
        if (lo >= n - 1) lo = n - 2;
        const double w = std::clamp(pos - static_cast<double>(lo), 0.0, 1.0);
        const auto row = static_cast<Eigen::Index>(k);
        const auto a = static_cast<Eigen::Index>(lo);
        if (w == 0.0) {
            out.values.row(row) = field.values.row(a);
        } else if (w == 1.0) {
            out.values.row(row) = field.values.row(a + 1);
        } else {
            out.values.row(row) = (1.0 - w) * field.values.row(a) + w * field.values.row(a + 1);
        }
    }
    return out;
}

std::array<double, 4> discrete_moments(std::span<const double> profile, const Grid& grid) {
    if (profile.size() != grid.n_x()) throw ShapeError("discrete_moments: profile length differs from n_x");
    std::array<double, 4> m{};
    for (std::size_t j = 0; j < profile.size(); ++j) {
        const double x = grid.x(j);
        double xn = 1.0;
        for (auto& mn : m) {
            mn += profile[j] * xn;
            xn *= x;
        }
    }
    for (auto& mn : m) mn *= grid.dx();
    return m;
}

Witness nonobservability_witness(const std::array<double, 4>& m, const Grid& grid, std::span<const double> baseline,
                                 double eta, bool require_nonnegative) {
    const std::size_t n = grid.n_x();
    if (n < 10) throw PreconditionError("nonobservability_witness: needs at least 8 interior cells");
    if (!baseline.empty() && baseline.size() != n) {
        throw ShapeError("nonobservability_witness: baseline length differs from n_x");
    }
    if (!(eta != 0.0) || !std::isfinite(eta)) throw DomainError("nonobservability_witness: eta must be nonzero");

    const std::size_t interior = n - 2;
    const std::size_t last = n - 2;  // last interior index
    // Stencils start near one and two thirds of the interior; on very small
    // grids the second is pulled left and may touch the first.
    const std::size_t s1 = interior / 3 - 1;
    const std::size_t s2 = std::min(last - 4, std::max(s1 + 4, 2 * interior / 3 - 1));

    std::vector<double> base(n, 0.0);
    if (!baseline.empty()) base.assign(baseline.begin(), baseline.end());
    const auto mb = discrete_moments(base, grid);

    Eigen::Matrix4d v;
    Eigen::Vector4d rhs;
    for (int r = 0; r < 4; ++r) {
        rhs(r) = m[static_cast<std::size_t>(r)] - mb[static_cast<std::size_t>(r)];
        for (int c = 0; c < 4; ++c) v(r, c) = grid.dx() * std::pow(grid.x(s1 + static_cast<std::size_t>(c)), r);
    }
    const Eigen::Vector4d corr = v.fullPivLu().solve(rhs);

    Witness w;
    w.kernel_element.assign(n, 0.0);
    constexpr std::array<double, 5> kFourthDifference{1.0, -4.0, 6.0, -4.0, 1.0};
    for (std::size_t i = 0; i < 5; ++i) w.kernel_element[s2 + i] = eta * kFourthDifference[i];

    std::vector<double> common = base;
    for (std::size_t i = 0; i < 4; ++i) common[s1 + i] += corr(static_cast<Eigen::Index>(i));
    w.first.resize(n);
    w.second.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        w.first[j] = common[j] + w.kernel_element[j];
        w.second[j] = common[j] - w.kernel_element[j];
    }
    if (require_nonnegative) {
        const double lowest = std::min(*std::min_element(w.first.begin(), w.first.end()),
                                       *std::min_element(w.second.begin(), w.second.end()));
        if (lowest < 0.0) {
            std::ostringstream msg;
            msg << "nonobservability_witness: profiles reach " << lowest
                << " < 0; use a larger baseline on the stencils or a smaller eta";
            throw ConstructionError(msg.str());
        }
    }
    return w;
}

double cubic_output_check(const Signal& y) {
    const std::size_t n = y.size();
    if (n < 4) return 0.0;
    const double scale = y.max_abs();
    if (scale == 0.0) return 0.0;
    const double mid = 0.5 * (y.front() + y.back());
    const double half = 0.5 * (y.back() - y.front());
    Eigen::MatrixXd a(static_cast<Eigen::Index>(n), 4);
    Eigen::VectorXd b(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const double s = (y.coords()[k] - mid) / half;
        const auto r = static_cast<Eigen::Index>(k);
        a(r, 0) = 1.0;
        a(r, 1) = s;
        a(r, 2) = s * s;
        a(r, 3) = s * s * s;
        b(r) = y.values()[k];
    }
    const Eigen::Vector4d coef = a.colPivHouseholderQr().solve(b);
    return (a * coef - b).cwiseAbs().maxCoeff() / scale;
}

Signal add_noise(const Signal& y, double alpha, std::uint64_t seed, NoiseKind kind) {
    if (!std::isfinite(alpha) || alpha < 0.0) throw DomainError("add_noise: alpha must be >= 0");
    if (alpha == 0.0 || y.empty()) return y;
    const double sigma = alpha * y.max_abs();
    std::mt19937_64 gen(seed);
    std::vector<double> out = y.values();
    if (kind == NoiseKind::Gaussian) {
        std::normal_distribution<double> dist(0.0, sigma);
        for (auto& v : out) v += dist(gen);
    } else {
        const double half_width = sigma * std::sqrt(3.0);
        std::uniform_real_distribution<double> dist(-half_width, half_width);
        for (auto& v : out) v += dist(gen);
    }
    return Signal(y.coords(), std::move(out));
}

RateFit fit_rate(const Signal& error, double t_lo, double t_hi, double skip_fraction) {
    if (!(t_hi > t_lo)) throw DomainError("fit_rate: window must have t_hi > t_lo");
    if (skip_fraction < 0.0 || skip_fraction >= 1.0) throw DomainError("fit_rate: skip_fraction must be in [0, 1)");
    const double start = t_lo + skip_fraction * (t_hi - t_lo);
    std::vector<double> ts, ls;
    for (std::size_t k = 0; k < error.size(); ++k) {
        const double t = error.coords()[k];
        if (t < start || t > t_hi) continue;
        const double e = error.values()[k];
        if (!(e > 0.0)) {
            std::ostringstream msg;
            msg << "fit_rate: error " << e << " at t = " << t
                << " is not positive; end the window before the noise floor";
            throw DomainError(msg.str());
        }
        ts.push_back(t);
        ls.push_back(std::log(e));
    }
    if (ts.size() < 2) throw DomainError("fit_rate: fewer than two samples in the window");

    const auto n = static_cast<double>(ts.size());
    double mt = 0.0, ml = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        mt += ts[i];
        ml += ls[i];
    }
    mt /= n;
    ml /= n;
    double stt = 0.0, stl = 0.0, sll = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        stt += (ts[i] - mt) * (ts[i] - mt);
        stl += (ts[i] - mt) * (ls[i] - ml);
        sll += (ls[i] - ml) * (ls[i] - ml);
    }
    RateFit fit;
    const double slope = stl / stt;
    fit.rate = -slope;
    fit.intercept = ml - slope * mt;
    fit.samples = ts.size();
    if (sll == 0.0) {
        fit.r_squared = 1.0;
    } else {
        double ssr = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const double r = ls[i] - (fit.intercept + slope * ts[i]);
            ssr += r * r;
        }
        fit.r_squared = std::clamp(1.0 - ssr / sll, 0.0, 1.0);
    }
    return fit;
}

std::vector<double> relative_gap(std::span<const double> t_psi, std::span<const double> z, GapNormalization norm) {
    if (t_psi.size() != z.size()) throw ShapeError("relative_gap: lengths differ");
    double peak = 0.0;
    for (double v : t_psi) peak = std::max(peak, std::abs(v));
    std::vector<double> out(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) {
        const double den = norm == GapNormalization::Pointwise ? std::abs(t_psi[k]) : peak;
        const double gap = std::abs(t_psi[k] - z[k]);
        out[k] = den > 0.0 ? gap / den : (gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    }
    return out;
}

double relative_l2_error(std::span<const double> estimate, std::span<const double> truth) {
    if (estimate.size() != truth.size()) throw ShapeError("relative_l2_error: lengths differ");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        num += (estimate[i] - truth[i]) * (estimate[i] - truth[i]);
        den += truth[i] * truth[i];
    }
    if (den == 0.0) throw DomainError("relative_l2_error: truth is identically zero");
    return std::sqrt(num / den);
}

std::size_t peak_index(std::span<const double> values) {
    if (values.empty()) throw DomainError("peak_index: empty input");
    return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

}  // namespace kklcsd
