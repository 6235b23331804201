#include "kklcsd/scenario.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kklcsd/errors.hpp"
#include "kklcsd/growth.hpp"

namespace kklcsd {

void SensorModel::validate() const {
    if (!(rho_s > 0.0) || !(k_v > 0.0) || !(m_e > 0.0)) {
        throw DomainError("sensor: rho_s, k_v and M_e must all be strictly positive");
    }
}

Signal Scenario::growth_signal() const {
    const auto ts = grid.ts();
    if (const auto* direct = std::get_if<DirectGrowth>(&growth)) {
        return direct->rate.resample(ts);
    }
    const auto& conc = std::get<ConcentrationGrowth>(growth);
    return Signal::sample(ts, [&](double t) { return growth_rate(conc.c_c(t), conc.c_star(t), conc.k_g); });
}

void Scenario::validate() const {
    sensor.validate();
    std::ostringstream msg;
    if (u.empty() || u.front() > grid.t0() || u.back() < grid.t1()) {
        throw InvalidScenarioError("u: nucleation signal must cover [t0, t1]");
    }
    if (psi0.empty() || psi0.front() > grid.x_min() || psi0.back() < grid.x_max()) {
        throw InvalidScenarioError("psi0: initial condition must cover [x_min, x_max]");
    }
    const double u0 = u(grid.t0());
    const double p0 = psi0(grid.x_min());
    const double scale = std::max({1.0, u.max_abs(), psi0.max_abs()});
    if (std::abs(u0 - p0) > 1e-12 * scale) {
        msg << "compatibility: u(t0) != psi0(x_min) (" << u0 << " vs " << p0 << ")";
        throw InvalidScenarioError(msg.str());
    }
    const Signal g = growth_signal();
    if (!(g.min_value() > 0.0)) {
        msg << "growth: G must satisfy G >= mu > 0 on [t0, t1] (min sample " << g.min_value() << ")";
        throw InvalidScenarioError(msg.str());
    }
    if (!(xbar >= grid.x_min()) || !(xbar < grid.x_max())) {
        msg << "xbar: must lie in [x_min, x_max) (got " << xbar << ")";
        throw InvalidScenarioError(msg.str());
    }
    const auto& xs = psi0.coords();
    const auto& vs = psi0.values();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] >= xbar && vs[i] != 0.0) {
            msg << "zero tail: psi0(" << xs[i] << ") = " << vs[i] << " is nonzero beyond xbar=" << xbar;
            throw InvalidScenarioError(msg.str());
        }
    }
    const double travel = CumulativeGrowth(g).total();
    if (!(xbar + travel < grid.x_max())) {
        msg << "zero tail: xbar + G(t1) = " << xbar + travel << " must be < x_max = " << grid.x_max();
        throw InvalidScenarioError(msg.str());
    }
}

double support_edge(const Signal& psi0, double x_min) {
    const auto& xs = psi0.coords();
    const auto& vs = psi0.values();
    double edge = x_min;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (vs[i] != 0.0 && i + 1 < xs.size()) edge = std::max(edge, xs[i + 1]);
        if (vs[i] != 0.0 && i + 1 == xs.size()) edge = xs[i];
    }
    return edge;
}

double truncated_gaussian(double t, double peak_time, double std_dev, double amplitude,
                          double support_lo, double support_hi, Taper taper) {
    if (t <= support_lo || t >= support_hi) return 0.0;
    const double z = (t - peak_time) / std_dev;
    const double g = std::exp(-0.5 * z * z);
    switch (taper) {
        case Taper::Smooth: {
            const double c = 0.5 * (support_lo + support_hi);
            const double w = 0.5 * (support_hi - support_lo);
            const double r = (t - c) / w;
            const double window = 1.0 - r * r;
            return amplitude * g * window * window * window;
        }
        case Taper::Offset: {
            const double zl = (support_lo - peak_time) / std_dev;
            const double zh = (support_hi - peak_time) / std_dev;
            const double edge = std::max(std::exp(-0.5 * zl * zl), std::exp(-0.5 * zh * zh));
            if (edge >= 1.0) return 0.0;
            return amplitude * std::max(g - edge, 0.0) / (1.0 - edge);
        }
    }
    return 0.0;
}

double cosine_bump(double x, double center, double half_width, double height) {
    const double r = (x - center) / half_width;
    if (std::abs(r) >= 1.0) return 0.0;
    const double c = std::cos(0.5 * std::numbers::pi * r);
    return height * c * c;
}

}  // namespace kklcsd
