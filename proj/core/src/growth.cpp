#include "kklcsd/growth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kklcsd/errors.hpp"

namespace kklcsd {

double growth_rate(double c_c, double c_star, double k_g) {
    if (!(c_star > 0.0)) {
        std::ostringstream msg;
        msg << "growth_rate: solubility C* must be positive (got " << c_star << ")";
        throw DomainError(msg.str());
    }
    return k_g * (c_c - c_star) / c_star;
}

double positive_quadratic_root(double a, double b, double r) {
    if (r <= 0.0) return 0.0;
    const double disc = b * b + 4.0 * a * r;
    const double denom = b + std::sqrt(std::max(disc, 0.0));
    if (denom <= 0.0) {
        throw InvalidScenarioError("cumulative growth is not invertible (non-positive growth rate)");
    }
    return 2.0 * r / denom;
}

CumulativeGrowth::CumulativeGrowth(Signal growth) : growth_(std::move(growth)) {
    const auto& t = growth_.coords();
    const auto& g = growth_.values();
    table_.assign(t.size(), 0.0);
    for (std::size_t i = 1; i < t.size(); ++i) {
        table_[i] = table_[i - 1] + 0.5 * (g[i - 1] + g[i]) * (t[i] - t[i - 1]);
    }
    increasing_ = growth_.min_value() > 0.0;
}

double CumulativeGrowth::value(double t) const {
    const auto& ts = growth_.coords();
    const auto& g = growth_.values();
    const double slack = 1e-12 * std::max({1.0, std::abs(ts.front()), std::abs(ts.back())});
    if (t < ts.front() - slack || t > ts.back() + slack) {
        std::ostringstream msg;
        msg << "cumulative_growth: t=" << t << " outside [" << ts.front() << ", " << ts.back() << "]";
        throw DomainError(msg.str());
    }
    t = std::clamp(t, ts.front(), ts.back());
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    if (it == ts.end()) return table_.back();
    const std::size_t i = static_cast<std::size_t>(it - ts.begin()) - 1;
    const double s = t - ts[i];
    if (s == 0.0) return table_[i];
    const double h = ts[i + 1] - ts[i];
    const double slope = (g[i + 1] - g[i]) / h;
    return table_[i] + s * (g[i] + 0.5 * slope * s);
}

double CumulativeGrowth::inverse(double v) const {
    if (!increasing_) {
        throw InvalidScenarioError(
            "cumulative growth table is not strictly increasing; the growth rate must satisfy G >= mu > 0");
    }
    const double total_growth = table_.back();
    const double slack = 1e-12 * std::max(1.0, total_growth);
    if (v < -slack || v > total_growth + slack) {
        std::ostringstream msg;
        msg << "cumulative growth inverse: value " << v << " outside [0, " << total_growth << "]";
        throw DomainError(msg.str());
    }
    v = std::clamp(v, 0.0, total_growth);
    const auto& ts = growth_.coords();
    const auto& g = growth_.values();
    auto it = std::upper_bound(table_.begin(), table_.end(), v);
    if (it == table_.end()) return ts.back();
    const std::size_t i = static_cast<std::size_t>(it - table_.begin()) - 1;
    const double r = v - table_[i];
    if (r == 0.0) return ts[i];
    const double h = ts[i + 1] - ts[i];
    const double a = 0.5 * (g[i + 1] - g[i]) / h;
    const double s = positive_quadratic_root(a, g[i], r);
    return std::min(ts[i] + s, ts[i + 1]);
}

double cumulative_growth(const Signal& growth, double t) {
    return CumulativeGrowth(growth).value(t);
}

}  // namespace kklcsd
