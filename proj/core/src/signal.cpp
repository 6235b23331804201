#include "kklcsd/signal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kklcsd/errors.hpp"
#include "kklcsd/grid.hpp"

namespace kklcsd {

Signal::Signal(std::vector<double> coords, std::vector<double> values)
    : coords_(std::move(coords)), values_(std::move(values)) {
    if (coords_.size() != values_.size()) {
        throw ShapeError("signal: coordinate and value arrays differ in length");
    }
    if (coords_.empty()) throw DomainError("signal: at least one sample is required");
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (!std::isfinite(coords_[i]) || !std::isfinite(values_[i])) {
            std::ostringstream msg;
            msg << "signal: non-finite sample at index " << i;
            throw DomainError(msg.str());
        }
        if (i > 0 && !(coords_[i] > coords_[i - 1])) {
            std::ostringstream msg;
            msg << "signal: coordinates must be strictly increasing (index " << i << ")";
            throw DomainError(msg.str());
        }
    }
}

Signal Signal::sample(std::span<const double> coords, const std::function<double(double)>& f) {
    std::vector<double> c(coords.begin(), coords.end());
    std::vector<double> v(c.size());
    std::transform(c.begin(), c.end(), v.begin(), f);
    return Signal(std::move(c), std::move(v));
}

std::vector<double> refine_coords(std::span<const double> coords, std::size_t factor) {
    if (factor == 0) throw DomainError("refine_coords: factor must be >= 1");
    std::vector<double> out;
    if (coords.empty()) return out;
    out.reserve((coords.size() - 1) * factor + 1);
    for (std::size_t i = 0; i + 1 < coords.size(); ++i) {
        const double a = coords[i];
        const double h = coords[i + 1] - a;
        for (std::size_t s = 0; s < factor; ++s) out.push_back(a + h * static_cast<double>(s) / static_cast<double>(factor));
    }
    out.push_back(coords.back());
    return out;
}

Signal Signal::constant(std::span<const double> coords, double value) {
    return Signal(std::vector<double>(coords.begin(), coords.end()),
                  std::vector<double>(coords.size(), value));
}

double Signal::operator()(double c) const {
    const double lo = coords_.front();
    const double hi = coords_.back();
    const double slack = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
    if (c < lo) {
        if (c < lo - slack) {
            std::ostringstream msg;
            msg << "signal: coordinate " << c << " below sampled range [" << lo << ", " << hi << "]";
            throw DomainError(msg.str());
        }
        return values_.front();
    }
    if (c > hi) {
        if (c > hi + slack) {
            std::ostringstream msg;
            msg << "signal: coordinate " << c << " above sampled range [" << lo << ", " << hi << "]";
            throw DomainError(msg.str());
        }
        return values_.back();
    }
    auto it = std::upper_bound(coords_.begin(), coords_.end(), c);
    if (it == coords_.end()) return values_.back();
    const std::size_t i = static_cast<std::size_t>(it - coords_.begin()) - 1;
    if (c == coords_[i]) return values_[i];
    const double w = (c - coords_[i]) / (coords_[i + 1] - coords_[i]);
    return values_[i] + w * (values_[i + 1] - values_[i]);
}

Signal Signal::resample(std::span<const double> coords) const {
    return sample(coords, [this](double c) { return (*this)(c); });
}

double Signal::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

double Signal::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

std::uint64_t Signal::digest() const noexcept {
    Fnv1a h;
    h.add(static_cast<std::uint64_t>(coords_.size()));
    h.add(coords_.data(), coords_.size() * sizeof(double));
    h.add(values_.data(), values_.size() * sizeof(double));
    return h.value();
}

}  // namespace kklcsd
