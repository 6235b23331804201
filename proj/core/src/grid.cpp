#include "kklcsd/grid.hpp"

#include <cmath>
#include <sstream>

#include "kklcsd/errors.hpp"

namespace kklcsd {

Grid::Grid(double x_min, double x_max, std::size_t n_x, double t0, double t1, std::size_t n_t)
    : x_min_(x_min), x_max_(x_max), n_x_(n_x), t0_(t0), t1_(t1), n_t_(n_t) {
    std::ostringstream msg;
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min) || x_min < 0.0) {
        msg << "grid: require x_max > x_min >= 0 (got x_min=" << x_min << ", x_max=" << x_max << ")";
        throw DomainError(msg.str());
    }
    if (!std::isfinite(t0) || !std::isfinite(t1) || !(t1 > t0) || t0 < 0.0) {
        msg << "grid: require t1 > t0 >= 0 (got t0=" << t0 << ", t1=" << t1 << ")";
        throw DomainError(msg.str());
    }
    if (n_x < 2 || n_t < 2) {
        msg << "grid: require n_x >= 2 and n_t >= 2 (got n_x=" << n_x << ", n_t=" << n_t << ")";
        throw DomainError(msg.str());
    }
    dx_ = (x_max - x_min) / static_cast<double>(n_x - 1);
    dt_ = (t1 - t0) / static_cast<double>(n_t - 1);
}

double Grid::x(std::size_t j) const noexcept {
    if (j + 1 == n_x_) return x_max_;
    return x_min_ + static_cast<double>(j) * dx_;
}

double Grid::t(std::size_t k) const noexcept {
    if (k + 1 == n_t_) return t1_;
    return t0_ + static_cast<double>(k) * dt_;
}

std::vector<double> Grid::xs() const {
    std::vector<double> out(n_x_);
    for (std::size_t j = 0; j < n_x_; ++j) out[j] = x(j);
    return out;
}

std::vector<double> Grid::ts() const {
    std::vector<double> out(n_t_);
    for (std::size_t k = 0; k < n_t_; ++k) out[k] = t(k);
    return out;
}

std::uint64_t Grid::digest() const noexcept {
    Fnv1a h;
    h.add(x_min_);
    h.add(x_max_);
    h.add(static_cast<std::uint64_t>(n_x_));
    h.add(t0_);
    h.add(t1_);
    h.add(static_cast<std::uint64_t>(n_t_));
    return h.value();
}

bool Grid::operator==(const Grid& other) const noexcept {
    return x_min_ == other.x_min_ && x_max_ == other.x_max_ && n_x_ == other.n_x_ &&
           t0_ == other.t0_ && t1_ == other.t1_ && n_t_ == other.n_t_;
}

void Fnv1a::add(const void* data, std::size_t size) noexcept {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        state_ ^= bytes[i];
        state_ *= 1099511628211ULL;
    }
}

}  // namespace kklcsd
