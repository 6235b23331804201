#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace kklcsd {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Uniform tensor grid over [x_min, x_max] x [t0, t1]. Both end points are
/// nodes, so dx = (x_max - x_min) / (n_x - 1) and likewise for dt.
class Grid {
public:
    Grid(double x_min, double x_max, std::size_t n_x, double t0, double t1, std::size_t n_t);

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    double t0() const noexcept { return t0_; }
    double t1() const noexcept { return t1_; }
    std::size_t n_x() const noexcept { return n_x_; }
    std::size_t n_t() const noexcept { return n_t_; }
    double dx() const noexcept { return dx_; }
    double dt() const noexcept { return dt_; }

    /// Node coordinates. The last node is pinned to x_max / t1 exactly.
    double x(std::size_t j) const noexcept;
    double t(std::size_t k) const noexcept;

    std::vector<double> xs() const;
    std::vector<double> ts() const;

    /// Stable 64-bit digest of the grid parameters (used as a cache key).
    std::uint64_t digest() const noexcept;

    bool operator==(const Grid& other) const noexcept;

private:
    double x_min_;
    double x_max_;
    std::size_t n_x_;
    double t0_;
    double t1_;
    std::size_t n_t_;
    double dx_;
    double dt_;
};

/// FNV-1a over raw bytes. Deterministic across runs and platforms with the
/// same endianness.
class Fnv1a {
public:
    void add(const void* data, std::size_t size) noexcept;
    void add(double value) noexcept { add(&value, sizeof value); }
    void add(std::uint64_t value) noexcept { add(&value, sizeof value); }
    std::uint64_t value() const noexcept { return state_; }

private:
    std::uint64_t state_ = 14695981039346656037ULL;
};

}  // namespace kklcsd
