#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace kklcsd {

/// Sampled scalar function of one coordinate (time or size) with linear
/// interpolation between samples. Coordinates are strictly increasing and all
/// values finite.
class Signal {
public:
    Signal() = default;
    Signal(std::vector<double> coords, std::vector<double> values);

    /// Samples `f` at the given coordinates.
    static Signal sample(std::span<const double> coords, const std::function<double(double)>& f);
    static Signal constant(std::span<const double> coords, double value);

    std::size_t size() const noexcept { return coords_.size(); }
    bool empty() const noexcept { return coords_.empty(); }
    const std::vector<double>& coords() const noexcept { return coords_; }
    const std::vector<double>& values() const noexcept { return values_; }
    double front() const { return coords_.front(); }
    double back() const { return coords_.back(); }

    /// Linear interpolation. Exact sample values are returned at sample
    /// coordinates. Arguments within a relative 1e-12 of the range are
    /// clamped; anything further out is a DomainError.
    double operator()(double c) const;

    /// Resamples onto new coordinates (which must lie inside the range).
    Signal resample(std::span<const double> coords) const;

    double min_value() const;
    double max_abs() const;

    std::uint64_t digest() const noexcept;

private:
    std::vector<double> coords_;
    std::vector<double> values_;
};

/// Inserts `factor - 1` equally spaced points into every interval, keeping
/// the original coordinates exactly. Used to sample analytic profiles finer
/// than the grid, so linear interpolation does not put slope kinks into the
/// transported density at every grid step.
std::vector<double> refine_coords(std::span<const double> coords, std::size_t factor);

}  // namespace kklcsd
