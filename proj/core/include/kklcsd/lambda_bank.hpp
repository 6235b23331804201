#pragma once

#include <cstdint>
#include <vector>

namespace kklcsd {

enum class LambdaSpacing { Uniform, LogUniform };

/// Observer eigenvalues: strictly negative and pairwise distinct.
class LambdaBank {
public:
    explicit LambdaBank(std::vector<double> lambdas);

    /// `count` values spread over [lambda_min, lambda_max] (both < 0). A bank
    /// of one uses lambda_max.
    static LambdaBank spaced(double lambda_min, double lambda_max, std::size_t count,
                             LambdaSpacing spacing = LambdaSpacing::Uniform);

    std::size_t size() const noexcept { return lambdas_.size(); }
    double operator[](std::size_t i) const { return lambdas_[i]; }
    const std::vector<double>& values() const noexcept { return lambdas_; }
    auto begin() const noexcept { return lambdas_.begin(); }
    auto end() const noexcept { return lambdas_.end(); }

    std::uint64_t digest() const noexcept;

private:
    std::vector<double> lambdas_;
};

}  // namespace kklcsd
