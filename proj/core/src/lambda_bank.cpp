#include "kklcsd/lambda_bank.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kklcsd/errors.hpp"
#include "kklcsd/grid.hpp"

namespace kklcsd {

LambdaBank::LambdaBank(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
    if (lambdas_.empty()) throw DomainError("lambda bank: at least one eigenvalue is required");
    for (double l : lambdas_) {
        if (!std::isfinite(l) || !(l < 0.0)) {
            std::ostringstream msg;
            msg << "lambda bank: every lambda must be strictly negative (got " << l << ")";
            throw DomainError(msg.str());
        }
    }
    std::vector<double> sorted = lambdas_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DomainError("lambda bank: lambdas must be pairwise distinct");
    }
}

LambdaBank LambdaBank::spaced(double lambda_min, double lambda_max, std::size_t count, LambdaSpacing spacing) {
    if (!(lambda_min < lambda_max) || !(lambda_max < 0.0)) {
        std::ostringstream msg;
        msg << "lambda bank: require lambda_min < lambda_max < 0 (got " << lambda_min << ", " << lambda_max << ")";
        throw DomainError(msg.str());
    }
    if (count == 0) throw DomainError("lambda bank: count must be >= 1");
    if (count == 1) return LambdaBank({lambda_max});
    std::vector<double> out(count);
    const double span = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const double s = static_cast<double>(i) / span;
        if (spacing == LambdaSpacing::Uniform) {
            out[i] = lambda_min + s * (lambda_max - lambda_min);
        } else {
            const double lo = std::log(-lambda_min);
            const double hi = std::log(-lambda_max);
            out[i] = -std::exp(lo + s * (hi - lo));
        }
    }
    out.front() = lambda_min;
    out.back() = lambda_max;
    return LambdaBank(std::move(out));
}

std::uint64_t LambdaBank::digest() const noexcept {
    Fnv1a h;
    h.add(static_cast<std::uint64_t>(lambdas_.size()));
    h.add(lambdas_.data(), lambdas_.size() * sizeof(double));
    return h.value();
}

}  // namespace kklcsd
