#include "kklcsd/kernel.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "kklcsd/errors.hpp"
#include "kklcsd/expint.hpp"
#include "kklcsd/growth.hpp"

namespace kklcsd {

namespace {

constexpr double kDecayCutoff = 1e-18;

using Moments = std::array<double, kMaxExpPolyDegree + 1>;

// Coefficients of (c0 + c1 s + c2 s^2)^3, lowest degree first.
std::array<double, 7> cube(double c0, double c1, double c2) {
    const double c0s = c0 * c0;
    const double c1s = c1 * c1;
    const double c2s = c2 * c2;
    return {c0s * c0,
            3.0 * c0s * c1,
            3.0 * c0s * c2 + 3.0 * c0 * c1s,
            c1s * c1 + 6.0 * c0 * c1 * c2,
            3.0 * c1s * c2 + 3.0 * c0 * c2s,
            3.0 * c1 * c2s,
            c2s * c2};
}

double dot(const std::array<double, 7>& q, const Moments& m) {
    double s = 0.0;
    for (std::size_t n = 0; n < q.size(); ++n) s += q[n] * m[n];
    return s;
}

Signal growth_on_grid(const Signal& growth, const Grid& grid) {
    const auto ts = grid.ts();
    if (growth.coords() == ts) return growth;
    return growth.resample(ts);
}

}  // namespace

KernelField solve_kernel(double lambda, const Signal& growth, const Grid& grid) {
    if (!std::isfinite(lambda) || !(lambda < 0.0)) {
        std::ostringstream msg;
        msg << "solve_kernel: lambda must be strictly negative (got " << lambda << ")";
        throw DomainError(msg.str());
    }
    const Signal g = growth_on_grid(growth, grid);
    if (!(g.min_value() > 0.0)) {
        throw InvalidScenarioError("solve_kernel: growth rate must satisfy G >= mu > 0");
    }
    const CumulativeGrowth cumulative(g);
    const auto& table = cumulative.table();
    const auto& gv = g.values();
    const auto ts = grid.ts();
    const std::size_t n_t = grid.n_t();
    const std::size_t n_x = grid.n_x();
    const double x_min = grid.x_min();

    std::vector<double> step(n_t - 1);
    std::vector<double> decay(n_t - 1);
    std::vector<Moments> moments(n_t - 1);
    for (std::size_t m = 0; m + 1 < n_t; ++m) {
        step[m] = ts[m + 1] - ts[m];
        decay[m] = std::exp(lambda * step[m]);
        moments[m] = exp_poly_moments(lambda, step[m]);
    }

    KernelField out{grid, lambda, RowMatrix::Zero(static_cast<Eigen::Index>(n_t), static_cast<Eigen::Index>(n_x))};
    for (std::size_t k = 1; k < n_t; ++k) {
        for (std::size_t j = 1; j < n_x; ++j) {
            const double x = grid.x(j);
            double acc = 0.0;
            double weight = 1.0;
            for (std::size_t m = k; m-- > 0;) {
                const double h = step[m];
                const double start = x - (table[k] - table[m]);
                const double c1 = gv[m];
                const double c2 = 0.5 * (gv[m + 1] - gv[m]) / h;
                if (start >= x_min) {
                    acc += weight * dot(cube(start, c1, c2), moments[m]);
                    weight *= decay[m];
                    if (weight < kDecayCutoff) break;
                    continue;
                }
                // Entered through x = x_min inside this step.
                const double entry = positive_quadratic_root(c2, c1, x_min - start);
                if (entry < h) {
                    const double rest = h - entry;
                    const double slope = c1 + 2.0 * c2 * entry;
                    acc += weight * dot(cube(x_min, slope, c2), exp_poly_moments(lambda, rest));
                }
                break;
            }
            out.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = acc;
        }
    }
    return out;
}

std::uint64_t kernel_cache_key(const Grid& grid, const Signal& growth_on_grid, const LambdaBank& lambdas) {
    Fnv1a h;
    h.add(grid.digest());
    h.add(growth_on_grid.digest());
    h.add(lambdas.digest());
    return h.value();
}

std::uint64_t KernelBank::key() const noexcept { return kernel_cache_key(grid, growth, lambdas); }

KernelBank compute_kernel_bank(const LambdaBank& lambdas, const Signal& growth, const Grid& grid, unsigned threads) {
    const Signal g = growth_on_grid(growth, grid);
    KernelBank bank{grid, lambdas, g, std::vector<RowMatrix>(lambdas.size())};
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(lambdas.size()));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&]() {
        for (std::size_t i = next++; i < lambdas.size() && !failed; i = next++) {
            try {
                bank.kernels[i] = solve_kernel(lambdas[i], g, grid).values;
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return bank;
}

double functional_T(const KernelField& kernel, const NdfField& field, std::size_t k) {
    if (!(kernel.grid == field.grid)) throw ShapeError("functional_T: kernel and field grids differ");
    if (k >= field.grid.n_t()) throw DomainError("functional_T: time index out of range");
    const auto row = static_cast<Eigen::Index>(k);
    return field.grid.dx() * kernel.values.row(row).dot(field.values.row(row));
}

Eigen::MatrixXd observation_matrix(const KernelBank& bank, std::size_t k) {
    if (k >= bank.grid.n_t()) throw DomainError("observation_matrix: time index out of range");
    const auto p = static_cast<Eigen::Index>(bank.size());
    const auto n = static_cast<Eigen::Index>(bank.grid.n_x());
    Eigen::MatrixXd a(p, n);
    const double dx = bank.grid.dx();
    for (Eigen::Index i = 0; i < p; ++i) {
        a.row(i) = dx * bank.kernels[static_cast<std::size_t>(i)].row(static_cast<Eigen::Index>(k));
    }
    return a;
}

}  // namespace kklcsd
