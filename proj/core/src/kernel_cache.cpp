#include "kklcsd/kernel_cache.hpp"

#include <array>
#include <cstring>
#include <fstream>

#include "kklcsd/errors.hpp"

namespace kklcsd {

namespace {

constexpr std::array<char, 8> kMagic{'K', 'K', 'L', 'K', 'E', 'R', 'N', '1'};

template <typename T>
void put(std::ostream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <typename T>
bool get(std::istream& in, T& value) {
    in.read(reinterpret_cast<char*>(&value), sizeof value);
    return static_cast<bool>(in);
}

}  // namespace

void save_kernel_cache(const KernelBank& bank, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("kernel cache: cannot open " + path.string() + " for writing");
    out.write(kMagic.data(), kMagic.size());
    put(out, bank.key());
    put(out, static_cast<std::uint64_t>(bank.size()));
    put(out, static_cast<std::uint64_t>(bank.grid.n_t()));
    put(out, static_cast<std::uint64_t>(bank.grid.n_x()));
    for (double l : bank.lambdas) put(out, l);
    for (const auto& k : bank.kernels) {
        out.write(reinterpret_cast<const char*>(k.data()), static_cast<std::streamsize>(k.size() * sizeof(double)));
    }
    if (!out) throw Error("kernel cache: write failed for " + path.string());
}

std::optional<KernelBank> load_kernel_cache(const std::filesystem::path& path, const Grid& grid,
                                            const Signal& growth_on_grid, const LambdaBank& lambdas) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) return std::nullopt;
    std::uint64_t key = 0, p = 0, n_t = 0, n_x = 0;
    if (!get(in, key) || !get(in, p) || !get(in, n_t) || !get(in, n_x)) return std::nullopt;
    if (key != kernel_cache_key(grid, growth_on_grid, lambdas) || p != lambdas.size() || n_t != grid.n_t() ||
        n_x != grid.n_x()) {
        return std::nullopt;
    }
    for (std::size_t i = 0; i < p; ++i) {
        double l = 0.0;
        if (!get(in, l) || l != lambdas[i]) return std::nullopt;
    }
    KernelBank bank{grid, lambdas, growth_on_grid, {}};
    bank.kernels.reserve(p);
    for (std::size_t i = 0; i < p; ++i) {
        RowMatrix k(static_cast<Eigen::Index>(n_t), static_cast<Eigen::Index>(n_x));
        in.read(reinterpret_cast<char*>(k.data()), static_cast<std::streamsize>(k.size() * sizeof(double)));
        if (!in) return std::nullopt;
        bank.kernels.push_back(std::move(k));
    }
    return bank;
}

KernelBank cached_kernel_bank(const std::filesystem::path& path, const LambdaBank& lambdas,
                              const Signal& growth_on_grid, const Grid& grid) {
    if (auto cached = load_kernel_cache(path, grid, growth_on_grid, lambdas)) return std::move(*cached);
    KernelBank bank = compute_kernel_bank(lambdas, growth_on_grid, grid);
    save_kernel_cache(bank, path);
    return bank;
}

}  // namespace kklcsd
