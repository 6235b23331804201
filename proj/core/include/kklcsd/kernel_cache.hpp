#pragma once

#include <filesystem>
#include <optional>

#include "kklcsd/kernel.hpp"

namespace kklcsd {

// Binary kernel cache, native little-endian:
//
//   bytes 0..7    magic "KKLKERN1"
//   u64           key = kernel_cache_key(grid, growth, lambdas)
//   u64 x 3       p, n_t, n_x
//   f64 x p       lambdas
//   f64 x p*n_t*n_x  kernel values, lambda-major then time then size
//
// A file whose key or dimensions disagree with the request is ignored and
// recomputed.

void save_kernel_cache(const KernelBank& bank, const std::filesystem::path& path);

/// Returns the cached bank when the file exists and matches the key.
std::optional<KernelBank> load_kernel_cache(const std::filesystem::path& path, const Grid& grid,
                                            const Signal& growth_on_grid, const LambdaBank& lambdas);

/// Loads from `path` when valid, otherwise computes and writes the cache.
KernelBank cached_kernel_bank(const std::filesystem::path& path, const LambdaBank& lambdas,
                              const Signal& growth_on_grid, const Grid& grid);

}  // namespace kklcsd
