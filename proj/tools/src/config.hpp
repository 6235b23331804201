#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "kklcsd/analysis.hpp"
#include "kklcsd/lambda_bank.hpp"
#include "kklcsd/observer.hpp"
#include "kklcsd/scenario.hpp"
#include "kklcsd/tikhonov.hpp"

namespace kklcsd::cli {

struct LambdaBankSpec {
    double min = -100.0;
    double max = -1.0;
    std::size_t count = 200;
    LambdaSpacing spacing = LambdaSpacing::Uniform;

    LambdaBank build() const { return LambdaBank::spaced(min, max, count, spacing); }
};

struct ObserverSpec {
    ObserverOptions options;
    /// Initial observer state, one value broadcast to the whole bank.
    double z0 = 0.0;
};

struct NoiseSpec {
    double alpha = 0.0;
    std::uint64_t seed = 1;
    NoiseKind kind = NoiseKind::Gaussian;
};

enum class SupportPrior {
    Full,      ///< solve on every size node
    ZeroTail,  ///< only x <= xbar + int G, where the model says psi can be nonzero
};

struct InversionSpec {
    TikhonovConfig tikhonov;
    bool dx_weighted = false;
    SupportPrior support = SupportPrior::ZeroTail;
    std::vector<double> delta_sweep;  ///< empty: single run at tikhonov.delta
};

struct ChecksSpec {
    std::vector<std::string> enabled{"observer_identity", "final_peak"};
    double observer_identity_tol = 0.02;
    double peak_cells = 5.0;
    double rel_l2_tol = 0.5;
    double cubic_tol = 1e-6;
};

struct RunConfig {
    Scenario scenario;
    LambdaBankSpec lambda_bank;
    ObserverSpec observer;
    NoiseSpec noise;
    InversionSpec inversion;
    ChecksSpec checks;
    std::filesystem::path out_dir = "out";
};

/// Names of the checks the analyze stage knows about.
const std::vector<std::string>& known_checks();

/// Parses JSON text. An empty object gives the default experiment. Throws
/// ConfigError naming the offending field.
RunConfig parse_config(const std::string& text);

/// Reads and parses a config file.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace kklcsd::cli
