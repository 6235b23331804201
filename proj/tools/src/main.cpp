#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "config.hpp"
#include "kklcsd/errors.hpp"
#include "pipeline.hpp"

namespace {

std::vector<double> parse_sweep(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double d = 0.0;
        try {
            d = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() || !(d > 0.0)) {
            throw kklcsd::ConfigError("--delta-sweep: '" + item + "' is not a positive number");
        }
        out.push_back(d);
    }
    if (out.empty()) throw kklcsd::ConfigError("--delta-sweep: empty list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Crystal size distribution estimation with a bank of KKL observers"};
    std::string stage_arg;
    std::string stage_opt;
    std::string config_path;
    std::string out_dir;
    std::string sweep;
    std::uint64_t seed = 0;
    bool faithful_euler = false;

    app.add_option("STAGE", stage_arg, "simulate | observe | reconstruct | analyze | run (default run)");
    app.add_option("--stage", stage_opt, "same as the positional stage");
    app.add_option("--config", config_path, "JSON run configuration")->required();
    app.add_option("--out", out_dir, "output directory (overrides the config)");
    auto* seed_opt = app.add_option("--seed", seed, "noise seed (overrides the config)");
    app.add_option("--delta-sweep", sweep, "comma separated regularization weights, e.g. 0.05,0.1,0.2");
    app.add_flag("--faithful-euler", faithful_euler, "step the observers with explicit Euler");
    CLI11_PARSE(app, argc, argv);

    std::string stage_text = "run";
    try {
        if (!stage_arg.empty() && !stage_opt.empty() && stage_arg != stage_opt) {
            throw kklcsd::ConfigError("stage: positional '" + stage_arg + "' conflicts with --stage '" + stage_opt + "'");
        }
        if (!stage_arg.empty()) stage_text = stage_arg;
        if (!stage_opt.empty()) stage_text = stage_opt;
        const auto stage = kklcsd::cli::parse_stage(stage_text);

        auto cfg = kklcsd::cli::load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (*seed_opt) cfg.noise.seed = seed;
        if (!sweep.empty()) cfg.inversion.delta_sweep = parse_sweep(sweep);
        if (faithful_euler) cfg.observer.options.explicit_euler = true;

        return kklcsd::cli::run_stage(cfg, stage, std::cout);
    } catch (const kklcsd::ConfigError& e) {
        std::cerr << "kklcsd: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "kklcsd: " << e.what() << '\n';
        return 3;
    }
}
