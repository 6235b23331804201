#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"

namespace kklcsd::cli {

enum class Stage { Simulate, Observe, Reconstruct, Analyze, Run };

/// ConfigError for anything but simulate|observe|reconstruct|analyze|run.
Stage parse_stage(const std::string& name);
std::string stage_name(Stage stage);

/// Runs one stage (or the whole chain for Stage::Run). Later stages read
/// the CSV files of earlier ones from cfg.out_dir, so each stage can be
/// re-run on its own. Returns 0, or 1 when an enabled check failed.
/// Library errors propagate with the stage name prefixed.
int run_stage(const RunConfig& cfg, Stage stage, std::ostream& log);

}  // namespace kklcsd::cli
