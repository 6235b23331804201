#include "doctest.h"

#include "config.hpp"
#include "kklcsd/errors.hpp"
#include "pipeline.hpp"

using namespace kklcsd;
using namespace kklcsd::cli;

TEST_CASE("empty config gives the default experiment") {
    const RunConfig c = parse_config("{}");
    CHECK(c.scenario.grid.n_x() == 100);
    CHECK(c.scenario.grid.n_t() == 100);
    CHECK(c.scenario.grid.x_max() == 10.0);
    CHECK(c.lambda_bank.count == 200);
    CHECK(c.lambda_bank.min == -100.0);
    CHECK(c.lambda_bank.max == -1.0);
    CHECK(c.inversion.tikhonov.delta == 0.1);
    CHECK(c.inversion.tikhonov.mode == SolveMode::ClosedForm);
    CHECK(c.noise.alpha == 0.0);
    // u is sampled on the time grid; 3.0 falls between two nodes.
    CHECK(c.scenario.u(3.0) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(c.scenario.xbar == 0.0);
    CHECK(c.observer.options.hold == HoldOrder::Cubic);
}

TEST_CASE("field-precise rejections") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"lambda_bank": {"max": 0}})"), doctest::Contains("lambda_bank.max"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"lambda_bank": {"min": -1, "max": -2}})"), doctest::Contains("lambda_bank.min"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"scenario": {"growth": {"kind": "constant", "value": 1.2}}})"),
                         doctest::Contains("zero tail"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"scenario": {"u": {"kind": "samples", "t": [0, 10], "values": [1, 1]}}})"),
                         doctest::Contains("u(t0) != psi0(x_min)"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"scenario": {"grid": {"n_x": 1}}})"), doctest::Contains("scenario.grid"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"tikhonov": {"delta": 0}})"), doctest::Contains("tikhonov.delta"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"noise": {"alpha": -1}})"), doctest::Contains("noise.alpha"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"tikhonov": {"dleta": 1}})"), doctest::Contains("tikhonov.dleta: unknown field"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"checks": {"enabled": ["nope"]}})"), doctest::Contains("unknown check"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("{\n  \"noise\": {\n  \"alpha\": ,\n}"), doctest::Contains("line 3"), ConfigError);
}

TEST_CASE("options parse") {
    const RunConfig c = parse_config(R"({
        "scenario": {"grid": {"n_x": 40, "n_t": 30}, "u": {"std": 1.5}, "growth": {"kind": "constant", "value": 0.5}},
        "lambda_bank": {"count": 20, "spacing": "log"},
        "observer": {"hold": "linear", "z0": 2},
        "noise": {"alpha": 0.02, "seed": 9, "kind": "uniform"},
        "tikhonov": {"mode": "nonnegative", "support": "full", "delta_sweep": [0.05, 0.1]},
        "out": "elsewhere"
    })");
    CHECK(c.scenario.grid.n_x() == 40);
    CHECK(c.lambda_bank.spacing == LambdaSpacing::LogUniform);
    CHECK(c.observer.options.hold == HoldOrder::Linear);
    CHECK(c.observer.z0 == 2.0);
    CHECK(c.noise.seed == 9);
    CHECK(c.noise.kind == NoiseKind::Uniform);
    CHECK(c.inversion.support == SupportPrior::Full);
    CHECK(c.inversion.delta_sweep.size() == 2);
    CHECK(c.checks.enabled == std::vector<std::string>{"final_peak"});
    CHECK(c.out_dir == "elsewhere");
}

TEST_CASE("concentration growth model") {
    const RunConfig c = parse_config(R"({"scenario": {"growth": {"kind": "concentration", "t": [0, 10],
        "c_c": [1.5, 1.4], "c_star": [1.0, 1.0], "k_g": 1.0}}})");
    CHECK(c.scenario.growth_signal()(0.0) == doctest::Approx(0.5));
    CHECK_THROWS_WITH_AS(parse_config(R"({"scenario": {"growth": {"kind": "concentration", "t": [0, 10],
        "c_c": [1.5, 1.4], "c_star": [0.0, 1.0], "k_g": 1.0}}})"), doctest::Contains("c_star"), ConfigError);
}

TEST_CASE("stage names") {
    CHECK(parse_stage("observe") == Stage::Observe);
    CHECK(stage_name(Stage::Analyze) == "analyze");
    CHECK_THROWS_AS(parse_stage("plot"), ConfigError);
}
