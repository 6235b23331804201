#include "pipeline.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>

#include "kklcsd/csv.hpp"
#include "kklcsd/errors.hpp"
#include "kklcsd/kernel_cache.hpp"
#include "kklcsd/process_model.hpp"
#include "kklcsd/reconstruct.hpp"

namespace kklcsd::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class StageError : public Error {
public:
    using Error::Error;
};

std::vector<double> deltas_of(const RunConfig& cfg) {
    if (cfg.inversion.delta_sweep.empty()) return {cfg.inversion.tikhonov.delta};
    return cfg.inversion.delta_sweep;
}

std::string suffixed(const std::string& stem, const RunConfig& cfg, double delta) {
    if (cfg.inversion.delta_sweep.empty()) return stem + ".csv";
    return stem + "_delta_" + format_number(delta) + ".csv";
}

void require_file(const fs::path& path, const char* producer) {
    if (!fs::exists(path)) {
        throw StageError("missing " + path.string() + "; run the " + producer + " stage first");
    }
}

KernelBank kernels_for(const RunConfig& cfg, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    const Scenario& sc = cfg.scenario;
    KernelBank bank = cached_kernel_bank(cfg.out_dir / "kernels.bin", cfg.lambda_bank.build(), sc.growth_signal(), sc.grid);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    log << "  kernels: " << bank.size() << " lambdas (" << static_cast<long>(ms) << " ms)\n";
    return bank;
}

NdfField read_field(const fs::path& path, const Grid& grid) {
    FieldCsv f = read_field_csv(path);
    if (f.times.size() != grid.n_t() || f.sizes.size() != grid.n_x()) {
        throw StageError(path.string() + " does not match the configured grid");
    }
    return NdfField(grid, std::move(f.values));
}

ObserverBank read_observers(const fs::path& path, const LambdaBank& lambdas, std::size_t n_t) {
    const Table table = read_table(path);
    if (table.header.size() != lambdas.size() + 1 || table.header.front() != "t") {
        throw StageError(path.string() + " was written for a different lambda bank; rerun observe");
    }
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (parse_number(table.header[i + 1]) != lambdas[i]) {
            throw StageError(path.string() + " was written for a different lambda bank; rerun observe");
        }
    }
    if (table.rows() != n_t) throw StageError(path.string() + " does not match the configured time grid");
    ObserverBank bank{lambdas, table.columns[0], {}, RowMatrix(static_cast<Eigen::Index>(lambdas.size()), static_cast<Eigen::Index>(n_t))};
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        bank.z0.push_back(table.columns[i + 1][0]);
        for (std::size_t k = 0; k < n_t; ++k) {
            bank.z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = table.columns[i + 1][k];
        }
    }
    return bank;
}

void stage_simulate(const RunConfig& cfg, std::ostream& log) {
    const NdfField field = simulate(cfg.scenario);
    const Signal y = output_signal(field);
    const Signal noisy = add_noise(y, cfg.noise.alpha, cfg.noise.seed, cfg.noise.kind);
    write_field_csv(cfg.out_dir / "ndf.csv", field.grid, field.values);

    Table out{{"t", "y", "y_noisy", "c_s"}, {y.coords(), y.values(), noisy.values(), {}}};
    for (double v : noisy.values()) out.columns[3].push_back(concentration_from_moment(v, cfg.scenario.sensor));
    write_table(cfg.out_dir / "output.csv", out);
    log << "  wrote ndf.csv, output.csv\n";
}

void stage_observe(const RunConfig& cfg, std::ostream& log) {
    const fs::path in = cfg.out_dir / "output.csv";
    require_file(in, "simulate");
    const Table table = read_table(in);
    const Signal y(table.column("t"), table.column("y_noisy"));
    const LambdaBank lambdas = cfg.lambda_bank.build();
    const ObserverBank bank = run_observer_bank(lambdas, y, std::vector<double>(lambdas.size(), cfg.observer.z0),
                                                cfg.observer.options);
    Table out;
    out.header.push_back("t");
    out.columns.push_back(bank.times);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        out.header.push_back(format_number(lambdas[i]));
        const auto row = bank.z.row(static_cast<Eigen::Index>(i));
        out.columns.emplace_back(row.data(), row.data() + row.size());
    }
    write_table(cfg.out_dir / "observers.csv", out);
    log << "  wrote observers.csv (" << lambdas.size() << " observers)\n";
}

void stage_reconstruct(const RunConfig& cfg, std::ostream& log) {
    const Scenario& sc = cfg.scenario;
    const Grid& grid = sc.grid;
    const fs::path obs_path = cfg.out_dir / "observers.csv";
    require_file(obs_path, "observe");
    const LambdaBank lambdas = cfg.lambda_bank.build();
    const ObserverBank observers = read_observers(obs_path, lambdas, grid.n_t());
    const KernelBank kernels = kernels_for(cfg, log);

    ReconstructOptions options;
    options.dx_weighted = cfg.inversion.dx_weighted;
    if (cfg.inversion.support == SupportPrior::ZeroTail) {
        options.support_limit = zero_tail_support(grid, sc.growth_signal(), sc.xbar);
    }

    const fs::path truth_path = cfg.out_dir / "ndf.csv";
    std::optional<NdfField> truth;
    if (fs::exists(truth_path)) truth = read_field(truth_path, grid);

    for (double delta : deltas_of(cfg)) {
        TikhonovConfig tk = cfg.inversion.tikhonov;
        tk.delta = delta;
        const EstimateField est = reconstruct(kernels, observers, tk, options);
        write_field_csv(cfg.out_dir / suffixed("estimate", cfg, delta), grid, est.values);

        Table metrics{{"k", "t", "residual", "norm", "solve_iterations", "rel_l2_error"}, {}};
        metrics.columns.resize(6);
        Table timing{{"k", "t", "wall_time_ms"}, {}};
        timing.columns.resize(3);
        for (std::size_t k = 0; k < grid.n_t(); ++k) {
            double err = kNaN;
            if (truth) {
                const auto t_row = truth->values.row(static_cast<Eigen::Index>(k));
                const std::vector<double> tv(t_row.data(), t_row.data() + t_row.size());
                double sq = 0.0;
                for (double v : tv) sq += v * v;
                if (sq > 0.0) err = relative_l2_error(est.row(k), tv);
            }
            const double row[] = {static_cast<double>(k), grid.t(k), est.residuals[k], est.norms[k],
                                  static_cast<double>(est.iterations[k]), err};
            for (std::size_t c = 0; c < 6; ++c) metrics.columns[c].push_back(row[c]);
            timing.columns[0].push_back(static_cast<double>(k));
            timing.columns[1].push_back(grid.t(k));
            timing.columns[2].push_back(est.wall_ms[k]);
        }
        write_table(cfg.out_dir / suffixed("metrics", cfg, delta), metrics);
        write_table(cfg.out_dir / suffixed("timing", cfg, delta), timing);
        log << "  delta " << format_number(delta) << ": wrote " << suffixed("estimate", cfg, delta);
        if (truth) log << ", final relative L2 error " << metrics.columns[5].back();
        log << '\n';
    }
}

std::vector<CheckRow> observer_identity(const RunConfig& cfg, const NdfField& truth, const KernelBank& kernels,
                                        const ObserverBank& observers) {
    // T psi - z must decay exactly like e^{lambda (t - t0)}.
    const Grid& grid = truth.grid;
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < kernels.size(); ++i) {
        const KernelField a = kernels.field(i);
        const double e0 = functional_T(a, truth, 0) - observers(i, 0);
        for (std::size_t k = 0; k < grid.n_t(); ++k) {
            const double t_psi = functional_T(a, truth, k);
            const double e = t_psi - observers(i, k);
            scale = std::max(scale, std::abs(t_psi));
            worst = std::max(worst, std::abs(e - std::exp(kernels.lambdas[i] * (grid.t(k) - grid.t0())) * e0));
        }
    }
    const double value = scale > 0.0 ? worst / scale : worst;
    return {{"observer_identity", value, cfg.checks.observer_identity_tol, value <= cfg.checks.observer_identity_tol}};
}

int stage_analyze(const RunConfig& cfg, std::ostream& log) {
    const Scenario& sc = cfg.scenario;
    const Grid& grid = sc.grid;
    const auto enabled = [&](const std::string& name) {
        for (const auto& e : cfg.checks.enabled) {
            if (e == name) return true;
        }
        return false;
    };

    std::vector<CheckRow> rows;
    const fs::path truth_path = cfg.out_dir / "ndf.csv";
    require_file(truth_path, "simulate");
    const NdfField truth = read_field(truth_path, grid);

    if (enabled("observer_identity")) {
        const fs::path obs_path = cfg.out_dir / "observers.csv";
        require_file(obs_path, "observe");
        const LambdaBank lambdas = cfg.lambda_bank.build();
        const ObserverBank observers = read_observers(obs_path, lambdas, grid.n_t());
        const KernelBank kernels = kernels_for(cfg, log);
        for (auto& r : observer_identity(cfg, truth, kernels, observers)) rows.push_back(std::move(r));
    }

    if (enabled("final_peak") || enabled("final_rel_l2")) {
        const auto last = static_cast<Eigen::Index>(grid.n_t() - 1);
        const auto t_row = truth.values.row(last);
        const std::vector<double> tv(t_row.data(), t_row.data() + t_row.size());
        for (double delta : deltas_of(cfg)) {
            const fs::path est_path = cfg.out_dir / suffixed("estimate", cfg, delta);
            require_file(est_path, "reconstruct");
            const NdfField est = read_field(est_path, grid);
            const auto e_row = est.values.row(last);
            const std::vector<double> ev(e_row.data(), e_row.data() + e_row.size());
            const std::string tag = cfg.inversion.delta_sweep.empty() ? "" : "[delta=" + format_number(delta) + "]";
            if (enabled("final_peak")) {
                const double cells = std::abs(static_cast<double>(peak_index(ev)) - static_cast<double>(peak_index(tv)));
                rows.push_back({"final_peak_cells" + tag, cells, cfg.checks.peak_cells, cells <= cfg.checks.peak_cells});
            }
            if (enabled("final_rel_l2")) {
                const double err = relative_l2_error(ev, tv);
                rows.push_back({"final_rel_l2" + tag, err, cfg.checks.rel_l2_tol, err <= cfg.checks.rel_l2_tol});
            }
        }
    }

    if (enabled("cubic_output")) {
        const fs::path out_path = cfg.out_dir / "output.csv";
        require_file(out_path, "simulate");
        const Table table = read_table(out_path);
        const Signal y(table.column("t"), table.column("y"));
        const double residual = cubic_output_check(time_reparametrize(y, sc.growth_signal()));
        rows.push_back({"cubic_output_residual", residual, cfg.checks.cubic_tol, residual <= cfg.checks.cubic_tol});
    }

    write_checks_csv(cfg.out_dir / "checks.csv", rows);
    bool all = true;
    for (const auto& r : rows) {
        log << "  " << (r.pass ? "PASS " : "FAIL ") << r.quantity << " = " << r.value << " (tol " << r.tolerance << ")\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

}  // namespace

Stage parse_stage(const std::string& name) {
    if (name == "simulate") return Stage::Simulate;
    if (name == "observe") return Stage::Observe;
    if (name == "reconstruct") return Stage::Reconstruct;
    if (name == "analyze") return Stage::Analyze;
    if (name == "run") return Stage::Run;
    throw ConfigError("stage: '" + name + "' is not one of simulate, observe, reconstruct, analyze, run");
}

std::string stage_name(Stage stage) {
    switch (stage) {
        case Stage::Simulate: return "simulate";
        case Stage::Observe: return "observe";
        case Stage::Reconstruct: return "reconstruct";
        case Stage::Analyze: return "analyze";
        case Stage::Run: return "run";
    }
    return "?";
}

int run_stage(const RunConfig& cfg, Stage stage, std::ostream& log) {
    if (stage == Stage::Run) {
        for (Stage s : {Stage::Simulate, Stage::Observe, Stage::Reconstruct}) run_stage(cfg, s, log);
        return run_stage(cfg, Stage::Analyze, log);
    }
    fs::create_directories(cfg.out_dir);
    log << stage_name(stage) << '\n';
    try {
        switch (stage) {
            case Stage::Simulate: stage_simulate(cfg, log); return 0;
            case Stage::Observe: stage_observe(cfg, log); return 0;
            case Stage::Reconstruct: stage_reconstruct(cfg, log); return 0;
            case Stage::Analyze: return stage_analyze(cfg, log);
            case Stage::Run: break;
        }
    } catch (const Error& e) {
        throw Error(stage_name(stage) + ": " + e.what());
    }
    return 0;
}

}  // namespace kklcsd::cli
