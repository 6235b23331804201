#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "kklcsd/errors.hpp"

namespace kklcsd::cli {

using nlohmann::json;

namespace {

// Samples per grid step for analytic u and psi0 profiles.
constexpr std::size_t kProfileRefinement = 16;

// Object view that remembers which keys were read so leftovers can be
// reported as unknown fields.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail("", "must be an object");
    }

    ~Section() = default;

    bool has(const std::string& key) const { return j_.contains(key); }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw ConfigError(name(key) + ": " + what);
    }

    std::string name(const std::string& key) const {
        if (key.empty()) return path_.empty() ? "config" : path_;
        return path_.empty() ? key : path_ + "." + key;
    }

    double number(const std::string& key, double fallback) {
        seen_.insert(key);
        if (!j_.contains(key)) return fallback;
        const auto& v = j_.at(key);
        if (!v.is_number()) fail(key, "must be a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(key, "must be finite");
        return d;
    }

    std::size_t count(const std::string& key, std::size_t fallback) {
        seen_.insert(key);
        if (!j_.contains(key)) return fallback;
        const auto& v = j_.at(key);
        if (!v.is_number_integer() || v.get<long long>() < 0) fail(key, "must be a nonnegative integer");
        return static_cast<std::size_t>(v.get<long long>());
    }

    bool flag(const std::string& key, bool fallback) {
        seen_.insert(key);
        if (!j_.contains(key)) return fallback;
        if (!j_.at(key).is_boolean()) fail(key, "must be true or false");
        return j_.at(key).get<bool>();
    }

    std::string text(const std::string& key, const std::string& fallback) {
        seen_.insert(key);
        if (!j_.contains(key)) return fallback;
        if (!j_.at(key).is_string()) fail(key, "must be a string");
        return j_.at(key).get<std::string>();
    }

    std::vector<double> numbers(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key)) fail(key, "is required");
        const auto& v = j_.at(key);
        if (!v.is_array()) fail(key, "must be an array of numbers");
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) fail(key, "must be an array of numbers");
            out.push_back(e.get<double>());
        }
        return out;
    }

    std::vector<std::string> strings(const std::string& key, std::vector<std::string> fallback) {
        seen_.insert(key);
        if (!j_.contains(key)) return fallback;
        const auto& v = j_.at(key);
        if (!v.is_array()) fail(key, "must be an array of strings");
        std::vector<std::string> out;
        for (const auto& e : v) {
            if (!e.is_string()) fail(key, "must be an array of strings");
            out.push_back(e.get<std::string>());
        }
        return out;
    }

    /// Nested object, or an empty one when absent.
    Section child(const std::string& key) {
        seen_.insert(key);
        static const json empty = json::object();
        return Section(j_.contains(key) ? j_.at(key) : empty, name(key));
    }

    void reject_unknown() const {
        for (const auto& [key, _] : j_.items()) {
            if (!seen_.count(key)) throw ConfigError(name(key) + ": unknown field");
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

template <typename F>
auto guarded(const std::string& field, F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(field + ": " + e.what());
    }
}

Grid parse_grid(Section s) {
    const double x_min = s.number("x_min", 0.0);
    const double x_max = s.number("x_max", 10.0);
    const std::size_t n_x = s.count("n_x", 100);
    const double t0 = s.number("t0", 0.0);
    const double t1 = s.number("t1", 10.0);
    const std::size_t n_t = s.count("n_t", 100);
    s.reject_unknown();
    return guarded(s.name(""), [&] { return Grid(x_min, x_max, n_x, t0, t1, n_t); });
}

// Signals are given either as named shapes or as explicit samples.
Signal parse_time_profile(Section s, const Grid& grid) {
    const std::string kind = s.text("kind", "truncated_gaussian");
    const auto ts = grid.ts();
    Signal out;
    if (kind == "truncated_gaussian") {
        const double peak = s.number("peak", 3.0);
        const double sd = s.number("std", 1.0);
        const double amp = s.number("amplitude", 1.0);
        const double lo = s.number("support_lo", 0.0);
        const double hi = s.number("support_hi", 6.0);
        const std::string taper = s.text("taper", "smooth");
        if (taper != "smooth" && taper != "offset") s.fail("taper", "must be \"smooth\" or \"offset\"");
        if (!(sd > 0.0)) s.fail("std", "must be > 0");
        if (!(hi > lo)) s.fail("support_hi", "must exceed support_lo");
        const Taper tp = taper == "smooth" ? Taper::Smooth : Taper::Offset;
        out = Signal::sample(refine_coords(ts, kProfileRefinement),
                             [&](double t) { return truncated_gaussian(t, peak, sd, amp, lo, hi, tp); });
    } else if (kind == "zero") {
        out = Signal::constant(ts, 0.0);
    } else if (kind == "samples") {
        auto t = s.numbers("t");
        auto v = s.numbers("values");
        out = guarded(s.name("t"), [&] { return Signal(std::move(t), std::move(v)); });
    } else {
        s.fail("kind", "must be one of truncated_gaussian, zero, samples");
    }
    s.reject_unknown();
    return out;
}

Signal parse_size_profile(Section s, const Grid& grid) {
    const std::string kind = s.text("kind", "zero");
    const auto xs = grid.xs();
    Signal out;
    if (kind == "zero") {
        out = Signal::constant(xs, 0.0);
    } else if (kind == "cosine_bump") {
        const double c = s.number("center", 0.0);
        const double w = s.number("half_width", 0.0);
        const double h = s.number("height", 1.0);
        if (!(w > 0.0)) s.fail("half_width", "must be > 0");
        out = Signal::sample(refine_coords(xs, kProfileRefinement),
                             [&](double x) { return cosine_bump(x, c, w, h); });
    } else if (kind == "samples") {
        auto x = s.numbers("x");
        auto v = s.numbers("values");
        out = guarded(s.name("x"), [&] { return Signal(std::move(x), std::move(v)); });
    } else {
        s.fail("kind", "must be one of zero, cosine_bump, samples");
    }
    s.reject_unknown();
    return out;
}

GrowthModel parse_growth(Section s, const Grid& grid) {
    const std::string kind = s.text("kind", "exponential");
    const auto ts = grid.ts();
    GrowthModel out;
    if (kind == "exponential") {
        // G(t) = base + amplitude * exp(-(t - t0) / tau)
        const double base = s.number("base", 0.92);
        const double amp = s.number("amplitude", 0.08);
        const double tau = s.number("tau", 3.0);
        if (!(tau > 0.0)) s.fail("tau", "must be > 0");
        const double t0 = grid.t0();
        out = DirectGrowth{Signal::sample(ts, [&](double t) { return base + amp * std::exp(-(t - t0) / tau); })};
    } else if (kind == "constant") {
        out = DirectGrowth{Signal::constant(ts, s.number("value", 1.0))};
    } else if (kind == "samples") {
        auto t = s.numbers("t");
        auto v = s.numbers("values");
        out = DirectGrowth{guarded(s.name("t"), [&] { return Signal(std::move(t), std::move(v)); })};
    } else if (kind == "concentration") {
        auto t = s.numbers("t");
        auto cc = s.numbers("c_c");
        auto cs = s.numbers("c_star");
        const double kg = s.number("k_g", 0.0);
        if (!(kg > 0.0)) s.fail("k_g", "must be > 0");
        for (double c : cs) {
            if (!(c > 0.0)) s.fail("c_star", "solubility must be > 0");
        }
        out = ConcentrationGrowth{guarded(s.name("c_c"), [&] { return Signal(t, std::move(cc)); }),
                                  guarded(s.name("c_star"), [&] { return Signal(t, std::move(cs)); }), kg};
    } else {
        s.fail("kind", "must be one of exponential, constant, samples, concentration");
    }
    s.reject_unknown();
    return out;
}

std::vector<double> parse_delta_list(const std::vector<double>& values, const std::string& field) {
    for (double d : values) {
        if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError(field + ": every delta must be > 0");
    }
    return values;
}

}  // namespace

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names{"observer_identity", "final_peak", "final_rel_l2", "cubic_output"};
    return names;
}

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: parse error: ") + e.what());
    }
    Section top(root, "");

    Section sc = top.child("scenario");
    const Grid grid = parse_grid(sc.child("grid"));
    Signal psi0 = parse_size_profile(sc.child("psi0"), grid);
    Signal u = parse_time_profile(sc.child("u"), grid);
    GrowthModel growth = parse_growth(sc.child("growth"), grid);
    SensorModel sensor;
    {
        Section s = sc.child("sensor");
        sensor.rho_s = s.number("rho_s", 1.0);
        sensor.k_v = s.number("k_v", 1.0);
        sensor.m_e = s.number("m_e", 1.0);
        s.reject_unknown();
        guarded(s.name(""), [&] { sensor.validate(); return 0; });
    }
    const double xbar = sc.number("xbar", support_edge(psi0, grid.x_min()));
    sc.reject_unknown();

    RunConfig cfg{Scenario{grid, std::move(psi0), std::move(u), std::move(growth), sensor, xbar}, {}, {}, {}, {}, {}, "out"};
    guarded("scenario", [&] { cfg.scenario.validate(); return 0; });

    {
        Section s = top.child("lambda_bank");
        auto& b = cfg.lambda_bank;
        b.min = s.number("min", b.min);
        b.max = s.number("max", b.max);
        b.count = s.count("count", b.count);
        const std::string spacing = s.text("spacing", "uniform");
        if (spacing == "uniform") {
            b.spacing = LambdaSpacing::Uniform;
        } else if (spacing == "log") {
            b.spacing = LambdaSpacing::LogUniform;
        } else {
            s.fail("spacing", "must be \"uniform\" or \"log\"");
        }
        s.reject_unknown();
        if (!(b.max < 0.0)) s.fail("max", "bank must be strictly negative (lambda < 0)");
        if (!(b.min < b.max)) s.fail("min", "must be < max");
        if (b.count < 1) s.fail("count", "must be >= 1");
        guarded(s.name(""), [&] { return b.build(); });
    }
    {
        Section s = top.child("observer");
        const std::string hold = s.text("hold", "cubic");
        if (hold == "cubic") {
            cfg.observer.options.hold = HoldOrder::Cubic;
        } else if (hold == "linear") {
            cfg.observer.options.hold = HoldOrder::Linear;
        } else if (hold == "zero") {
            cfg.observer.options.hold = HoldOrder::Zero;
        } else {
            s.fail("hold", "must be one of cubic, linear, zero");
        }
        cfg.observer.options.explicit_euler = s.flag("explicit_euler", false);
        cfg.observer.z0 = s.number("z0", 0.0);
        s.reject_unknown();
    }
    {
        Section s = top.child("noise");
        cfg.noise.alpha = s.number("alpha", 0.0);
        if (cfg.noise.alpha < 0.0) s.fail("alpha", "must be >= 0");
        cfg.noise.seed = s.count("seed", 1);
        const std::string kind = s.text("kind", "gaussian");
        if (kind == "gaussian") {
            cfg.noise.kind = NoiseKind::Gaussian;
        } else if (kind == "uniform") {
            cfg.noise.kind = NoiseKind::Uniform;
        } else {
            s.fail("kind", "must be \"gaussian\" or \"uniform\"");
        }
        s.reject_unknown();
    }
    {
        Section s = top.child("tikhonov");
        auto& t = cfg.inversion.tikhonov;
        t.delta = s.number("delta", t.delta);
        const std::string mode = s.text("mode", "closed-form");
        if (mode == "closed-form") {
            t.mode = SolveMode::ClosedForm;
        } else if (mode == "nonnegative") {
            t.mode = SolveMode::NonnegativeIterative;
        } else {
            s.fail("mode", "must be \"closed-form\" or \"nonnegative\"");
        }
        t.max_iter = static_cast<int>(s.count("max_iter", static_cast<std::size_t>(t.max_iter)));
        t.tol = s.number("tol", t.tol);
        cfg.inversion.dx_weighted = s.flag("dx_weighted", false);
        const std::string support = s.text("support", "zero-tail");
        if (support == "zero-tail") {
            cfg.inversion.support = SupportPrior::ZeroTail;
        } else if (support == "full") {
            cfg.inversion.support = SupportPrior::Full;
        } else {
            s.fail("support", "must be \"zero-tail\" or \"full\"");
        }
        if (s.has("delta_sweep")) cfg.inversion.delta_sweep = parse_delta_list(s.numbers("delta_sweep"), s.name("delta_sweep"));
        s.reject_unknown();
        if (!(t.delta > 0.0)) s.fail("delta", "must be > 0 (the unregularized inversion is ill-posed)");
        guarded(s.name(""), [&] { t.validate(); return 0; });
    }
    {
        Section s = top.child("checks");
        auto& c = cfg.checks;
        // The exact decay identity only holds for the noise-free output.
        if (!s.has("enabled") && cfg.noise.alpha > 0.0) c.enabled = {"final_peak"};
        c.enabled = s.strings("enabled", c.enabled);
        for (const auto& name : c.enabled) {
            bool ok = false;
            for (const auto& k : known_checks()) ok = ok || k == name;
            if (!ok) s.fail("enabled", "unknown check '" + name + "'");
        }
        c.observer_identity_tol = s.number("observer_identity_tol", c.observer_identity_tol);
        c.peak_cells = s.number("peak_cells", c.peak_cells);
        c.rel_l2_tol = s.number("rel_l2_tol", c.rel_l2_tol);
        c.cubic_tol = s.number("cubic_tol", c.cubic_tol);
        s.reject_unknown();
    }
    cfg.out_dir = top.text("out", "out");
    top.reject_unknown();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace kklcsd::cli
