#include "doctest.h"

#include <cmath>
#include <numeric>

#include "kklcsd/analysis.hpp"
#include "kklcsd/errors.hpp"
#include "kklcsd/process_model.hpp"
#include "scenarios.hpp"

using namespace kklcsd;

namespace {

double bump(double x) { return cosine_bump(x, 3.0, 1.5, 1.0); }

}  // namespace

TEST_CASE("moment derivatives") {
    SUBCASE("zero data") {
        const Grid g(1.0, 6.0, 60, 0.0, 2.0, 30);
        const auto sc = fixture::make(g, fixture::zero, fixture::zero, fixture::one, 1.0);
        const auto d = moment_derivatives(simulate(sc), sc.u, sc.growth_signal());
        for (const Signal* s : {&d.y1, &d.y2, &d.y3, &d.y4}) CHECK(s->max_abs() == 0.0);
    }
    SUBCASE("quadrature y' matches finite differences of y") {
        const auto err = [](std::size_t n) {
            const Grid g(1.0, 11.0, 4 * n, 0.0, 3.0, n);
            const auto u = [](double t) { return std::sin(t) * std::exp(-t / 2.0); };
            const auto sc = fixture::make(g, fixture::zero, u, fixture::one, 1.0);
            const NdfField f = simulate(sc);
            const Signal y = output_signal(f);
            const auto d = moment_derivatives(f, sc.u, sc.growth_signal());
            double worst = 0.0;
            for (std::size_t i = 0; i < d.y1.size(); ++i) {
                const std::size_t k = i + 2;
                const double fd = (y.values()[k + 1] - y.values()[k - 1]) / (2.0 * g.dt());
                worst = std::max(worst, std::abs(d.y1.values()[i] - fd));
            }
            return worst / y.max_abs();
        };
        const double coarse = err(61);
        const double fine = err(121);
        CHECK(coarse < 0.05);
        CHECK(fine < coarse);
    }
    SUBCASE("growth must be unit") {
        const Grid g(1.0, 6.0, 20, 0.0, 2.0, 20);
        const auto sc = fixture::make(g, fixture::zero, fixture::zero, [](double) { return 2.0; }, 1.0);
        CHECK_THROWS_WITH_AS(moment_derivatives(NdfField(g), sc.u, sc.growth_signal()),
                             doctest::Contains("time_reparametrize"), PreconditionError);
    }
    SUBCASE("first derivative at t0 for an empty reactor") {
        const double xm = 1.5;
        const double y1 = boundary_to_output_derivatives(0.8, 0.0, 0.0, xm)[0];
        CHECK(y1 == doctest::Approx(xm * xm * xm * 0.8));
    }
}

TEST_CASE("boundary recovery") {
    CHECK(recover_boundary(0.0, 0.0, 0.0, 2.0) == std::array<double, 3>{0.0, 0.0, 0.0});
    const auto fwd = boundary_to_output_derivatives(2.0, 3.0, 5.0, 1.0);
    CHECK(fwd == std::array<double, 3>{2.0, 9.0, 26.0});
    CHECK(recover_boundary(fwd[0], fwd[1], fwd[2], 1.0) == std::array<double, 3>{2.0, 3.0, 5.0});
    for (double xm : {0.1, 0.7, 3.0}) {
        const auto y = boundary_to_output_derivatives(-1.2, 0.4, 7.5, xm);
        const auto back = recover_boundary(y[0], y[1], y[2], xm);
        CHECK(back[0] == doctest::Approx(-1.2).epsilon(1e-12));
        CHECK(back[1] == doctest::Approx(0.4).epsilon(1e-12));
        CHECK(back[2] == doctest::Approx(7.5).epsilon(1e-12));
    }
    CHECK_THROWS_AS(recover_boundary(1.0, 1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("start derivatives of a polynomial") {
    std::vector<double> t(8);
    std::iota(t.begin(), t.end(), 0.0);
    for (auto& v : t) v *= 0.1;
    // Exact for quadratics in the first two, for cubics in the third.
    const Signal y = Signal::sample(t, [](double s) { return 1.0 + 2.0 * s + 1.5 * s * s + 0.5 * s * s * s; });
    const auto d = start_derivatives(y);
    CHECK(d[2] == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(d[0] == doctest::Approx(2.0).epsilon(1e-2));
    CHECK(d[1] == doctest::Approx(3.0).epsilon(1e-1));
}

TEST_CASE("time reparametrization") {
    std::vector<double> ts(101);
    for (std::size_t k = 0; k < ts.size(); ++k) ts[k] = 0.1 * static_cast<double>(k);
    SUBCASE("unit growth is the identity") {
        const Signal s = Signal::sample(ts, [](double t) { return std::sin(t); });
        const Signal r = time_reparametrize(s, Signal::constant(ts, 1.0));
        for (std::size_t k = 0; k < ts.size(); ++k) {
            CHECK(r.coords()[k] == doctest::Approx(ts[k]).epsilon(1e-14));
            CHECK(r.values()[k] == doctest::Approx(s.values()[k]).epsilon(1e-12));
        }
    }
    SUBCASE("constant growth 2 doubles the clock") {
        const Signal s = Signal::sample(ts, [](double t) { return std::exp(-(t - 3.0) * (t - 3.0)); });
        const Signal r = time_reparametrize(s, Signal::constant(ts, 2.0));
        CHECK(r.back() == doctest::Approx(20.0));
        const auto peak = peak_index(r.values());
        CHECK(r.coords()[peak] == doctest::Approx(6.0));
    }
    SUBCASE("field under affine growth satisfies the unit-speed solution") {
        const Grid g(0.0, 12.0, 241, 0.0, 5.0, 201);
        const auto rate = [](double t) { return 1.0 + t / 10.0; };
        const auto sc = fixture::make(g, bump, fixture::zero, rate, 4.5);
        const NdfField f = simulate(sc);
        const NdfField r = time_reparametrize(f, sc.growth_signal());
        double worst = 0.0;
        for (std::size_t k = 0; k < r.grid.n_t(); ++k) {
            for (std::size_t j = 0; j < r.grid.n_x(); ++j) {
                const double s = r.grid.x(j) - r.grid.t(k);
                worst = std::max(worst, std::abs(r(k, j) - (s >= 0.0 ? bump(s) : 0.0)));
            }
        }
        CHECK(worst < 5e-3);
    }
    SUBCASE("nonpositive growth") {
        const Signal s = Signal::constant(ts, 1.0);
        CHECK_THROWS_AS(time_reparametrize(s, Signal::constant(ts, 0.0)), DomainError);
    }
}

TEST_CASE("non-observability witness") {
    const Grid g(0.0, 10.0, 101, 0.0, 1.0, 2);
    SUBCASE("zero moments, zero baseline") {
        const Witness w = nonobservability_witness({0, 0, 0, 0}, g, {}, 0.05, false);
        CHECK(w.first != w.second);
        const auto mk = discrete_moments(w.kernel_element, g);
        for (double m : mk) CHECK(std::abs(m) < 1e-12);
    }
    SUBCASE("prescribed moments with a baseline") {
        std::vector<double> base(g.n_x());
        for (std::size_t j = 0; j < g.n_x(); ++j) base[j] = cosine_bump(g.x(j), 5.0, 4.0, 1.0);
        // Target: the baseline plus a small positive blip near one third of
        // the interior, reachable by a local correction.
        std::vector<double> target = base;
        for (std::size_t j = 31; j <= 36; ++j) target[j] += 0.05;
        const auto m = discrete_moments(target, g);
        const Witness w = nonobservability_witness(m, g, base, 0.02);
        for (const auto* p : {&w.first, &w.second}) {
            const auto got = discrete_moments(*p, g);
            for (int i = 0; i < 4; ++i) CHECK(std::abs(got[i] - m[i]) <= 1e-10 * std::max(1.0, std::abs(m[i])));
            CHECK(*std::min_element(p->begin(), p->end()) >= 0.0);
            CHECK(p->front() == 0.0);
            CHECK(p->back() == 0.0);
        }
    }
    SUBCASE("infeasible nonnegativity") {
        CHECK_THROWS_AS(nonobservability_witness({0, 0, 0, 0}, g, {}, 0.05, true), ConstructionError);
    }
    SUBCASE("grid too small") {
        CHECK_THROWS_AS(nonobservability_witness({0, 0, 0, 0}, Grid(0.0, 1.0, 9, 0.0, 1.0, 2), {}, 0.1, false),
                        PreconditionError);
        CHECK_NOTHROW(nonobservability_witness({0, 0, 0, 0}, Grid(0.0, 1.0, 10, 0.0, 1.0, 2), {}, 0.1, false));
    }
}

TEST_CASE("cubic output check") {
    std::vector<double> t(51);
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = static_cast<double>(k) / 50.0;
    CHECK(cubic_output_check(Signal::sample(t, [](double s) { return s * s * s; })) < 1e-13);
    CHECK(cubic_output_check(Signal::sample(t, [](double s) { return s * s * s * s; })) > 0.01);
    CHECK(cubic_output_check(Signal::constant(t, 0.0)) == 0.0);
}

TEST_CASE("noise") {
    std::vector<double> t(10000);
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = static_cast<double>(k);
    const Signal y = Signal::constant(t, 1.0);
    CHECK(add_noise(y, 0.0, 7).values() == y.values());
    CHECK(add_noise(y, 0.02, 7).values() == add_noise(y, 0.02, 7).values());
    CHECK(add_noise(y, 0.02, 7).values() != add_noise(y, 0.02, 8).values());
    for (NoiseKind kind : {NoiseKind::Gaussian, NoiseKind::Uniform}) {
        const Signal n = add_noise(y, 0.02, 42, kind);
        double mean = 0.0, sq = 0.0;
        for (double v : n.values()) mean += v - 1.0;
        mean /= 10000.0;
        for (double v : n.values()) sq += (v - 1.0 - mean) * (v - 1.0 - mean);
        CHECK(std::sqrt(sq / 9999.0) == doctest::Approx(0.02).epsilon(0.05));
    }
    CHECK_THROWS_AS(add_noise(y, -0.1, 1), DomainError);
}

TEST_CASE("rate fit") {
    std::vector<double> t(101);
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = 0.05 * static_cast<double>(k);
    const RateFit a = fit_rate(Signal::sample(t, [](double s) { return std::exp(-2.0 * s); }), 0.0, 5.0);
    CHECK(a.rate == doctest::Approx(2.0));
    CHECK(a.r_squared == doctest::Approx(1.0));
    const RateFit b = fit_rate(Signal::sample(t, [](double s) { return 5.0 * std::exp(-3.0 * s); }), 0.0, 5.0);
    CHECK(b.rate == doctest::Approx(3.0));
    CHECK(b.intercept == doctest::Approx(std::log(5.0)));
    CHECK_THROWS_WITH_AS(fit_rate(Signal::constant(t, 0.0), 0.0, 5.0), doctest::Contains("noise floor"), DomainError);
    CHECK_THROWS_AS(fit_rate(Signal::constant(t, 1.0), 0.0, 0.01, 0.0), DomainError);
}

TEST_CASE("relative gap normalizations") {
    const std::vector<double> tp{1.0, -2.0, 4.0, 0.0};
    const std::vector<double> z{0.5, -2.0, 3.0, 0.1};
    const auto pw = relative_gap(tp, z, GapNormalization::Pointwise);
    const auto mx = relative_gap(tp, z, GapNormalization::Maximum);
    CHECK(pw[0] == 0.5);
    CHECK(pw[2] == 0.25);
    CHECK(std::isinf(pw[3]));
    CHECK(mx[0] == 0.125);
    CHECK(mx[3] == doctest::Approx(0.025));
}

TEST_CASE("report helpers") {
    CHECK(relative_l2_error(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(peak_index(std::vector<double>{0.0, 3.0, 3.0, 1.0}) == 1);
    CHECK_THROWS_AS(relative_l2_error(std::vector<double>{1.0}, std::vector<double>{0.0}), DomainError);
}
