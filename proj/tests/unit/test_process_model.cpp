#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kklcsd/errors.hpp"
#include "kklcsd/process_model.hpp"
#include "oracles.hpp"
#include "scenarios.hpp"

using namespace kklcsd;

namespace {

double hat(double x) { return std::max(0.0, 1.0 - std::abs(x - 2.0)); }

}  // namespace

TEST_CASE("scenario validation names the violated rule") {
    const Grid g(0.0, 10.0, 51, 0.0, 4.0, 41);
    SUBCASE("compatibility") {
        const auto sc = fixture::make(g, fixture::zero, fixture::one, fixture::one, 0.0);
        CHECK_THROWS_WITH_AS(sc.validate(), doctest::Contains("u(t0) != psi0(x_min)"), InvalidScenarioError);
    }
    SUBCASE("positive growth") {
        const auto sc = fixture::make(g, fixture::zero, fixture::zero, [](double t) { return 1.0 - t / 2.0; }, 0.0);
        CHECK_THROWS_WITH_AS(sc.validate(), doctest::Contains("G >= mu > 0"), InvalidScenarioError);
    }
    SUBCASE("zero tail") {
        const auto sc = fixture::make(g, hat, fixture::zero, [](double) { return 2.0; }, 3.0);
        CHECK_THROWS_WITH_AS(sc.validate(), doctest::Contains("zero tail"), InvalidScenarioError);
    }
    SUBCASE("psi0 nonzero beyond xbar") {
        const auto sc = fixture::make(g, hat, fixture::zero, fixture::one, 2.5);
        CHECK_THROWS_AS(sc.validate(), InvalidScenarioError);
    }
    SUBCASE("valid") { CHECK_NOTHROW(fixture::make(g, hat, fixture::zero, fixture::one, 3.0).validate()); }
}

TEST_CASE("support edge") {
    const Grid g(0.0, 10.0, 11, 0.0, 1.0, 2);
    CHECK(support_edge(Signal::sample(g.xs(), hat), 0.0) == 3.0);
    CHECK(support_edge(Signal::constant(g.xs(), 0.0), 0.0) == 0.0);
}

TEST_CASE("profile shapes") {
    CHECK(truncated_gaussian(3.0, 3.0, 1.0, 1.0, 0.0, 6.0, Taper::Smooth) == doctest::Approx(1.0));
    CHECK(truncated_gaussian(0.0, 3.0, 1.0, 1.0, 0.0, 6.0, Taper::Smooth) == 0.0);
    CHECK(truncated_gaussian(6.5, 3.0, 1.0, 1.0, 0.0, 6.0, Taper::Offset) == 0.0);
    CHECK(truncated_gaussian(3.0, 3.0, 1.0, 2.0, 0.0, 6.0, Taper::Offset) == doctest::Approx(2.0));
    CHECK(cosine_bump(5.0, 5.0, 1.0, 2.0) == doctest::Approx(2.0));
    CHECK(cosine_bump(6.0, 5.0, 1.0, 2.0) == doctest::Approx(0.0));
}

TEST_CASE("closed-form solution") {
    const Grid g(0.0, 10.0, 101, 0.0, 5.0, 51);
    SUBCASE("zero data") {
        const auto sc = fixture::make(g, fixture::zero, fixture::zero, fixture::one, 0.0);
        CHECK(simulate(sc).values.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("unit speed shifts the seed population") {
        const auto sc = fixture::make(g, hat, fixture::zero, fixture::one, 3.0);
        const NdfField f = simulate(sc);
        for (std::size_t k = 0; k < g.n_t(); ++k) {
            for (std::size_t j = 0; j < g.n_x(); ++j) {
                const double shifted = g.x(j) - g.t(k);
                CHECK(f(k, j) == doctest::Approx(shifted >= 0.0 ? hat(shifted) : 0.0).epsilon(1e-12));
            }
        }
    }
    SUBCASE("inflow branch with u(s) = s") {
        const auto sc = fixture::make(g, fixture::zero, [](double s) { return s; }, fixture::one, 0.0);
        for (double t : {1.0, 2.5, 5.0}) {
            for (double x : {0.0, 0.3, 0.9}) CHECK(analytic_solution(sc, t, x) == doctest::Approx(t - x).epsilon(1e-12));
        }
    }
    SUBCASE("constant speed shift property") {
        const auto sc = fixture::make(g, hat, fixture::zero, [](double) { return 0.5; }, 3.0);
        const NdfField f = simulate(sc);
        for (std::size_t k = 0; k < g.n_t(); k += 7) {
            for (std::size_t j = 0; j < g.n_x(); j += 3) {
                const double shifted = g.x(j) - 0.5 * g.t(k);
                if (shifted >= 0.0) CHECK(f(k, j) == doctest::Approx(hat(shifted)).epsilon(1e-12));
            }
        }
    }
    SUBCASE("non-monotone cumulative growth is rejected") {
        const auto sc = fixture::make(g, fixture::zero, fixture::zero, fixture::zero, 0.0);
        CHECK_THROWS_AS(analytic_solution(sc, 1.0, 1.0), InvalidScenarioError);
    }
}

TEST_CASE("simulated field boundary, seed and tail rows") {
    const auto sc = fixture::reference(100);
    const NdfField f = simulate(sc);
    const Grid& g = sc.grid;
    const double reach = fixture::reference_cumulative(10.0);
    for (std::size_t k = 0; k < g.n_t(); ++k) {
        CHECK(f(k, 0) == sc.u(g.t(k)));
        CHECK(f(k, g.n_x() - 1) == 0.0);
        for (std::size_t j = 0; j < g.n_x(); ++j) {
            if (g.x(j) >= sc.xbar + reach) CHECK(f(k, j) == 0.0);
        }
    }
    for (std::size_t j = 0; j < g.n_x(); ++j) CHECK(f(0, j) == 0.0);
    // The hump peaks near the size reached by crystals born at t = 3.
    std::size_t peak = 0;
    for (std::size_t j = 0; j < g.n_x(); ++j) {
        if (f(99, j) > f(99, peak)) peak = j;
    }
    CHECK(std::abs(g.x(peak) - (reach - fixture::reference_cumulative(3.0))) < 2.0 * g.dx());
}

TEST_CASE("transport agrees with an upwind integrator") {
    const auto sc = fixture::reference(100);
    const NdfField f = simulate(sc);
    const auto up = oracle::upwind_transport(0.0, 10.0, 100, 0.0, 10.0, 100, fixture::zero, fixture::reference_u,
                                             fixture::reference_growth);
    double sup = 0.0;
    for (std::size_t k = 0; k < 100; ++k) {
        for (std::size_t j = 0; j < 100; ++j) sup = std::max(sup, std::abs(f(k, j) - up[k][j]));
    }
    CHECK(sup < 5e-2);
}

TEST_CASE("third moment quadrature") {
    const Grid g(0.0, 10.0, 100, 0.0, 1.0, 2);
    NdfField f(g);
    CHECK(third_moment(f, 0) == 0.0);
    f.values.setOnes();
    // Rectangle rule over all nodes overshoots by about dx * x_max^3 / 2.
    CHECK(std::abs(third_moment(f, 0) - 2500.0) < 0.6 * g.dx() * 1000.0 + 1.0);
    f.values.setZero();
    f.values(1, 40) = 3.0;
    CHECK(third_moment(f, 1) == doctest::Approx(3.0 * g.dx() * std::pow(g.x(40), 3)));
    CHECK(moment(f, 1, 3) == doctest::Approx(third_moment(f, 1)));
    CHECK(output_signal(f).values()[1] == doctest::Approx(third_moment(f, 1)));
}

TEST_CASE("measurement chain") {
    const SensorModel unit{};
    CHECK(concentration_from_moment(0.0, unit) == 0.0);
    CHECK(concentration_from_moment(2500.0, unit) == 2500.0);
    const SensorModel spheres{2000.0, std::numbers::pi / 6.0, 10.0};
    CHECK(concentration_from_moment(1e-6, spheres) == doctest::Approx(2000.0 * (std::numbers::pi / 6.0) / 10.0 * 1e-6));
    for (double y : {1e-9, 0.3, 7.0, 1e6}) {
        const double back = moment_from_concentration(concentration_from_moment(y, spheres), spheres);
        CHECK(std::abs(back - y) <= 1e-14 * y);
    }
    CHECK_THROWS_AS(SensorModel({0.0, 1.0, 1.0}).validate(), DomainError);
}
