#pragma once

#include "kklcsd/grid.hpp"
#include "kklcsd/growth.hpp"
#include "kklcsd/scenario.hpp"
#include "kklcsd/signal.hpp"

namespace kklcsd {

/// Number density psi(t, x) sampled on a grid. Row k holds time t_k.
struct NdfField {
    Grid grid;
    RowMatrix values;

    NdfField(Grid g, RowMatrix v);
    explicit NdfField(const Grid& g);

    double operator()(std::size_t k, std::size_t j) const { return values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)); }
};

/// Closed-form solution of the constant-in-size transport problem
///
///   psi_t + G(t) psi_x = 0,  psi(t0, .) = psi0,  psi(., x_min) = u
///
/// psi(t, x) = psi0(x - g(t))              if x - x_min >= g(t)
///           = u(g^{-1}(g(t) - x + x_min))  otherwise
///
/// with g the cumulative growth. Built once per scenario so repeated
/// evaluations share the cumulative-growth table. Holds a reference: the
/// scenario must outlive the solution object.
class TransportSolution {
public:
    explicit TransportSolution(const Scenario& scenario);

    double operator()(double t, double x) const;

    const CumulativeGrowth& cumulative() const noexcept { return cumulative_; }

private:
    const Scenario* scenario_;
    CumulativeGrowth cumulative_;
};

/// Evaluates the closed-form solution at (t, x). Throws InvalidScenarioError
/// when the growth table is not strictly increasing.
double analytic_solution(const Scenario& scenario, double t, double x);

/// Fills the grid with the closed-form solution (method of characteristics).
/// Validates the scenario first.
NdfField simulate(const Scenario& scenario);

/// Rectangle rule over all nodes: dx * sum_j psi(t_k, x_j) * x_j^power.
double moment(const NdfField& field, std::size_t k, int power);

/// Third moment y(t_k) = dx * sum_j psi(t_k, x_j) x_j^3.
double third_moment(const NdfField& field, std::size_t k);

/// Third moment at every grid time.
Signal output_signal(const NdfField& field);

/// Solid concentration C_s = (rho_s k_v / M_e) * y.
double concentration_from_moment(double y, const SensorModel& sensor);

/// Inverse scaling of concentration_from_moment.
double moment_from_concentration(double c_s, const SensorModel& sensor);

}  // namespace kklcsd
