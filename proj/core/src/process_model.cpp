#include "kklcsd/process_model.hpp"

#include <cmath>
#include <sstream>

#include "kklcsd/errors.hpp"

namespace kklcsd {

NdfField::NdfField(Grid g, RowMatrix v) : grid(std::move(g)), values(std::move(v)) {
    if (values.rows() != static_cast<Eigen::Index>(grid.n_t()) ||
        values.cols() != static_cast<Eigen::Index>(grid.n_x())) {
        std::ostringstream msg;
        msg << "ndf field: values are " << values.rows() << "x" << values.cols() << ", grid needs "
            << grid.n_t() << "x" << grid.n_x();
        throw ShapeError(msg.str());
    }
}

NdfField::NdfField(const Grid& g)
    : grid(g), values(RowMatrix::Zero(static_cast<Eigen::Index>(g.n_t()), static_cast<Eigen::Index>(g.n_x()))) {}

TransportSolution::TransportSolution(const Scenario& scenario)
    : scenario_(&scenario), cumulative_(scenario.growth_signal()) {
    if (!cumulative_.strictly_increasing()) {
        throw InvalidScenarioError("transport: growth rate must be strictly positive to invert the cumulative growth");
    }
}

double TransportSolution::operator()(double t, double x) const {
    const Grid& grid = scenario_->grid;
    const double x_min = grid.x_min();
    if (t == grid.t0()) return scenario_->psi0(x);
    if (x == x_min) return scenario_->u(t);
    const double travelled = cumulative_.value(t);
    if (x - x_min >= travelled) return scenario_->psi0(x - travelled);
    const double birth = cumulative_.inverse(travelled - (x - x_min));
    return scenario_->u(birth);
}

double analytic_solution(const Scenario& scenario, double t, double x) {
    return TransportSolution(scenario)(t, x);
}

NdfField simulate(const Scenario& scenario) {
    scenario.validate();
    const TransportSolution solution(scenario);
    const Grid& grid = scenario.grid;
    NdfField field(grid);
    for (std::size_t k = 0; k < grid.n_t(); ++k) {
        const double t = grid.t(k);
        for (std::size_t j = 0; j < grid.n_x(); ++j) {
            field.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = solution(t, grid.x(j));
        }
    }
    return field;
}

double moment(const NdfField& field, std::size_t k, int power) {
    if (k >= field.grid.n_t()) throw DomainError("moment: time index out of range");
    const Grid& grid = field.grid;
    double sum = 0.0;
    for (std::size_t j = 0; j < grid.n_x(); ++j) {
        sum += field(k, j) * std::pow(grid.x(j), power);
    }
    return grid.dx() * sum;
}

double third_moment(const NdfField& field, std::size_t k) {
    if (k >= field.grid.n_t()) throw DomainError("third_moment: time index out of range");
    const Grid& grid = field.grid;
    double sum = 0.0;
    for (std::size_t j = 0; j < grid.n_x(); ++j) {
        const double x = grid.x(j);
        sum += field(k, j) * x * x * x;
    }
    return grid.dx() * sum;
}

Signal output_signal(const NdfField& field) {
    std::vector<double> y(field.grid.n_t());
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = third_moment(field, k);
    return Signal(field.grid.ts(), std::move(y));
}

double concentration_from_moment(double y, const SensorModel& sensor) {
    sensor.validate();
    return sensor.rho_s * sensor.k_v / sensor.m_e * y;
}

double moment_from_concentration(double c_s, const SensorModel& sensor) {
    sensor.validate();
    return c_s * sensor.m_e / (sensor.rho_s * sensor.k_v);
}

}  // namespace kklcsd
