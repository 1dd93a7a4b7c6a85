#include "qfriction/figures.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qfriction/friction.hpp"
#include "qfriction/ode.hpp"
#include "qfriction/version.hpp"

namespace qfriction {

namespace {

std::string format_param(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo)) {
        throw std::invalid_argument("grid bounds must satisfy 0 < lo < hi");
    }
    if (points < 2) {
        throw std::invalid_argument("grid needs at least two points");
    }
    std::vector<double> grid(points);
    const double l = std::log10(lo);
    const double h = std::log10(hi);
    for (int i = 0; i < points; ++i) {
        grid[i] = std::pow(10.0, l + (h - l) * i / (points - 1));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

}  // namespace

CurveTable friction_curve_table(double theta_min, double theta_max, int points) {
    const auto grid = log_grid(theta_min, theta_max, points);
    CurveTable table;
    table.add_meta("command", "fig1");
    table.add_meta("library_version", version_string);
    table.add_meta("theta_min", format_param(theta_min));
    table.add_meta("theta_max", format_param(theta_max));
    table.add_meta("points", std::to_string(points));
    table.add_meta("grid", "logarithmic");
    table.add_meta("series",
                   "friction_reduced: reduced coefficient b*lambda^2/hbar, "
                   "second printed form (solid); friction_classical: "
                   "sqrt(theta), its high-temperature asymptote (dotted)");
    table.add_meta("note",
                   "the dimensional classical formula corresponds to "
                   "sqrt(theta)/2 in these units; sqrt(theta) is emitted so "
                   "the curves join at high temperature");
    table.columns = {{"theta", "1"},
                     {"friction_reduced", "1"},
                     {"friction_classical", "1"}};
    for (double theta : grid) {
        table.rows.push_back(
            {theta, friction_form_b(theta), std::sqrt(theta)});
    }
    table.validate();
    return table;
}

CurveTable dispersion_curve_table(double s_max, int points, double rel_tol) {
    if (!(s_max > 1.0)) {
        throw std::invalid_argument("s_max must exceed the collision time s = 1");
    }
    const auto grid = log_grid(1.0, s_max, points);
    const Trajectory trajectory = integrate_virial(s_max, rel_tol);

    CurveTable table;
    table.add_meta("command", "fig2");
    table.add_meta("library_version", version_string);
    table.add_meta("s_max", format_param(s_max));
    table.add_meta("points", std::to_string(points));
    table.add_meta("rel_tol", format_param(rel_tol));
    table.add_meta("grid", "logarithmic");
    table.add_meta("series",
                   "dispersion_sqrt: sqrt(s) (solid); dispersion_virial: "
                   "numerical virial solution (dashed); "
                   "dispersion_superposition: sqrt(s)+ln(sqrt(s))+1 (dotted); "
                   "dispersion_approx: sqrt(s)+(ln(sqrt(s))+1)/3");
    table.columns = {{"s", "1"},
                     {"dispersion_sqrt", "1"},
                     {"dispersion_virial", "1"},
                     {"dispersion_superposition", "1"},
                     {"dispersion_approx", "1"}};
    for (double s : grid) {
        const double root = std::sqrt(s);
        table.rows.push_back({s, root, trajectory.eval(s),
                              root + std::log(root) + 1.0,
                              virial_approximation(s)});
    }
    table.validate();
    return table;
}

CurveTable ensemble_table(const EnsembleStats& stats) {
    CurveTable table;
    table.add_meta("library_version", version_string);
    table.add_meta("n_trajectories", std::to_string(stats.n_trajectories));
    table.add_meta("seed", std::to_string(stats.seed));
    const bool has_corr = !stats.noise_position_corr.empty();
    table.columns = {{"t", "s"},
                     {"mean_x", "m"},
                     {"mean_x_se", "m"},
                     {"mean_v", "m/s"},
                     {"mean_v_se", "m/s"},
                     {"sigma_x2", "m^2"},
                     {"sigma_x2_se", "m^2"},
                     {"sigma_v2", "m^2/s^2"},
                     {"sigma_v2_se", "m^2/s^2"}};
    if (has_corr) {
        table.columns.push_back({"noise_position_corr", "1"});
        table.columns.push_back({"noise_position_corr_se", "1"});
    }
    for (std::size_t i = 0; i < stats.times.size(); ++i) {
        std::vector<double> row = {stats.times[i],
                                   stats.mean_x[i], stats.mean_x_se[i],
                                   stats.mean_v[i], stats.mean_v_se[i],
                                   stats.sigma_x2[i], stats.sigma_x2_se[i],
                                   stats.sigma_v2[i], stats.sigma_v2_se[i]};
        if (has_corr) {
            row.push_back(stats.noise_position_corr[i]);
            row.push_back(stats.noise_position_corr_se[i]);
        }
        table.rows.push_back(std::move(row));
    }
    table.validate();
    return table;
}

}  // namespace qfriction
