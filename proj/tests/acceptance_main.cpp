// Acceptance suite: one self-contained check per shipped claim, each
// printing a single [PASS]/[FAIL] line. Run with no arguments for all
// criteria or with a list of criterion numbers. Exit code is the number
// of failed criteria.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qfriction/constants.hpp"
#include "qfriction/dispersion.hpp"
#include "qfriction/figures.hpp"
#include "qfriction/friction.hpp"
#include "qfriction/montecarlo.hpp"
#include "qfriction/ode.hpp"
#include "qfriction/presets.hpp"
#include "qfriction/system.hpp"
#include "qfriction/table.hpp"

using namespace qfriction;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// 1. Reduced friction curve: monotone rise, zero-temperature limit
//    sqrt(2), classical high-temperature limit.
Outcome criterion_1() {
    const CurveTable table = friction_curve_table(1e-3, 1e3, 61);
    const std::size_t col = table.column_index("friction_reduced");
    bool monotone = true;
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        monotone &= table.rows[i][col] > table.rows[i - 1][col];
    }
    const double low = friction_form_b(1e-6);
    const double high_ratio = friction_form_b(1e4) / std::sqrt(1e4);
    const bool low_ok = std::abs(low - std::sqrt(2.0)) <= 1e-3;
    const bool high_ok = std::abs(high_ratio - 1.0) <= 1e-3;
    std::ostringstream detail;
    detail << "monotone=" << (monotone ? "yes" : "no") << ", f(1e-6)=" << fmt(low)
           << " (sqrt2 +- 1e-3), f(1e4)/sqrt(1e4)=" << fmt(high_ratio)
           << " (1 +- 1e-3)";
    return {monotone && low_ok && high_ok, detail.str()};
}

// 2. Implicit thermal-dispersion solver: residual contract on random
//    instances plus the two asymptotic regimes.
Outcome criterion_2() {
    std::mt19937_64 rng(123456);
    std::uniform_real_distribution<double> c_exp(-8.0, 8.0);
    std::uniform_real_distribution<double> l_exp(-9.0, 0.0);
    double worst_residual = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double lam_T = std::pow(10.0, l_exp(rng));
        const double l2 = lam_T * lam_T;
        const double c = std::pow(10.0, c_exp(rng));
        const double D = c * l2 / 2.0;
        const double s = solve_thermal_dispersion(D, lam_T, 1.0);
        const double residual =
            std::abs(s - l2 * std::log1p(s / l2) - 2.0 * D) /
            std::max(s, 2.0 * D);
        worst_residual = std::max(worst_residual, residual);
    }
    const bool residual_ok = worst_residual <= 1e-12;

    double worst_short = 0.0;
    for (double c : {1e-4, 1e-5, 1e-6, 1e-8}) {
        const double lam_T = 0.37;
        const double l2 = lam_T * lam_T;
        const double D = c * l2 / 2.0;
        const double s = solve_thermal_dispersion(D, lam_T, 1.0);
        worst_short = std::max(
            worst_short, std::abs(s / (2.0 * lam_T * std::sqrt(D)) - 1.0));
    }
    const bool short_ok = worst_short <= 1e-2;

    const double lam_T = 2.1;
    const double D_long = 1e4 * lam_T * lam_T / 2.0;
    const double s_long = solve_thermal_dispersion(D_long, lam_T, 1.0);
    const double long_dev = std::abs(s_long / (2.0 * D_long) - 1.0);
    const bool long_ok = long_dev <= 2e-3;

    std::ostringstream detail;
    detail << "max residual=" << fmt(worst_residual)
           << " (<=1e-12), short-time dev=" << fmt(worst_short)
           << " (<=1%), long-time dev=" << fmt(long_dev) << " (<=0.2%)";
    return {residual_ok && short_ok && long_ok, detail.str()};
}

// 3. Virial ODE: exact start, two-sided bounds at every accepted step,
//    self-convergence, single-term limits.
Outcome criterion_3() {
    const double rel_tol = 1e-9;
    const Trajectory traj = integrate_virial(1e4, rel_tol);
    const bool start_ok =
        traj.samples.front().s == 1.0 && traj.samples.front().y == 1.0;
    bool bounds_ok = true;
    for (const auto& sample : traj.samples) {
        const double root = std::sqrt(sample.s);
        bounds_ok &= sample.y >= root * (1.0 - 1e-12);
        bounds_ok &= sample.y <= (root + std::log(root) + 1.0) * (1.0 + 1e-12);
    }
    const double fine = integrate_virial(1e4, rel_tol / 2.0).back_y();
    const double change = std::abs(fine - traj.back_y()) / std::abs(fine);
    const bool convergence_ok = change <= 1e-6;

    OdeProblem quantum_only{[](double, double y) { return 0.5 / y; }, 1.0, 1.0, 1e4};
    const double sqrt_err =
        std::abs(ode_integrate(quantum_only, rel_tol).back_y() / 100.0 - 1.0);
    OdeProblem bath_only{[](double s, double) { return 0.5 / s; }, 1.0, 1.0, 1e4};
    const double log_err =
        std::abs(ode_integrate(bath_only, rel_tol).back_y() /
                     (std::log(100.0) + 1.0) -
                 1.0);
    const bool single_ok = sqrt_err <= rel_tol && log_err <= rel_tol;

    std::ostringstream detail;
    detail << "y(1)=1 " << (start_ok ? "exact" : "BROKEN") << ", bounds "
           << (bounds_ok ? "hold" : "VIOLATED") << " at " << traj.samples.size()
           << " steps, self-convergence " << fmt(change)
           << " (<=1e-6), single-term errors " << fmt(sqrt_err) << "/"
           << fmt(log_err) << " (<= rel_tol)";
    return {start_ok && bounds_ok && convergence_ok && single_ok, detail.str()};
}

// 4. Gas virial ODE versus the implicit solution, with limiting
//    power-law exponents.
Outcome criterion_4() {
    const double s_end = quantum_gas_shape(1e3);
    const Trajectory traj = integrate_gas_virial(s_end, 1e-9);
    const double s_lo = quantum_gas_shape(1e-3);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double s = s_lo * std::pow(s_end / s_lo, i / 200.0);
        const double u_ode = traj.eval(s);
        const double u_implicit = solve_quantum_gas_shape(s);
        worst = std::max(worst, std::abs(u_ode / u_implicit - 1.0));
    }
    const bool pointwise_ok = worst <= 1e-6;

    auto fitted_slope = [&](double u_lo, double u_hi) {
        const double a = quantum_gas_shape(u_lo);
        const double b = quantum_gas_shape(u_hi);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int points = 50;
        for (int i = 0; i < points; ++i) {
            const double s = a * std::pow(b / a, static_cast<double>(i) / (points - 1));
            const double x = std::log(s);
            const double y = std::log(traj.eval(s));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        return (points * sxy - sx * sy) / (points * sxx - sx * sx);
    };
    const double early = fitted_slope(1e-3, 1e-2);
    const double late = fitted_slope(1e2, 1e3);
    const bool early_ok = std::abs(early - 1.0 / 3.0) <= 0.01;
    const bool late_ok = std::abs(late - 0.5) <= 0.01;

    std::ostringstream detail;
    detail << "max ODE/implicit dev=" << fmt(worst)
           << " (<=1e-6), early slope=" << fmt(early)
           << " (1/3 +- 0.01), late slope=" << fmt(late) << " (1/2 +- 0.01)";
    return {pointwise_ok && early_ok && late_ok, detail.str()};
}

// 5. Hydrogen preset anchors.
Outcome criterion_5() {
    const Preset preset = load_preset("hydrogen-in-solid");
    const double tau =
        residual_collision_time(preset.particle_mass, preset.mean_free_path);
    const double T_lambda =
        characteristic_temperature(preset.particle_mass, preset.mean_free_path);
    const double tau_dev = std::abs(tau / 1.43e-12 - 1.0);
    const double T_dev = std::abs(T_lambda / 1.33 - 1.0);
    std::ostringstream detail;
    detail << "tau=" << fmt(tau) << " s (1.43 ps +- 1%: dev " << fmt(tau_dev)
           << "), T_lambda=" << fmt(T_lambda) << " K (1.33 K +- 1%: dev "
           << fmt(T_dev) << ")";
    return {tau_dev <= 0.01 && T_dev <= 0.01, detail.str()};
}

// 6. Constant-temperature Langevin ensemble in reduced units.
Outcome criterion_6() {
    SimConfig config;
    config.scheme = Scheme::underdamped;
    config.time_step = 1.0 / 40.0;
    config.t_end = 50.0;
    config.n_trajectories = 20000;
    config.seed = 20240811;
    config.threads = 4;
    const EnsembleStats stats = simulate_langevin(config, SimSystem::reduced());

    const double v2 = mean_sigma_v2(stats, 10.0);
    const LinearFit fit = fit_dispersion_slope(stats, 10.0);
    const VirialReport virial = virial_check(stats, SimSystem::reduced(), 10.0);

    const bool v2_ok = std::abs(v2 - 1.0) <= 0.05;
    const bool slope_ok = std::abs(fit.slope - 2.0) <= 0.10;
    const bool virial_ok = virial.max_relative_discrepancy <= 0.10;
    std::ostringstream detail;
    detail << "sigma_v^2=" << fmt(v2) << " (1 +- 5%), slope=" << fmt(fit.slope)
           << " (2 +- 5%), virial max dev=" << fmt(virial.max_relative_discrepancy)
           << " (<=10%)";
    return {v2_ok && slope_ok && virial_ok, detail.str()};
}

// 7. Quantum-bath ensemble: log law coefficient and pointwise agreement.
Outcome criterion_7() {
    SimConfig config;
    config.scheme = Scheme::overdamped;
    config.temperature_mode = TemperatureMode::effective;
    config.time_step = 1.0 / 20.0;
    config.t_start = 1.0;
    config.t_end = 100.0;
    config.n_trajectories = 20000;
    config.seed = 7;
    config.threads = 4;
    const EnsembleStats stats =
        simulate_quantum_bath(config, SimSystem::reduced());

    const LinearFit fit = fit_log_coefficient(stats, 2.0, 100.0);
    const bool coeff_ok = std::abs(fit.slope - 0.5) <= 0.05;

    bool pointwise_ok = true;
    double worst_z = 0.0;
    for (std::size_t i = 0; i < stats.times.size(); ++i) {
        const double t = stats.times[i];
        if (t < 2.0) continue;
        const double law = std::log(std::sqrt(t)) + 1.0;
        const double z = std::abs(stats.sigma_x2[i] - law) / stats.sigma_x2_se[i];
        worst_z = std::max(worst_z, z);
        pointwise_ok &= z <= 3.0;
    }
    std::ostringstream detail;
    detail << "ln-t coefficient=" << fmt(fit.slope)
           << " (hbar/2b=0.5 +- 10%), worst pointwise |z|=" << fmt(worst_z)
           << " (<=3 SE on [2,100] tau)";
    return {coeff_ok && pointwise_ok, detail.str()};
}

// 8. Collisional ensemble: gas-kinetic transport within the documented
//    model-dependent O(1) factors.
Outcome criterion_8() {
    SimConfig config;
    config.scheme = Scheme::collisional;
    config.t_end = 50.0;
    config.n_trajectories = 20000;
    config.seed = 4242;
    config.threads = 4;
    const EnsembleStats stats =
        simulate_collisional(config, SimSystem::reduced());
    const LinearFit fit = fit_dispersion_slope(stats, 10.0);
    const double empirical_D = fit.slope / 2.0;  // target lambda sqrt(kBT/m) = 1

    double at_t_col = 0.0, best = 1e300;
    for (std::size_t i = 0; i < stats.times.size(); ++i) {
        if (std::abs(stats.times[i] - 1.0) < best) {
            best = std::abs(stats.times[i] - 1.0);
            at_t_col = stats.sigma_x2[i];
        }
    }
    const bool d_ok = empirical_D >= 1.0 / 3.0 && empirical_D <= 3.0;
    const bool hypothesis_ok = at_t_col >= 1.0 / 3.0 && at_t_col <= 3.0;
    std::ostringstream detail;
    detail << "empirical D=" << fmt(empirical_D)
           << " (within 3x of 1), sigma_x^2(t_col)=" << fmt(at_t_col)
           << " (within 3x of 1)";
    return {d_ok && hypothesis_ok, detail.str()};
}

// 9. Semiclassical diffusion correction: sign, stated bracket, and the
//    opposite-sign comparator.
Outcome criterion_9() {
    bool positive_ok = true;
    bool bracket_ok = true;
    bool comparator_ok = true;
    double worst_excess = 0.0;
    double worst_theta = 0.0;
    for (int i = 0; i <= 120; ++i) {
        const double theta = std::pow(10.0, 1.0 + 3.0 * i / 120.0);  // [10, 1e4]
        const DiffusionDeviation dev = semiclassical_deviation(theta);
        const double deficit = 1.0 - dev.exact_ratio;
        positive_ok &= deficit > 0.0;
        comparator_ok &= dev.comparator_term > 0.0 &&
                         dev.comparator_term == dev.series_term;
        const double lower = 1.0 / (4.0 * theta);
        const double upper = (1.0 + 1e-6) * std::log1p(theta) / (2.0 * theta);
        if (deficit < lower || deficit > upper) {
            bracket_ok = false;
            const double excess = deficit / upper - 1.0;
            if (excess > worst_excess) {
                worst_excess = excess;
                worst_theta = theta;
            }
        }
    }
    std::ostringstream detail;
    detail << "deficit>0 " << (positive_ok ? "holds" : "VIOLATED")
           << ", comparator sign opposite "
           << (comparator_ok ? "holds" : "VIOLATED")
           << ", bracket [1/(4 theta), (1+1e-6) ln(1+theta)/(2 theta)] ";
    if (bracket_ok) {
        detail << "holds";
    } else {
        detail << "VIOLATED (exact deficit exceeds the stated upper edge by "
               << fmt(100.0 * worst_excess) << "% at theta=" << fmt(worst_theta)
               << "; the exact deficit 1-sqrt(1-x) with x=ln(1+theta)/theta "
                  "is strictly above x/2 for every theta in [10,1e4])";
    }
    return {positive_ok && bracket_ok && comparator_ok, detail.str()};
}

// 10. Determinism: ensemble outputs are byte-identical for any thread
//     count at a fixed seed, for every scheme.
Outcome criterion_10() {
    const char* tmpdir = std::getenv("TMPDIR");
    const std::string dir = tmpdir ? tmpdir : "/tmp";

    auto emit = [&](const EnsembleStats& stats, const std::string& path) {
        const CurveTable table = ensemble_table(stats);
        write_table_file(table, path, TableFormat::csv);
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    bool all_ok = true;
    std::ostringstream detail;
    for (const char* scheme : {"langevin", "quantum-bath", "collisional"}) {
        SimConfig config;
        config.n_trajectories = 2000;
        config.seed = 99;
        EnsembleStats one, many;
        if (std::string(scheme) == "langevin") {
            config.scheme = Scheme::underdamped;
            config.time_step = 1.0 / 40.0;
            config.t_end = 10.0;
        } else if (std::string(scheme) == "quantum-bath") {
            config.scheme = Scheme::overdamped;
            config.temperature_mode = TemperatureMode::effective;
            config.time_step = 1.0 / 20.0;
            config.t_start = 1.0;
            config.t_end = 20.0;
        } else {
            config.scheme = Scheme::collisional;
            config.t_end = 20.0;
        }
        auto run = [&](int threads) {
            config.threads = threads;
            if (config.scheme == Scheme::underdamped) {
                return simulate_langevin(config, SimSystem::reduced());
            }
            if (config.scheme == Scheme::overdamped) {
                return simulate_quantum_bath(config, SimSystem::reduced());
            }
            return simulate_collisional(config, SimSystem::reduced());
        };
        const std::string a =
            emit(run(1), dir + "/qfriction_det_a.csv");
        const std::string b =
            emit(run(6), dir + "/qfriction_det_b.csv");
        const bool same = a == b && !a.empty();
        all_ok &= same;
        detail << scheme << "=" << (same ? "identical" : "DIFFERS") << " ";
    }
    std::remove((dir + "/qfriction_det_a.csv").c_str());
    std::remove((dir + "/qfriction_det_b.csv").c_str());
    return {all_ok, detail.str() + "(threads 1 vs 6, byte compare)"};
}

const char* kDescriptions[] = {
    "friction curve monotone with both temperature limits",
    "implicit thermal dispersion solver residual and asymptotics",
    "virial ODE start, bounds, self-convergence, single-term limits",
    "gas virial ODE vs implicit solution and limiting exponents",
    "hydrogen preset collision time and transition temperature",
    "Langevin ensemble equipartition, Einstein slope, virial theorem",
    "quantum-bath ensemble log law",
    "collisional ensemble gas-kinetic transport",
    "semiclassical diffusion correction structure",
    "deterministic ensembles across thread counts",
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        selected.push_back(std::atoi(argv[i]));
    }
    if (selected.empty()) {
        for (int i = 1; i <= 10; ++i) selected.push_back(i);
    }

    const std::function<Outcome()> criteria[] = {
        criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
        criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};

    int failures = 0;
    for (int index : selected) {
        if (index < 1 || index > 10) {
            std::cerr << "unknown criterion " << index << "\n";
            return 2;
        }
        Outcome outcome;
        try {
            outcome = criteria[index - 1]();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion "
                  << index << ": " << kDescriptions[index - 1] << ": "
                  << outcome.detail << "\n";
        if (!outcome.pass) ++failures;
    }
    return failures;
}
