#pragma once

#include <cstdint>
#include <vector>

#include "qfriction/constants.hpp"

namespace qfriction {

enum class Scheme { underdamped, overdamped, collisional };
enum class TemperatureMode { constant, effective };

/// Parameters of a Monte Carlo run. Times are in the same unit system
/// as the SimSystem (SI or reduced).
struct SimConfig {
    double time_step = 0.0;   ///< dt; unused by the collisional scheme
    double t_end = 0.0;
    double t_start = 0.0;     ///< quantum-bath runs start at the collision time
    int n_trajectories = 0;   ///< >= 100
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::underdamped;
    TemperatureMode temperature_mode = TemperatureMode::constant;
    int points_per_decade = 32;  ///< logarithmic statistics grid density
    int threads = 1;             ///< degree of parallelism; never affects results
};

/// The few physical parameters the simulators need. Use reduced() for
/// the unit system m = b = kB T = lambda = hbar = 1.
struct SimSystem {
    double particle_mass = 1.0;   ///< m
    double friction = 1.0;        ///< b (underdamped/overdamped schemes)
    double thermal_energy = 1.0;  ///< kB T [J]; >= 0
    double mean_free_path = 1.0;  ///< lambda (collisional scheme)
    double hbar = constants::hbar;

    double relaxation_time() const { return particle_mass / friction; }

    static SimSystem reduced() { return SimSystem{1.0, 1.0, 1.0, 1.0, 1.0}; }
};

/**
 * Ensemble moments on a logarithmic time grid, with standard errors.
 *
 * noise_position_corr[k] is the sample correlation between the position
 * at grid point k-1 and the Wiener increment accumulated over
 * (t[k-1], t[k]]; it must be statistically zero for a valid Langevin
 * force. Empty for the collisional scheme (no Wiener increments there).
 */
struct EnsembleStats {
    std::vector<double> times;
    std::vector<double> mean_x, mean_x_se;
    std::vector<double> mean_v, mean_v_se;
    std::vector<double> sigma_x2, sigma_x2_se;
    std::vector<double> sigma_v2, sigma_v2_se;
    std::vector<double> noise_position_corr, noise_position_corr_se;
    int n_trajectories = 0;
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::underdamped;
    TemperatureMode temperature_mode = TemperatureMode::constant;
};

/// Underdamped Langevin ensemble at constant temperature:
/// v += -(b/m) v dt + sqrt(2 b kB T/m^2 dt) xi;  x += v dt.
/// Starts from x = v = 0. At T = 0 every moment is identically zero.
/// Requires dt <= relaxation_time/20 (config error otherwise).
EnsembleStats simulate_langevin(const SimConfig& config, const SimSystem& system);

/// Overdamped ensemble of a classical particle in a zero-temperature
/// quantum bath: x += sqrt(2 kB T(t)/b dt) xi with the effective
/// temperature kB T(t) = hbar/(4 t). Starts at t_start >= m/b with the
/// collision-time dispersion hbar/b. In constant mode this degenerates
/// to ordinary overdamped diffusion (Einstein slope), starting from 0.
EnsembleStats simulate_quantum_bath(const SimConfig& config, const SimSystem& system);

/// Kinetic ensemble: ballistic free flight, collision events sampled as
/// a Poisson process of rate |v|/lambda, each collision redrawing the
/// velocity from the 1-D Maxwell distribution at T (thermalizing
/// collision model; transport prefactors are O(1) model-dependent).
/// Event-driven, so no time-step parameter is involved. Requires T > 0.
EnsembleStats simulate_collisional(const SimConfig& config, const SimSystem& system);

/// Virial-theorem check b d(sigma_x^2)/dt = 2 m sigma_v^2 on the late
/// part (t > t_min) of a constant-temperature run.
struct VirialReport {
    double max_relative_discrepancy;
    double window_start;  ///< first time actually used
    int points_used;
};

/// Finite-difference check of the virial identity. The derivative is a
/// centered secant spanning +-window grid points, which keeps its
/// statistical noise below the ensemble tolerance. Throws
/// std::invalid_argument when fewer than 5 usable points remain.
VirialReport virial_check(const EnsembleStats& stats, const SimSystem& system,
                          double t_min, int window = 5);

/// Weighted least-squares line fit y = intercept + slope * x. Standard
/// errors come from the weighted normal equations and ignore the
/// (positive) correlation between grid points, so they are lower
/// bounds; acceptance bands account for that.
struct LinearFit {
    double slope, slope_se;
    double intercept, intercept_se;
    int points;
};

/// Fits sigma_x2 against t on grid points with t >= t_min.
LinearFit fit_dispersion_slope(const EnsembleStats& stats, double t_min);

/// Fits sigma_x2 against ln(t) on grid points with t in [t_min, t_max].
LinearFit fit_log_coefficient(const EnsembleStats& stats, double t_min,
                              double t_max);

/// Time-averaged velocity dispersion over grid points with t >= t_min.
double mean_sigma_v2(const EnsembleStats& stats, double t_min);

}  // namespace qfriction
