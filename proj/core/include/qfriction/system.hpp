#pragma once

#include <vector>
#include <string>

namespace qfriction {

/**
 * A light particle moving through a heavy ideal gas.
 *
 * All quantities are SI. The theory assumes the gas particles are much
 * heavier than the tracked particle; construction records a warning (it
 * does not fail) when gas_particle_mass / particle_mass < 10.
 */
struct ParticleGasSystem {
    double particle_mass;       ///< tracked particle mass [kg], > 0
    double gas_particle_mass;   ///< gas particle mass [kg], > 0
    double cross_section;       ///< collision cross-sectional area [m^2], > 0
    double number_density;      ///< gas number density [m^-3], > 0
    double temperature;         ///< temperature [K], >= 0

    /// Validates and constructs. Throws std::domain_error on invalid input.
    ParticleGasSystem(double particle_mass, double gas_particle_mass,
                      double cross_section, double number_density,
                      double temperature);

    /// Non-fatal validity notes collected at construction.
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    std::vector<std::string> warnings_;
};

/**
 * Derived length/time/temperature scales of a ParticleGasSystem.
 *
 * Identities that hold exactly by construction:
 *   mean_free_path = 1 / (cross_section * number_density)
 *   characteristic_temperature * mean_free_path^2 = hbar^2 / (4 m kB)
 *   thermal_wavelength(T = characteristic_temperature) = mean_free_path
 */
struct SystemScales {
    double mean_free_path;             ///< lambda [m]
    double thermal_wavelength;         ///< hbar / (2 sqrt(m kB T)) [m]; +inf at T = 0
    double characteristic_temperature; ///< hbar^2 / (4 m lambda^2 kB) [K]
    double collision_time;             ///< zero-temperature collision time m lambda^2 / hbar [s]
    double residual_friction;          ///< zero-temperature friction hbar / lambda^2 [kg/s]
};

/// Reduced (dimensionless) coordinates used by the friction and
/// dispersion curves.
struct DimensionlessState {
    double reduced_temperature;  ///< T / T_lambda
    double reduced_time;         ///< b t / m
    double reduced_dispersion;   ///< sigma_x^2 b / hbar
    double dispersion_ratio;     ///< sigma_x^2 / lambda^2
};

/// Dimensional point recovered from a DimensionlessState.
struct DimensionalPoint {
    double temperature;  ///< [K]
    double time;         ///< [s]
    double dispersion;   ///< sigma_x^2 [m^2]
};

/// Mean free path lambda = 1/(sigma n). No sqrt(2) correction: the
/// tracked particle moves much faster than the gas.
double mean_free_path(double cross_section, double number_density);

/// Thermal de Broglie wavelength hbar / (2 sqrt(m kB T)).
/// Returns +infinity at T = 0 (the zero-temperature sentinel).
double thermal_wavelength(double particle_mass, double temperature);

/// Temperature at which the thermal wavelength equals the mean free
/// path: hbar^2 / (4 m lambda^2 kB). Marks the quantum/classical
/// transition of the friction coefficient.
double characteristic_temperature(double particle_mass, double mean_free_path);

/// Zero-temperature collision time m lambda^2 / hbar, i.e. the mean
/// free path divided by its de Broglie velocity hbar/(lambda m).
double residual_collision_time(double particle_mass, double mean_free_path);

/// Computes every derived scale of a system in one pass.
SystemScales derive_scales(const ParticleGasSystem& system);

/**
 * Maps a dimensional (t, sigma_x^2) sample to reduced coordinates.
 *
 * The reduction needs a friction coefficient; pass the value from
 * classical_friction, residual_friction or friction_form_a depending on
 * the regime under study. A non-positive or non-finite friction throws
 * std::invalid_argument naming those options.
 */
DimensionlessState to_dimensionless(const ParticleGasSystem& system,
                                    const SystemScales& scales,
                                    double time, double dispersion,
                                    double friction);

/// Inverse of to_dimensionless. Recovers (T, t, sigma_x^2) from the
/// reduced coordinates; exact algebra, round-trips to 1e-12 relative.
DimensionalPoint from_dimensionless(const SystemScales& scales,
                                    const DimensionlessState& state,
                                    double friction);

}  // namespace qfriction
