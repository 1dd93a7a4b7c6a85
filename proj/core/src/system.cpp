#include "qfriction/system.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qfriction/constants.hpp"

namespace qfriction {

namespace {

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << what << " must be positive and finite, got " << value;
        throw std::domain_error(msg.str());
    }
}

}  // namespace

ParticleGasSystem::ParticleGasSystem(double particle_mass_, double gas_particle_mass_,
                                     double cross_section_, double number_density_,
                                     double temperature_)
    : particle_mass(particle_mass_),
      gas_particle_mass(gas_particle_mass_),
      cross_section(cross_section_),
      number_density(number_density_),
      temperature(temperature_) {
    require_positive(particle_mass, "particle mass");
    require_positive(gas_particle_mass, "gas particle mass");
    require_positive(cross_section, "collision cross-section");
    require_positive(number_density, "number density");
    if (temperature < 0.0 || !std::isfinite(temperature)) {
        throw std::domain_error("temperature must be >= 0 K");
    }
    if (gas_particle_mass / particle_mass < 10.0) {
        std::ostringstream msg;
        msg << "gas/particle mass ratio " << gas_particle_mass / particle_mass
            << " is below 10; the theory assumes a much heavier gas";
        warnings_.push_back(msg.str());
    }
}

double mean_free_path(double cross_section, double number_density) {
    require_positive(cross_section, "collision cross-section");
    require_positive(number_density, "number density");
    return 1.0 / (cross_section * number_density);
}

double thermal_wavelength(double particle_mass, double temperature) {
    require_positive(particle_mass, "particle mass");
    if (temperature < 0.0 || !std::isfinite(temperature)) {
        throw std::domain_error("temperature must be >= 0 K");
    }
    if (temperature == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return constants::hbar /
           (2.0 * std::sqrt(particle_mass * constants::k_boltzmann * temperature));
}

double characteristic_temperature(double particle_mass, double mean_free_path) {
    require_positive(particle_mass, "particle mass");
    require_positive(mean_free_path, "mean free path");
    const double h = constants::hbar;
    return h * h /
           (4.0 * particle_mass * mean_free_path * mean_free_path *
            constants::k_boltzmann);
}

double residual_collision_time(double particle_mass, double mean_free_path) {
    require_positive(particle_mass, "particle mass");
    require_positive(mean_free_path, "mean free path");
    return particle_mass * mean_free_path * mean_free_path / constants::hbar;
}

SystemScales derive_scales(const ParticleGasSystem& system) {
    SystemScales scales;
    scales.mean_free_path = mean_free_path(system.cross_section, system.number_density);
    scales.thermal_wavelength = thermal_wavelength(system.particle_mass, system.temperature);
    scales.characteristic_temperature =
        characteristic_temperature(system.particle_mass, scales.mean_free_path);
    scales.collision_time =
        residual_collision_time(system.particle_mass, scales.mean_free_path);
    scales.residual_friction =
        constants::hbar / (scales.mean_free_path * scales.mean_free_path);
    return scales;
}

namespace {

void require_friction(double friction) {
    if (!(friction > 0.0) || !std::isfinite(friction)) {
        throw std::invalid_argument(
            "a friction coefficient is required for the reduced coordinates; "
            "pass the value from classical_friction, residual_friction or "
            "friction_form_a as appropriate for the regime");
    }
}

}  // namespace

DimensionlessState to_dimensionless(const ParticleGasSystem& system,
                                    const SystemScales& scales, double time,
                                    double dispersion, double friction) {
    require_friction(friction);
    if (time < 0.0 || dispersion < 0.0) {
        throw std::domain_error("time and dispersion must be >= 0");
    }
    DimensionlessState state;
    state.reduced_temperature = system.temperature / scales.characteristic_temperature;
    state.reduced_time = friction * time / system.particle_mass;
    state.reduced_dispersion = dispersion * friction / constants::hbar;
    state.dispersion_ratio =
        dispersion / (scales.mean_free_path * scales.mean_free_path);
    return state;
}

DimensionalPoint from_dimensionless(const SystemScales& scales,
                                    const DimensionlessState& state,
                                    double friction) {
    require_friction(friction);
    DimensionalPoint point;
    point.temperature = state.reduced_temperature * scales.characteristic_temperature;
    // reduced_time = b t / m and collision_time = m lambda^2 / hbar refer to
    // different frictions in general; invert through b directly.
    const double particle_mass =
        scales.collision_time * constants::hbar /
        (scales.mean_free_path * scales.mean_free_path);
    point.time = state.reduced_time * particle_mass / friction;
    point.dispersion = state.reduced_dispersion * constants::hbar / friction;
    return point;
}

}  // namespace qfriction
