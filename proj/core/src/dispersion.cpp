#include "qfriction/dispersion.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qfriction/constants.hpp"
#include "qfriction/friction.hpp"
#include "qfriction/rootfind.hpp"

namespace qfriction {

namespace {

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::domain_error(std::string(what) + " must be positive");
    }
}

void require_time(double time) {
    if (time < 0.0 || !std::isfinite(time)) {
        throw std::domain_error("time must be >= 0");
    }
}

}  // namespace

double einstein_law(double diffusion, double time) {
    if (diffusion < 0.0) {
        throw std::domain_error("diffusion coefficient must be >= 0");
    }
    require_time(time);
    return 2.0 * diffusion * time;
}

double sqrt_dispersion(double particle_mass, double friction, double time) {
    require_positive(particle_mass, "particle mass");
    require_positive(friction, "friction coefficient");
    require_time(time);
    return constants::hbar * std::sqrt(time / (particle_mass * friction));
}

double gas_sqrt_dispersion(double particle_mass, double mean_free_path,
                           double time) {
    require_positive(particle_mass, "particle mass");
    require_positive(mean_free_path, "mean free path");
    require_time(time);
    return mean_free_path * std::sqrt(constants::hbar * time / particle_mass);
}

double effective_temperature(double time) {
    if (!(time > 0.0)) {
        throw std::domain_error(
            "the effective temperature hbar/(4 kB t) diverges at t = 0");
    }
    return constants::hbar / (4.0 * constants::k_boltzmann * time);
}

TimeDependentDiffusion time_dependent_diffusion(double particle_mass,
                                                double mean_free_path,
                                                double time) {
    require_positive(particle_mass, "particle mass");
    require_positive(mean_free_path, "mean free path");
    if (!(time > 0.0)) {
        throw std::domain_error("D(t) = sigma_x^2/(2t) diverges at t = 0");
    }
    TimeDependentDiffusion result;
    result.diffusion = gas_sqrt_dispersion(particle_mass, mean_free_path, time) /
                       (2.0 * time);
    result.effective_temperature = effective_temperature(time);
    return result;
}

double thermal_shape(double w) { return detail::log1p_deficit(w); }

double quantum_gas_shape(double u) {
    if (u < 0.0) {
        throw std::domain_error("the shape function expects u >= 0");
    }
    if (u < 0.5) {
        // u^2 - 2u + 2 ln(1+u) = 2 (u^3/3 - u^4/4 + u^5/5 - ...)
        double power = u * u * u;
        double sum = power / 3.0;
        for (int k = 4; k < 80; ++k) {
            power *= -u;
            const double term = power / k;
            sum += term;
            if (std::abs(term) < 1e-17 * sum) break;
        }
        return 2.0 * sum;
    }
    return u * u - 2.0 * u + 2.0 * std::log1p(u);
}

double solve_thermal_shape(double c) {
    if (c < 0.0 || !std::isfinite(c)) {
        throw std::domain_error("shape target must be >= 0 and finite");
    }
    if (c == 0.0) return 0.0;
    // Both asymptotic inverses over-estimate slightly; take the larger
    // as the bracket seed. shape'(w) = w/(1+w).
    const double hi_guess = std::max(std::sqrt(2.0 * c), c + 1.0);
    return solve_increasing(
        [c](double w) { return thermal_shape(w) - c; },
        [](double w) { return w / (1.0 + w); }, hi_guess, c);
}

double solve_quantum_gas_shape(double c) {
    if (c < 0.0 || !std::isfinite(c)) {
        throw std::domain_error("shape target must be >= 0 and finite");
    }
    if (c == 0.0) return 0.0;
    // shape'(u) = 2u^2/(1+u).
    const double hi_guess = std::max(std::cbrt(1.5 * c), std::sqrt(c) + 2.0);
    return solve_increasing(
        [c](double u) { return quantum_gas_shape(u) - c; },
        [](double u) { return 2.0 * u * u / (1.0 + u); }, hi_guess, c);
}

double solve_thermal_dispersion(double diffusion, double thermal_wavelength,
                                double time) {
    if (diffusion < 0.0) {
        throw std::domain_error("diffusion coefficient must be >= 0");
    }
    require_time(time);
    if (std::isinf(thermal_wavelength)) {
        throw std::domain_error(
            "infinite thermal wavelength (T = 0): the implicit law degenerates "
            "to the sqrt law; use dispersion_at_temperature or sqrt_dispersion");
    }
    require_positive(thermal_wavelength, "thermal wavelength");
    const double l2 = thermal_wavelength * thermal_wavelength;
    const double c = 2.0 * diffusion * time / l2;
    return l2 * solve_thermal_shape(c);
}

double solve_quantum_gas_dispersion(double particle_mass, double mean_free_path,
                                    double time) {
    require_positive(particle_mass, "particle mass");
    require_positive(mean_free_path, "mean free path");
    require_time(time);
    const double l2 = mean_free_path * mean_free_path;
    const double c = constants::hbar * time / (particle_mass * l2);
    return l2 * solve_quantum_gas_shape(c);
}

double cbrt_dispersion(double particle_mass, double mean_free_path, double time) {
    require_positive(particle_mass, "particle mass");
    require_positive(mean_free_path, "mean free path");
    require_time(time);
    return mean_free_path *
           mean_free_path *
           std::cbrt(1.5 * constants::hbar * time /
                     (particle_mass * mean_free_path * mean_free_path));
}

double cbrt_dispersion_friction(double particle_mass, double friction,
                                double time) {
    require_positive(particle_mass, "particle mass");
    require_positive(friction, "friction coefficient");
    require_time(time);
    return constants::hbar *
           std::cbrt(1.5 * time / (particle_mass * friction * friction));
}

double log_dispersion(double particle_mass, double friction, double time) {
    require_positive(particle_mass, "particle mass");
    require_positive(friction, "friction coefficient");
    const double tau = particle_mass / friction;
    if (!(time >= tau)) {
        std::ostringstream msg;
        msg << "the log law is valid for t >= m/b = " << tau << " only, got "
            << time;
        throw std::domain_error(msg.str());
    }
    const double s = friction * time / particle_mass;
    return constants::hbar / friction * (std::log(std::sqrt(s)) + 1.0);
}

double combined_dispersion(double particle_mass, double mean_free_path,
                           double time) {
    require_positive(particle_mass, "particle mass");
    require_positive(mean_free_path, "mean free path");
    const double tau = particle_mass * mean_free_path * mean_free_path /
                       constants::hbar;
    if (!(time >= tau)) {
        std::ostringstream msg;
        msg << "the combined law is valid for t >= m lambda^2/hbar = " << tau
            << " only, got " << time;
        throw std::domain_error(msg.str());
    }
    const double root = std::sqrt(constants::hbar * time / particle_mass);
    return mean_free_path * root +
           mean_free_path * mean_free_path *
               (std::log(root / mean_free_path) + 1.0) / 3.0;
}

double fractional_dispersion(double alpha, double particle_mass, double friction,
                             double time) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::domain_error("the diffusion exponent alpha must lie in [0, 1]");
    }
    require_positive(particle_mass, "particle mass");
    require_positive(friction, "friction coefficient");
    require_time(time);
    const double s = friction * time / particle_mass;
    return constants::hbar / friction * std::pow(s, 2.0 * alpha);
}

double dispersion_at_temperature(const ParticleGasSystem& system,
                                 const SystemScales& scales, double time) {
    require_time(time);
    if (system.temperature == 0.0) {
        // Zero-temperature sentinel: the implicit law degenerates to the
        // sqrt law with the residual friction.
        return sqrt_dispersion(system.particle_mass, scales.residual_friction,
                               time);
    }
    const FrictionResult b = friction_form_a(
        system.particle_mass, system.temperature, scales.mean_free_path);
    const double diffusion = einstein_diffusion(system.temperature, b.friction);
    return solve_thermal_dispersion(diffusion, scales.thermal_wavelength, time);
}

double DispersionLaw::operator()(double time) const {
    switch (regime) {
        case DispersionRegime::einstein:
            return einstein_law(diffusion, time);
        case DispersionRegime::sqrt_law:
            return sqrt_dispersion(particle_mass, friction, time);
        case DispersionRegime::gas_sqrt_law:
            return gas_sqrt_dispersion(particle_mass, mean_free_path, time);
        case DispersionRegime::thermal:
            return solve_thermal_dispersion(diffusion, thermal_wavelength, time);
        case DispersionRegime::quantum_gas:
            return solve_quantum_gas_dispersion(particle_mass, mean_free_path,
                                                time);
        case DispersionRegime::cbrt_law:
            return cbrt_dispersion(particle_mass, mean_free_path, time);
        case DispersionRegime::log_law:
            return log_dispersion(particle_mass, friction, time);
        case DispersionRegime::combined:
            return combined_dispersion(particle_mass, mean_free_path, time);
        case DispersionRegime::fractional:
            return fractional_dispersion(alpha, particle_mass, friction, time);
    }
    throw std::invalid_argument("unknown dispersion regime");
}

}  // namespace qfriction
