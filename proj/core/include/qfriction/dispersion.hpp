#pragma once

#include "qfriction/system.hpp"

namespace qfriction {

/// Which dispersion law produced a value. Tags name the growth shape or
/// the regime the law belongs to.
enum class DispersionRegime {
    einstein,       ///< sigma_x^2 = 2 D t
    sqrt_law,       ///< hbar sqrt(t/(m b)): quantum particle, classical bath, T = 0
    gas_sqrt_law,   ///< lambda sqrt(hbar t/m): sqrt_law with the residual friction
    thermal,        ///< implicit arbitrary-temperature law
    quantum_gas,    ///< implicit quantum-particle/quantum-gas law
    cbrt_law,       ///< short-time t^(1/3) limit of quantum_gas
    log_law,        ///< (hbar/b)(ln sqrt(bt/m) + 1): classical particle, quantum bath
    combined,       ///< gas_sqrt_law plus one third of the log term
    fractional      ///< (hbar/b)(bt/m)^(2 alpha)
};

/// A dispersion law bound to its parameter set; evaluates sigma_x^2(t).
/// Convenience wrapper used by the sweep/compute front end; the free
/// functions below are the primitive operations.
struct DispersionLaw {
    DispersionRegime regime;
    double particle_mass = 0.0;
    double friction = 0.0;
    double mean_free_path = 0.0;
    double diffusion = 0.0;
    double thermal_wavelength = 0.0;
    double alpha = 0.0;

    double operator()(double time) const;
};

/// Classical diffusive growth sigma_x^2 = 2 D t.
double einstein_law(double diffusion, double time);

/// Zero-temperature sub-diffusion sigma_x^2 = hbar sqrt(t/(m b)).
/// In reduced coordinates y = sqrt(s); the collision-time value is
/// sigma_x^2(m/b) = hbar/b.
double sqrt_dispersion(double particle_mass, double friction, double time);

/// Gas form of the sqrt law, sigma_x^2 = lambda sqrt(hbar t/m);
/// identical to sqrt_dispersion with b = hbar/lambda^2.
double gas_sqrt_dispersion(double particle_mass, double mean_free_path,
                           double time);

/// Effective quantum temperature of a zero-temperature bath,
/// T(t) = hbar/(4 kB t). Diverges at t = 0 (domain error).
double effective_temperature(double time);

struct TimeDependentDiffusion {
    double diffusion;              ///< D(t) = sigma_x^2/(2t) [m^2/s]
    double effective_temperature;  ///< T(t) = hbar/(4 kB t) [K]
};

/// Instantaneous diffusion coefficient of the gas sqrt law and the
/// matching effective temperature. D(t) equals the classical
/// gas-kinetic coefficient evaluated at T(t), exactly.
TimeDependentDiffusion time_dependent_diffusion(double particle_mass,
                                                double mean_free_path,
                                                double time);

/// w - ln(1 + w): the shape function of the arbitrary-temperature
/// implicit law, series-evaluated near zero. Strictly increasing.
double thermal_shape(double w);

/// u^2 - 2u + 2 ln(1 + u): the shape function of the
/// quantum-particle/quantum-gas implicit law. Strictly increasing.
double quantum_gas_shape(double u);

/// Root w >= 0 of thermal_shape(w) = c, residual <= 1e-12 * max(w, c).
double solve_thermal_shape(double c);

/// Root u >= 0 of quantum_gas_shape(u) = c, same residual contract.
double solve_quantum_gas_shape(double c);

/**
 * Arbitrary-temperature dispersion: the unique root sigma_x^2 >= 0 of
 *
 *   sigma_x^2 - lambda_T^2 ln(1 + sigma_x^2/lambda_T^2) = 2 D t.
 *
 * Requires a finite thermal wavelength; at T = 0 (infinite wavelength)
 * the law degenerates to the sqrt law, which needs (m, b) instead —
 * use dispersion_at_temperature for the temperature-aware dispatch.
 */
double solve_thermal_dispersion(double diffusion, double thermal_wavelength,
                                double time);

/**
 * Quantum-particle/quantum-gas dispersion: the root of
 *
 *   sigma_x^4/lambda^2 - 2 sigma_x^2 + 2 lambda^2 ln(1 + sigma_x^2/lambda^2)
 *     = hbar t / m.
 *
 * Grows as t^(1/3) at short times and joins the gas sqrt law at long
 * times.
 */
double solve_quantum_gas_dispersion(double particle_mass,
                                    double mean_free_path, double time);

/// Short-time limit of the quantum-gas law:
/// sigma_x^2 = lambda (3 lambda hbar t/(2 m))^(1/3).
double cbrt_dispersion(double particle_mass, double mean_free_path,
                       double time);

/// Same cube-root law written with the friction coefficient:
/// sigma_x^2 = hbar (3 t/(2 m b^2))^(1/3). Agrees exactly with
/// cbrt_dispersion under b = hbar/lambda^2.
double cbrt_dispersion_friction(double particle_mass, double friction,
                                double time);

/// Classical-particle/quantum-bath log law
/// sigma_x^2 = (hbar/b)(ln sqrt(bt/m) + 1), valid for t >= m/b only;
/// earlier times throw std::domain_error naming the validity bound.
double log_dispersion(double particle_mass, double friction, double time);

/// Quantum-gas superposition: gas sqrt law plus one third of the log
/// term, sigma_x^2 = lambda sqrt(hbar t/m)
///                   + lambda^2 (ln(sqrt(hbar t/m)/lambda) + 1)/3.
/// Valid for t >= m lambda^2/hbar.
double combined_dispersion(double particle_mass, double mean_free_path,
                           double time);

/// General fractional family sigma_x^2 = (hbar/b)(bt/m)^(2 alpha) with
/// alpha in [0, 1]. alpha = 1/4 is the sqrt law, alpha = 1/2 normal
/// diffusion at the universal quantum coefficient hbar/2m.
double fractional_dispersion(double alpha, double particle_mass,
                             double friction, double time);

/// Temperature-aware dispatch: at T > 0 computes b by the requested
/// arbitrary-temperature form, D = kB T / b, and solves the implicit
/// thermal law; at T = 0 (infinite thermal wavelength) delegates to the
/// sqrt law with the residual friction.
double dispersion_at_temperature(const ParticleGasSystem& system,
                                 const SystemScales& scales, double time);

}  // namespace qfriction
