#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace qfriction {

/// Scalar first-order initial value problem y' = rhs(s, y) on
/// [start, end]. Both virial equations reduce to this shape.
struct OdeProblem {
    std::function<double(double, double)> rhs;
    double start;
    double initial;
    double end;
};

/// One accepted integrator step, with the derivative at the node so
/// cubic Hermite interpolation between nodes is possible.
struct OdeSample {
    double s;      ///< independent variable
    double y;      ///< solution value
    double slope;  ///< rhs(s, y)
};

/**
 * Result of an adaptive integration: the accepted nodes in order, the
 * tolerances that controlled them, and step-count metadata.
 *
 * eval() gives dense output by cubic Hermite interpolation on the
 * containing step; outside the integration span it throws
 * std::domain_error.
 */
class Trajectory {
public:
    std::vector<OdeSample> samples;
    double rel_tol = 0.0;
    double abs_tol = 0.0;
    std::int64_t accepted_steps = 0;
    std::int64_t rejected_steps = 0;
    std::int64_t rhs_evaluations = 0;

    double front_s() const { return samples.front().s; }
    double back_s() const { return samples.back().s; }
    double back_y() const { return samples.back().y; }

    /// Dense output at s, cubic Hermite on the containing step.
    double eval(double s) const;
};

/**
 * Explicit embedded Dormand-Prince 5(4) integration with proportional
 * step control (accept when the mixed error norm is <= 1, next step
 * scaled by 0.9 err^(-1/5), clamped to [0.2, 5]).
 *
 * The right-hand sides integrated here are smooth and non-stiff; local
 * error is controlled at abs_tol + rel_tol * |y|. rel_tol must lie in
 * [1e-12, 1e-3]. Throws numeric_error on step-size underflow.
 */
Trajectory ode_integrate(const OdeProblem& problem, double rel_tol,
                         double abs_tol = 1e-12);

/// Reduced virial equation of the zero-temperature quantum bath:
/// dy/ds = 1/(2y) + 1/(2s). The first term is the quantum-pressure
/// contribution, the second the effective bath temperature.
double virial_rhs(double s, double y);

/// Gas specialization in the variables u = sigma_x^2/lambda^2,
/// s' = hbar t/(m lambda^2): du/ds' = (1 + u)/(2 u^2).
double gas_virial_rhs(double u);

/// Integrates the reduced virial equation from its collision-time
/// initial condition y(1) = 1 out to s_end. This is the numerically
/// exact dispersion curve of a quantum particle in a quantum gas.
Trajectory integrate_virial(double s_end, double rel_tol);

/// Closed-form approximation to the virial solution:
/// y = sqrt(s) + (ln sqrt(s) + 1)/3, valid for s >= 1.
double virial_approximation(double s);

/// Integrates the gas-specialized virial equation du/ds' = (1+u)/(2u^2)
/// starting from u0 > 0 at s'0 chosen on the exact implicit solution
/// (avoiding the s' = 0 singularity of the right-hand side).
Trajectory integrate_gas_virial(double s_prime_end, double rel_tol,
                                double u0 = 1e-4);

}  // namespace qfriction
