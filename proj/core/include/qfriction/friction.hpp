#pragma once

namespace qfriction {

/// Which closed-form expression produced a friction value.
///
/// form_a and form_b are the two printed variants of the
/// arbitrary-temperature coefficient. They agree in both limits up to a
/// factor 2 that the underlying order-of-magnitude derivation absorbs:
/// 2 * form_a == form_b exactly, at every temperature.
enum class FrictionForm { classical, residual, form_a, form_b };

struct FrictionResult {
    double friction;   ///< b [kg/s]
    double reduced;    ///< b lambda^2 / hbar
    FrictionForm form;
    double theta;      ///< reduced temperature T / T_lambda used
};

/// Gas-kinetic friction b = sqrt(m kB T)/lambda. Vanishes at T = 0
/// (a classical gas is at rest there); that case returns b = 0 rather
/// than throwing. Reduced value: sqrt(theta)/2.
FrictionResult classical_friction(double particle_mass, double temperature,
                                  double mean_free_path);

/// Residual zero-temperature friction b = hbar/lambda^2 = hbar (sigma n)^2.
/// The corresponding mobility is lambda^2/hbar.
FrictionResult residual_friction(double mean_free_path);

/// Reduced friction b lambda^2 / hbar as a function of the reduced
/// temperature theta = T/T_lambda (second printed form):
///
///   f(theta) = sqrt(theta) / sqrt(1 - ln(1 + theta)/theta)
///
/// Evaluated stably for small theta (series branch below 1e-3).
/// f(0) is the analytic limit sqrt(2); f is strictly increasing and
/// approaches sqrt(theta) at high temperature.
double friction_form_b(double theta);

/// Dimensional arbitrary-temperature friction (first printed form):
///
///   b = sqrt( m kB T / (lambda^2 - lambda_T^2 ln(1 + lambda^2/lambda_T^2)) )
///
/// Matches classical_friction at high temperature; the T = 0 limit is
/// hbar/(sqrt(2) lambda^2) and is returned (tagged form_a) rather than NaN.
/// Reduced value: friction_form_b(theta)/2.
FrictionResult friction_form_a(double particle_mass, double temperature,
                               double mean_free_path);

/// Einstein relation D = kB T / b.
double einstein_diffusion(double temperature, double friction);

/// Gas-kinetic diffusion coefficient D = lambda sqrt(kB T / m).
/// Identical to einstein_diffusion(T, classical_friction(...)).
double classical_diffusion(double particle_mass, double temperature,
                           double mean_free_path);

/// Semiclassical structure of the diffusion correction at reduced
/// temperature theta.
struct DiffusionDeviation {
    /// Exact ratio D/D_cl = sqrt(1 - ln(1 + theta)/theta), from form A.
    double exact_ratio;
    /// Predicted leading relative deficit 1/(4 theta) of the
    /// semiclassical expansion in hbar.
    double series_term;
    /// Comparator from the heavy-particle/light-gas theory: same
    /// magnitude 1/(4 theta) but opposite sign (it increases D).
    double comparator_term;
};

/// Exact-versus-series deviation data for the quantum diffusion
/// correction. The quantum effect always decreases D (exact_ratio < 1).
DiffusionDeviation semiclassical_deviation(double theta);

namespace detail {
/// x - log1p(x), evaluated by its alternating series for small x to
/// avoid cancellation. Shared by the friction and dispersion branches.
double log1p_deficit(double x);
}  // namespace detail

}  // namespace qfriction
