#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <limits>
#include <random>

#include "qfriction/constants.hpp"
#include "qfriction/dispersion.hpp"
#include "qfriction/friction.hpp"
#include "qfriction/system.hpp"

using namespace qfriction;

namespace {

// Independent bisection oracle used to freeze implicit-law roots.
template <typename F>
double bisect(F f, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

constexpr double kHbar = constants::hbar;

}  // namespace

TEST_CASE("einstein law") {
    CHECK(einstein_law(1.0, 0.0) == 0.0);
    CHECK(einstein_law(1.0, 3.0) == doctest::Approx(6.0));
    // slope is 2D by finite difference
    const double D = 0.37;
    const double t = 2.1, h = 1e-6;
    const double slope = (einstein_law(D, t + h) - einstein_law(D, t - h)) / (2 * h);
    CHECK(slope == doctest::Approx(2.0 * D).epsilon(1e-9));
}

TEST_CASE("sqrt dispersion") {
    // reduced: y = sqrt(s); here via b chosen so hbar/b = 1, m/b = 1
    const double b = kHbar;
    CHECK(sqrt_dispersion(b, b, 4.0) == doctest::Approx(2.0).epsilon(1e-12));
    // collision-time initial condition sigma^2(m/b) = hbar/b
    const double m = 3.3e-27, friction = 2.2e-15;
    CHECK(sqrt_dispersion(m, friction, m / friction) / (kHbar / friction) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // matches the fractional law at alpha = 1/4
    CHECK(sqrt_dispersion(m, friction, 5e-12) /
              fractional_dispersion(0.25, m, friction, 5e-12) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gas form of the sqrt law") {
    const double m = 1.6735e-27, lambda = 3e-10;
    const double b = residual_friction(lambda).friction;
    for (double t : {1e-14, 2.3e-12, 7e-10}) {
        CHECK(gas_sqrt_dispersion(m, lambda, t) / sqrt_dispersion(m, b, t) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    // at the collision time the dispersion is lambda^2 (collisional hypothesis)
    const double tau = residual_collision_time(m, lambda);
    CHECK(gas_sqrt_dispersion(m, lambda, tau) / (lambda * lambda) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // sqrt(t) scaling
    CHECK(gas_sqrt_dispersion(m, lambda, 4e-12) /
              gas_sqrt_dispersion(m, lambda, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("time dependent diffusion and effective temperature") {
    const double m = 1.6735e-27, lambda = 3e-10;
    const double t = 5.5e-12;
    const auto d = time_dependent_diffusion(m, lambda, t);
    CHECK(d.diffusion / (gas_sqrt_dispersion(m, lambda, t) / (2.0 * t)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // T_eff(tau) = T_lambda
    const double tau = residual_collision_time(m, lambda);
    CHECK(effective_temperature(tau) / characteristic_temperature(m, lambda) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // D(t) equals the classical coefficient at the effective temperature
    CHECK(d.diffusion / classical_diffusion(m, d.effective_temperature, lambda) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(time_dependent_diffusion(m, lambda, 0.0), std::domain_error);
    CHECK_THROWS_AS(effective_temperature(0.0), std::domain_error);
}

TEST_CASE("implicit thermal law") {
    // t = 0 root is 0
    CHECK(solve_thermal_dispersion(1.0, 1.0, 0.0) == 0.0);

    // frozen oracle: lambda_T = 1, 2Dt = 0.5 -> root of s - ln(1+s) = 0.5
    const double root = solve_thermal_dispersion(0.25, 1.0, 1.0);
    CHECK(root == doctest::Approx(1.3576766739459).epsilon(1e-10));
    const double oracle =
        bisect([](double s) { return s - std::log1p(s) - 0.5; }, 0.0, 10.0);
    CHECK(root == doctest::Approx(oracle).epsilon(1e-10));

    // short-time limit: within 1% of 2 lambda_T sqrt(D t) at 2Dt/l^2 = 1e-4
    const double lam_T = 0.7;
    const double l2 = lam_T * lam_T;
    {
        const double D = 1.3e-5, t = 1e-4 * l2 / (2.0 * D);
        const double s = solve_thermal_dispersion(D, lam_T, t);
        CHECK(s / (2.0 * lam_T * std::sqrt(D * t)) ==
              doctest::Approx(1.0).epsilon(1e-2));
    }
    // long-time limit: within 0.2% of 2Dt at 2Dt/l^2 = 1e4
    {
        const double D = 0.9, t = 1e4 * l2 / (2.0 * D);
        const double s = solve_thermal_dispersion(D, lam_T, t);
        CHECK(s / (2.0 * D * t) == doctest::Approx(1.0).epsilon(2e-3));
    }

    CHECK_THROWS_AS(solve_thermal_dispersion(
                        1.0, std::numeric_limits<double>::infinity(), 1.0),
                    std::domain_error);
}

TEST_CASE("implicit thermal law residual contract") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> c_exp(-8.0, 8.0);
    std::uniform_real_distribution<double> l_exp(-6.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const double lam_T = std::pow(10.0, l_exp(rng));
        const double l2 = lam_T * lam_T;
        const double c = std::pow(10.0, c_exp(rng));  // 2Dt / lambda_T^2
        const double t = 1.0;
        const double D = c * l2 / 2.0;
        const double s = solve_thermal_dispersion(D, lam_T, t);
        const double residual = s - l2 * std::log1p(s / l2) - 2.0 * D * t;
        CHECK(std::abs(residual) <= 1e-12 * std::max(s, 2.0 * D * t));
    }
}

TEST_CASE("quantum gas implicit law") {
    const double m = 1.6735e-27, lambda = 3e-10;
    const double l2 = lambda * lambda;
    CHECK(solve_quantum_gas_dispersion(m, lambda, 0.0) == 0.0);

    // forward-evaluated point: h(1) = 2 ln 2 - 1
    const double c1 = 2.0 * std::log(2.0) - 1.0;
    CHECK(quantum_gas_shape(1.0) == doctest::Approx(c1).epsilon(1e-14));
    const double t1 = c1 * m * l2 / kHbar;
    CHECK(solve_quantum_gas_dispersion(m, lambda, t1) / l2 ==
          doctest::Approx(1.0).epsilon(1e-12));

    // large time: u within 0.5% of sqrt(s') at s' = 1e6, joining the gas law
    const double t6 = 1e6 * m * l2 / kHbar;
    CHECK(solve_quantum_gas_dispersion(m, lambda, t6) / (l2 * 1000.0) ==
          doctest::Approx(1.0).epsilon(5e-3));
    // frozen oracle for the same root
    CHECK(solve_quantum_gas_dispersion(m, lambda, t6) / l2 ==
          doctest::Approx(1000.9935902326).epsilon(1e-10));

    // residual contract on random instances
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> c_exp(-9.0, 9.0);
    for (int i = 0; i < 1000; ++i) {
        const double c = std::pow(10.0, c_exp(rng));
        const double u = solve_quantum_gas_shape(c);
        const double residual = quantum_gas_shape(u) - c;
        CHECK(std::abs(residual) <= 1e-12 * std::max(u, c));
    }
}

TEST_CASE("cube root law") {
    // reduced lambda = 1, hbar/m = 1: 3t/2 = 1 -> sigma^2 = 1
    const double m = kHbar;  // so hbar/m = 1
    CHECK(cbrt_dispersion(m, 1.0, 2.0 / 3.0) == doctest::Approx(1.0).epsilon(1e-12));

    // both printed forms agree exactly under b = hbar/lambda^2
    const double mass = 1.6735e-27, lambda = 3e-10;
    const double b = residual_friction(lambda).friction;
    for (double t : {1e-16, 3e-14, 5e-13}) {
        CHECK(cbrt_dispersion(mass, lambda, t) /
                  cbrt_dispersion_friction(mass, b, t) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }

    // agreement with the implicit law within 2% at s' = 1e-6 (one-sided:
    // the cube root law bounds it from above)
    const double l2 = lambda * lambda;
    const double t_small = 1e-6 * mass * l2 / kHbar;
    const double exact = solve_quantum_gas_dispersion(mass, lambda, t_small);
    const double cbrt = cbrt_dispersion(mass, lambda, t_small);
    CHECK(cbrt / exact == doctest::Approx(1.0).epsilon(2e-2));
    CHECK(cbrt <= exact);  // h(u) < (2/3) u^3, so the cube root law sits below

    // fractional law with 2 alpha = 1/3 up to the cbrt(3/2) prefactor
    const double t = 4.4e-14;
    CHECK(cbrt_dispersion_friction(mass, b, t) /
              (std::cbrt(1.5) * fractional_dispersion(1.0 / 6.0, mass, b, t)) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("log law") {
    const double m = 2e-27, b = 1.5e-15;
    const double tau = m / b;
    // value at the validity edge is hbar/b
    CHECK(log_dispersion(m, b, tau) / (kHbar / b) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // reduced s = e^2 -> y = 2
    const double e2 = std::exp(2.0);
    CHECK(log_dispersion(m, b, e2 * tau) / (2.0 * kHbar / b) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // derivative: b d sigma^2/dt = hbar/(2t)
    const double t = 7.0 * tau, h = t * 1e-6;
    const double deriv =
        (log_dispersion(m, b, t + h) - log_dispersion(m, b, t - h)) / (2 * h);
    CHECK(b * deriv / (kHbar / (2.0 * t)) == doctest::Approx(1.0).epsilon(1e-8));
    // validity condition
    CHECK_THROWS_AS(log_dispersion(m, b, 0.5 * tau), std::domain_error);
}

TEST_CASE("combined law") {
    const double mass = 1.6735e-27, lambda = 3e-10;
    const double l2 = lambda * lambda;
    const double tau = residual_collision_time(mass, lambda);
    // s' = 1 -> u = 4/3
    CHECK(combined_dispersion(mass, lambda, tau) / l2 ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    // s' = 100 -> 10 + (ln 10 + 1)/3
    CHECK(combined_dispersion(mass, lambda, 100.0 * tau) / l2 ==
          doctest::Approx(10.0 + (std::log(10.0) + 1.0) / 3.0).epsilon(1e-12));
    CHECK(combined_dispersion(mass, lambda, 100.0 * tau) / l2 ==
          doctest::Approx(11.100861697665).epsilon(1e-12));
    CHECK_THROWS_AS(combined_dispersion(mass, lambda, 0.9 * tau),
                    std::domain_error);
}

TEST_CASE("fractional family") {
    const double m = 2e-27, b = 1.5e-15, t = 9e-12;
    // alpha = 1/2: normal diffusion at the universal coefficient hbar/2m
    CHECK(fractional_dispersion(0.5, m, b, t) /
              (2.0 * (kHbar / (2.0 * m)) * t) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // alpha = 0: frozen dispersion hbar/b
    CHECK(fractional_dispersion(0.0, m, b, t) / (kHbar / b) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(fractional_dispersion(-0.1, m, b, t), std::domain_error);
    CHECK_THROWS_AS(fractional_dispersion(1.1, m, b, t), std::domain_error);
}

TEST_CASE("every law is non-decreasing in time") {
    const double m = 1.6735e-27, lambda = 3e-10;
    const double b = residual_friction(lambda).friction;
    const double tau = m / b;
    const ParticleGasSystem system(m, 1e-25, lambda * lambda,
                                   1.0 / (lambda * lambda * lambda), 2.0);
    const SystemScales scales = derive_scales(system);

    auto check_monotone = [](auto f, double t_lo, double t_hi) {
        double prev = -1.0;
        for (int i = 0; i <= 1000; ++i) {
            const double t =
                t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / 1000.0);
            const double value = f(t);
            CHECK(value >= prev * (1.0 - 1e-12));
            prev = value;
        }
    };
    check_monotone([&](double t) { return sqrt_dispersion(m, b, t); }, 1e-16, 1e-8);
    check_monotone([&](double t) { return gas_sqrt_dispersion(m, lambda, t); },
                   1e-16, 1e-8);
    check_monotone(
        [&](double t) { return solve_quantum_gas_dispersion(m, lambda, t); },
        1e-16, 1e-8);
    check_monotone([&](double t) { return log_dispersion(m, b, t); }, tau,
                   1e4 * tau);
    check_monotone([&](double t) { return combined_dispersion(m, lambda, t); },
                   tau, 1e4 * tau);
    check_monotone(
        [&](double t) { return dispersion_at_temperature(system, scales, t); },
        1e-16, 1e-8);
}

TEST_CASE("short-time ordering of the quantum gas laws") {
    const double m = 1.6735e-27, lambda = 3e-10;
    const double l2 = lambda * lambda;
    for (double s_prime : {1e-8, 1e-6, 1e-4, 1e-2, 0.3, 1.0}) {
        const double t = s_prime * m * l2 / kHbar;
        const double cbrt = cbrt_dispersion(m, lambda, t);
        const double implicit = solve_quantum_gas_dispersion(m, lambda, t);
        const double gas_asymptote = gas_sqrt_dispersion(m, lambda, t);
        // provable ordering: h(u) < (2/3) u^3 puts the implicit root above
        // its cube-root asymptote, and ln(1+x) < x puts it above sqrt(s')
        CHECK(implicit >= cbrt * (1.0 - 1e-12));
        CHECK(cbrt >= gas_asymptote * (1.0 - 1e-12));
    }
    // long-time convergence to the gas law
    const double t_long = 1e8 * m * l2 / kHbar;
    CHECK(solve_quantum_gas_dispersion(m, lambda, t_long) /
              gas_sqrt_dispersion(m, lambda, t_long) ==
          doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("implicit-law consistency chain") {
    // lambda_T -> 0 returns the Einstein value 2Dt
    const double D = 0.8, t = 2.0;
    const double tiny = 1e-7;
    CHECK(solve_thermal_dispersion(D, tiny, t) / (2.0 * D * t) ==
          doctest::Approx(1.0).epsilon(1e-9));

    // T = 0 delegates to the sqrt law with the residual friction
    const double m = 1.6735e-27, lambda = 3e-10;
    const ParticleGasSystem cold(m, 1e-25, lambda * lambda,
                                 1.0 / (lambda * lambda * lambda), 0.0);
    const SystemScales scales = derive_scales(cold);
    for (double time : {1e-14, 1e-12, 1e-10}) {
        CHECK(dispersion_at_temperature(cold, scales, time) ==
              sqrt_dispersion(m, scales.residual_friction, time));
    }

    // T -> 0 limit of the finite-temperature path: the sqrt law with the
    // zero-temperature limit hbar/(sqrt(2) lambda^2) of the friction form
    const ParticleGasSystem cool(m, 1e-25, lambda * lambda,
                                 1.0 / (lambda * lambda * lambda), 1e-7);
    const SystemScales cool_scales = derive_scales(cool);
    const double t_probe = 1e-12;
    CHECK(dispersion_at_temperature(cool, cool_scales, t_probe) /
              sqrt_dispersion(m, scales.residual_friction / std::sqrt(2.0),
                              t_probe) ==
          doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("implicit-function derivative identity for the quantum gas law") {
    // d sigma^2/dt from the implicit solution equals the virial rhs
    // hbar lambda^2/(2 m sigma^2) + hbar lambda^4/(2 m sigma^4).
    const double m = 1.6735e-27, lambda = 3e-10;
    const double l2 = lambda * lambda;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u_exp(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double u = std::pow(10.0, u_exp(rng));
        const double sigma2 = u * l2;
        const double implicit_derivative =
            (kHbar / m) * (1.0 + u) / (2.0 * u * u);
        const double rhs = kHbar * l2 / (2.0 * m * sigma2) +
                           kHbar * l2 * l2 / (2.0 * m * sigma2 * sigma2);
        CHECK(implicit_derivative / rhs == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("dispersion law dispatch object") {
    DispersionLaw law;
    law.regime = DispersionRegime::sqrt_law;
    law.particle_mass = 2e-27;
    law.friction = 1.5e-15;
    CHECK(law(4e-12) == sqrt_dispersion(2e-27, 1.5e-15, 4e-12));
    law.regime = DispersionRegime::fractional;
    law.alpha = 0.5;
    CHECK(law(4e-12) == fractional_dispersion(0.5, 2e-27, 1.5e-15, 4e-12));
}
