#include "qfriction/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qfriction/dispersion.hpp"
#include "qfriction/errors.hpp"

namespace qfriction {

double Trajectory::eval(double s) const {
    if (samples.empty()) {
        throw std::domain_error("trajectory is empty");
    }
    const double s0 = samples.front().s;
    const double s1 = samples.back().s;
    if (s < s0 || s > s1) {
        std::ostringstream msg;
        msg << "dense output requested at " << s << " outside [" << s0 << ", "
            << s1 << "]";
        throw std::domain_error(msg.str());
    }
    auto it = std::lower_bound(
        samples.begin(), samples.end(), s,
        [](const OdeSample& a, double value) { return a.s < value; });
    if (it != samples.end() && it->s == s) return it->y;
    const OdeSample& right = *it;
    const OdeSample& left = *(it - 1);
    const double h = right.s - left.s;
    const double t = (s - left.s) / h;
    // Cubic Hermite basis on [0, 1].
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * left.y + (t3 - 2 * t2 + t) * h * left.slope +
           (-2 * t3 + 3 * t2) * right.y + (t3 - t2) * h * right.slope;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Difference between the 5th and the embedded 4th order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

Trajectory ode_integrate(const OdeProblem& problem, double rel_tol,
                         double abs_tol) {
    if (!(rel_tol >= 1e-12 && rel_tol <= 1e-3)) {
        throw std::invalid_argument("rel_tol must lie in [1e-12, 1e-3]");
    }
    if (!(abs_tol > 0.0)) {
        throw std::invalid_argument("abs_tol must be positive");
    }
    if (!(problem.end > problem.start)) {
        throw std::invalid_argument("integration span must be forward");
    }

    Trajectory traj;
    traj.rel_tol = rel_tol;
    traj.abs_tol = abs_tol;

    double s = problem.start;
    double y = problem.initial;
    double f = problem.rhs(s, y);
    traj.rhs_evaluations = 1;
    traj.samples.push_back({s, y, f});

    const double span = problem.end - problem.start;
    double h = std::min(span, 0.01 * (std::abs(y) + abs_tol) /
                                  std::max(std::abs(f), 1e-30));
    h = std::max(h, span * 1e-12);

    const double eps = std::numeric_limits<double>::epsilon();
    while (s < problem.end) {
        // Cap the step at a fraction of the abscissa: the cubic Hermite
        // dense output is one order below the integrator, and for the
        // scale-free right-hand sides integrated here this cap keeps the
        // interpolation error near rel_tol instead of sqrt(rel_tol).
        if (s > 0.0) h = std::min(h, 0.05 * s);
        bool last = false;
        if (s + h >= problem.end) {
            h = problem.end - s;
            last = true;
        }
        if (h <= 16.0 * eps * std::abs(s)) {
            std::ostringstream msg;
            msg << "step size underflow at s = " << s << " (h = " << h << ")";
            throw numeric_error(msg.str());
        }

        const double k1 = f;
        const double k2 = problem.rhs(s + c2 * h, y + h * (a21 * k1));
        const double k3 = problem.rhs(s + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const double k4 =
            problem.rhs(s + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 = problem.rhs(
            s + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 = problem.rhs(
            s + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double y_next =
            y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const double k7 = problem.rhs(s + h, y_next);  // FSAL
        traj.rhs_evaluations += 6;

        const double err_raw =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double scale =
            abs_tol + rel_tol * std::max(std::abs(y), std::abs(y_next));
        const double err = std::abs(err_raw) / scale;

        if (err <= 1.0) {
            s = last ? problem.end : s + h;
            y = y_next;
            f = k7;
            traj.samples.push_back({s, y, f});
            ++traj.accepted_steps;
        } else {
            ++traj.rejected_steps;
        }
        const double factor =
            0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::clamp(factor, 0.2, 5.0);
    }
    return traj;
}

double virial_rhs(double s, double y) { return 0.5 / y + 0.5 / s; }

double gas_virial_rhs(double u) { return (1.0 + u) / (2.0 * u * u); }

Trajectory integrate_virial(double s_end, double rel_tol) {
    if (!(s_end > 1.0)) {
        throw std::invalid_argument("s_end must exceed the collision time s = 1");
    }
    OdeProblem problem;
    problem.rhs = virial_rhs;
    problem.start = 1.0;
    problem.initial = 1.0;
    problem.end = s_end;
    return ode_integrate(problem, rel_tol);
}

double virial_approximation(double s) {
    if (!(s >= 1.0)) {
        throw std::domain_error(
            "the approximation holds from the collision time s = 1 on");
    }
    const double r = std::sqrt(s);
    return r + (std::log(r) + 1.0) / 3.0;
}

Trajectory integrate_gas_virial(double s_prime_end, double rel_tol, double u0) {
    if (!(u0 > 0.0)) {
        throw std::invalid_argument("u0 must be positive (the rhs diverges at 0)");
    }
    // Start on the exact implicit solution so the trajectory inherits
    // machine-precision consistency with it.
    const double s0 = quantum_gas_shape(u0);
    if (!(s_prime_end > s0)) {
        throw std::invalid_argument("s_prime_end must exceed the start point");
    }
    OdeProblem problem;
    problem.rhs = [](double, double u) { return gas_virial_rhs(u); };
    problem.start = s0;
    problem.initial = u0;
    problem.end = s_prime_end;
    return ode_integrate(problem, rel_tol);
}

}  // namespace qfriction
