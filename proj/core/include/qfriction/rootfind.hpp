#pragma once

#include <functional>

namespace qfriction {

/// Root of a monotone function on a bracketing interval [lo, hi]
/// (f(lo) and f(hi) of opposite sign, else numeric_error). Plain
/// bisection, terminating when the bracket width falls below
/// tol * max(|lo|, |hi|, 1) or |f| underflows.
double find_root(const std::function<double(double)>& f,
                 double lo, double hi, double tol);

/**
 * Root of a strictly increasing f with f(0) <= 0 on [0, inf).
 *
 * Strategy: grow [0, hi] geometrically until the sign changes, bisect to
 * ~1e-3 relative, then Newton-polish using the supplied derivative until
 * |f(x)| <= rel_tol * residual_scale. Throws numeric_error with bracket
 * diagnostics if no sign change is found or the polish stalls.
 */
double solve_increasing(const std::function<double(double)>& f,
                        const std::function<double(double)>& derivative,
                        double hi_guess,
                        double residual_scale,
                        double rel_tol = 1e-12);

}  // namespace qfriction
