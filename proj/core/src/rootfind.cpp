#include "qfriction/rootfind.hpp"

#include <cmath>
#include <sstream>

#include "qfriction/errors.hpp"

namespace qfriction {

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) {
        std::ostringstream msg;
        msg << "find_root: no sign change on [" << lo << ", " << hi << "], f = ("
            << flo << ", " << fhi << ")";
        throw numeric_error(msg.str());
    }
    const bool increasing = flo < 0.0;
    for (int i = 0; i < 500; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket exhausted in floating point
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == increasing) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= tol * std::max({std::abs(lo), std::abs(hi), 1.0})) break;
    }
    return 0.5 * (lo + hi);
}

double solve_increasing(const std::function<double(double)>& f,
                        const std::function<double(double)>& derivative,
                        double hi_guess, double residual_scale, double rel_tol) {
    double lo = 0.0;
    double hi = hi_guess > 0.0 ? hi_guess : 1.0;
    double fhi = f(hi);
    int growth = 0;
    while (fhi < 0.0) {
        lo = hi;
        hi *= 4.0;
        fhi = f(hi);
        if (++growth > 600 || !std::isfinite(hi)) {
            std::ostringstream msg;
            msg << "solve_increasing: no sign change up to " << hi
                << " (f = " << fhi << ")";
            throw numeric_error(msg.str());
        }
    }
    if (fhi == 0.0) return hi;

    // Coarse bisection to ~1e-3 relative, then Newton polish.
    double x = find_root(f, lo, hi, 1e-3);
    const double tol_f = rel_tol * std::max(residual_scale, 0.0);
    double fx = f(x);
    for (int i = 0; i < 80; ++i) {
        if (std::abs(fx) <= tol_f) return x;
        const double d = derivative(x);
        if (!(d > 0.0) || !std::isfinite(d)) break;
        double next = x - fx / d;
        if (next <= lo || next >= hi) {
            next = 0.5 * (lo + hi);  // fall back into the bracket
        }
        const double fn = f(next);
        if (fn < 0.0) {
            lo = next;
        } else {
            hi = next;
        }
        x = next;
        fx = fn;
    }
    if (std::abs(fx) <= tol_f) return x;
    std::ostringstream msg;
    msg << "solve_increasing: polish stalled at x = " << x << ", residual " << fx
        << " (tolerance " << tol_f << ", bracket [" << lo << ", " << hi << "])";
    throw numeric_error(msg.str());
}

}  // namespace qfriction
