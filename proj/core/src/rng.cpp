#include "qfriction/rng.hpp"

#include <cmath>

namespace qfriction::rng {

double CounterStream::next_normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    // Box-Muller. 1 - u is in (0, 1], so the log is finite.
    const double u1 = 1.0 - next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    cached_normal_ = r * std::sin(angle);
    has_cached_ = true;
    return r * std::cos(angle);
}

}  // namespace qfriction::rng
