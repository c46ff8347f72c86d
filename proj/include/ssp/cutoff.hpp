// Smooth cutoff chi (0 below 1/2, 1 above 1, quintic bridge) and the
// complementary unit-interval bump used in region decompositions.
#pragma once

#include "ssp/common.hpp"

namespace ssp {

struct CutoffSpec {
    double lower = 0.5;
    double upper = 1.0;
};

/// chi(xi): 0 for xi < 1/2, 1 for xi > 1, C^2 quintic smoothstep in between.
inline double chi(double xi) {
    if (xi <= 0.5) return 0.0;
    if (xi >= 1.0) return 1.0;
    double t = (xi - 0.5) * 2.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

inline double chi_prime(double xi) {
    if (xi <= 0.5 || xi >= 1.0) return 0.0;
    double t = (xi - 0.5) * 2.0;
    return 2.0 * 30.0 * t * t * (1.0 - t) * (1.0 - t);
}

/// Bump on [-1,1]: 1 for |x| <= 1/2, 0 for |x| >= 1 (complement of chi(|x|)).
inline double bump_low(double x) { return 1.0 - chi(std::abs(x)); }

inline double bump_low_prime(double x) {
    double s = (x >= 0) ? 1.0 : -1.0;
    return -s * chi_prime(std::abs(x));
}

}  // namespace ssp
