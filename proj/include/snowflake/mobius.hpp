#pragma once

#include <stdexcept>

#include "snowflake/complex_util.hpp"

namespace snowflake {

// mu1(z) = (z-1)/(z+1): maps the exterior of the unit disc onto the right
// half plane, the unit circle onto the imaginary axis, infinity to 1.
template <typename Real>
Complex<Real> mobius_to_halfplane(const Complex<Real>& z) {
    if (is_infinite(z)) return Complex<Real>(1, 0);
    if (z == Complex<Real>(-1, 0))
        throw std::domain_error("mobius_to_halfplane: pole at z = -1");
    return (z - Real(1)) / (z + Real(1));
}

// Inverse of mu1: w -> (1+w)/(1-w). Maps the right half plane back onto the
// exterior disc, 0 to 1, infinity to -1, with a pole at w = 1.
template <typename Real>
Complex<Real> mobius_to_disc(const Complex<Real>& w) {
    if (is_infinite(w)) return Complex<Real>(-1, 0);
    if (w == Complex<Real>(1, 0))
        throw std::domain_error("mobius_to_disc: pole at w = 1");
    return (Real(1) + w) / (Real(1) - w);
}

}  // namespace snowflake
