#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace snowflake {

template <typename Real>
using Complex = std::complex<Real>;

// The point at infinity of the Riemann sphere. Mobius and slit maps treat it
// explicitly; it never enters ordinary complex arithmetic.
template <typename Real>
constexpr Complex<Real> point_at_infinity() {
    constexpr Real inf = std::numeric_limits<Real>::infinity();
    return Complex<Real>(inf, inf);
}

template <typename Real>
bool is_infinite(const Complex<Real>& z) {
    return std::isinf(z.real()) || std::isinf(z.imag());
}

template <typename Real>
bool is_finite(const Complex<Real>& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace snowflake
