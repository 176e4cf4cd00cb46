#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

#include "snowflake/complex_util.hpp"
#include "snowflake/slit_map.hpp"

namespace snowflake {

// Truncated complex Taylor series: coeff[j] is the coefficient of (z - z0)^j.
// Arithmetic on jets propagates derivatives exactly (up to rounding), which
// gives high-order derivatives of composite analytic expressions without
// finite differencing.
template <typename Real, std::size_t Order>
struct TaylorJet {
    std::array<Complex<Real>, Order + 1> coeff{};

    static TaylorJet constant(const Complex<Real>& c) {
        TaylorJet j;
        j.coeff[0] = c;
        return j;
    }
    // The identity function z expanded at z0.
    static TaylorJet variable(const Complex<Real>& z0) {
        TaylorJet j;
        j.coeff[0] = z0;
        j.coeff[1] = Complex<Real>(1, 0);
        return j;
    }

    Complex<Real> value() const { return coeff[0]; }
    // n-th derivative: n! * coeff[n].
    Complex<Real> derivative(std::size_t n) const {
        Real fact = 1;
        for (std::size_t i = 2; i <= n; ++i) fact *= Real(i);
        return coeff[n] * fact;
    }

    friend TaylorJet operator+(const TaylorJet& a, const TaylorJet& b) {
        TaylorJet r;
        for (std::size_t i = 0; i <= Order; ++i) r.coeff[i] = a.coeff[i] + b.coeff[i];
        return r;
    }
    friend TaylorJet operator-(const TaylorJet& a, const TaylorJet& b) {
        TaylorJet r;
        for (std::size_t i = 0; i <= Order; ++i) r.coeff[i] = a.coeff[i] - b.coeff[i];
        return r;
    }
    friend TaylorJet operator+(const TaylorJet& a, const Complex<Real>& c) {
        TaylorJet r = a;
        r.coeff[0] += c;
        return r;
    }
    friend TaylorJet operator-(const Complex<Real>& c, const TaylorJet& a) {
        TaylorJet r;
        for (std::size_t i = 0; i <= Order; ++i) r.coeff[i] = -a.coeff[i];
        r.coeff[0] += c;
        return r;
    }
    friend TaylorJet operator*(const TaylorJet& a, const Complex<Real>& c) {
        TaylorJet r;
        for (std::size_t i = 0; i <= Order; ++i) r.coeff[i] = a.coeff[i] * c;
        return r;
    }
    friend TaylorJet operator*(const TaylorJet& a, const TaylorJet& b) {
        TaylorJet r;
        for (std::size_t i = 0; i <= Order; ++i)
            for (std::size_t j = 0; i + j <= Order; ++j) r.coeff[i + j] += a.coeff[i] * b.coeff[j];
        return r;
    }
    // Series division: solves r * b = a term by term.
    friend TaylorJet operator/(const TaylorJet& a, const TaylorJet& b) {
        if (b.coeff[0] == Complex<Real>(0, 0))
            throw std::domain_error("TaylorJet: division by series with zero constant term");
        TaylorJet r;
        for (std::size_t n = 0; n <= Order; ++n) {
            Complex<Real> acc = a.coeff[n];
            for (std::size_t i = 0; i < n; ++i) acc -= r.coeff[i] * b.coeff[n - i];
            r.coeff[n] = acc / b.coeff[0];
        }
        return r;
    }
};

// Principal square root of a series with nonzero constant term:
// b0 = sqrt(a0), b_n = (a_n - sum_{0<i<n} b_i b_{n-i}) / (2 b0).
template <typename Real, std::size_t Order>
TaylorJet<Real, Order> sqrt(const TaylorJet<Real, Order>& a) {
    if (a.coeff[0] == Complex<Real>(0, 0))
        throw std::domain_error("TaylorJet: sqrt of series with zero constant term");
    TaylorJet<Real, Order> b;
    b.coeff[0] = std::sqrt(a.coeff[0]);
    for (std::size_t n = 1; n <= Order; ++n) {
        Complex<Real> acc = a.coeff[n];
        for (std::size_t i = 1; i < n; ++i) acc -= b.coeff[i] * b.coeff[n - i];
        b.coeff[n] = acc / (Real(2) * b.coeff[0]);
    }
    return b;
}

// Jet of the slit map at z0: value and derivatives 1..Order of phi.
template <typename Real, std::size_t Order>
TaylorJet<Real, Order> slit_map_jet(const Complex<Real>& z0, const SlitParams<Real>& p) {
    using Jet = TaylorJet<Real, Order>;
    const Complex<Real> one(1, 0);
    const Jet zs = Jet::variable(z0) * Complex<Real>(p.s, 0);
    const Jet u = (zs - Jet::constant(one)) / (zs + one);
    const Jet h = u * u + Complex<Real>(p.c_slit, 0);
    const Jet q = sqrt(h) * Complex<Real>(Real(1) / std::sqrt(1 + p.c), 0);
    return (q + one) / (Jet::constant(one) - q);
}

}  // namespace snowflake
