#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "snowflake/complex_util.hpp"
#include "snowflake/mobius.hpp"

namespace snowflake {

// Preimages of 1 under the slit map with parameter l (s = 1 geometry).
// They solve mu1(z)^2 = -c with c = l^2/(4l+4) and form a conjugate pair on
// the unit circle:
//   z = ((1-c) -+ 2i sqrt(c)) / (1+c).
template <typename Real>
std::pair<Complex<Real>, Complex<Real>> singular_points(Real l) {
    if (!(l > 0))
        throw std::domain_error(
            "singular_points: degenerate slit (l = 0), both points collapse to z = 1");
    const Real c = l * l / (4 * l + 4);
    const Real d = 1 + c;
    const Real x = (1 - c) / d;
    const Real y = 2 * std::sqrt(c) / d;
    return {Complex<Real>(x, -y), Complex<Real>(x, y)};
}

// Geometry of one slit building block: a univalent self-map of the exterior
// disc that opens a radial slit of length l starting at the boundary point 1.
// The scaling s >= 1 pre-composes with z -> z*s, pulling the square-root
// singular points z1/s, z2/s strictly inside the unit circle when s > 1.
template <typename Real>
struct SlitParams {
    Real l = 0;       // slit length, >= 0
    Real s = 1;       // safety scaling, >= 1
    Real c = 0;       // normalizer constant l^2/(4l+4)
    Real c_slit = 0;  // constant under the square root; equals c in the standard map
    Complex<Real> z1{1, 0};  // singular preimages of 1 (s = 1 geometry)
    Complex<Real> z2{1, 0};
    Real x = 1;  // z1 = x + i y, z2 = x - i y
    Real y = 0;

    bool degenerate() const { return l == Real(0); }
    bool consistent_constants() const { return c == c_slit; }
};

template <typename Real>
SlitParams<Real> make_slit_params(Real l, Real s = Real(1)) {
    if (!(l >= 0)) throw std::invalid_argument("make_slit_params: slit length must be >= 0");
    if (!(s >= 1)) throw std::invalid_argument("make_slit_params: scaling s must be >= 1");
    SlitParams<Real> p;
    p.l = l;
    p.s = s;
    p.c = l * l / (4 * l + 4);
    p.c_slit = p.c;
    if (l > 0) {
        auto [z1, z2] = singular_points(l);
        p.z1 = z1;
        p.z2 = z2;
        p.x = z1.real();
        p.y = z1.imag();
    }
    return p;
}

// Comparison variant: places k-dependent l^2/(4k+4) under the square root
// while keeping the l-based normalizer. Breaks phi(inf) = inf unless k == l;
// provided for side-by-side experiments only.
template <typename Real>
SlitParams<Real> make_slit_params_printed_variant(Real l, Real s, int k) {
    SlitParams<Real> p = make_slit_params(l, s);
    p.c_slit = l * l / (4 * Real(k) + 4);
    if (p.c_slit > 0) {
        const Real d = 1 + p.c_slit;
        p.x = (1 - p.c_slit) / d;
        p.y = -2 * std::sqrt(p.c_slit) / d;
        p.z1 = Complex<Real>(p.x, p.y);
        p.z2 = std::conj(p.z1);
    }
    return p;
}

// One snowflake experiment: building block, branching factor, exponent.
template <typename Real>
struct SnowflakeParams {
    SlitParams<Real> slit;
    int k = 2;    // branching, >= 2
    Real t = 1;   // integral means exponent
};

template <typename Real>
SnowflakeParams<Real> make_snowflake_params(Real t, int k, Real l, Real s = Real(1)) {
    if (k < 2) throw std::invalid_argument("make_snowflake_params: k must be >= 2");
    return SnowflakeParams<Real>{make_slit_params(l, s), k, t};
}

namespace detail {

// Inner factor shared by the slit map and its derivative:
// u = mu1(z*s), h = u^2 + c_slit, q = sqrt(h)/sqrt(1+c).
template <typename Real>
struct SlitEval {
    Complex<Real> u, h, sqrt_h, q;
};

template <typename Real>
SlitEval<Real> slit_eval(const Complex<Real>& z, const SlitParams<Real>& p) {
    SlitEval<Real> e;
    e.u = mobius_to_halfplane(z * p.s);
    e.h = e.u * e.u + p.c_slit;
    e.sqrt_h = std::sqrt(e.h);  // principal branch; Re h > 0 on the exterior disc
    e.q = e.sqrt_h / std::sqrt(1 + p.c);
    return e;
}

}  // namespace detail

// The basic slit map
//   phi(z) = mu2( sqrt(mu1(z s)^2 + c) / sqrt(1 + c) ),    c = l^2/(4l+4),
// where mu2 = mu1^{-1}. Maps the exterior disc into itself minus a radial
// slit [1, 1+l]; fixes infinity with phi'(inf) = s(1+c).
template <typename Real>
Complex<Real> slit_map(const Complex<Real>& z, const SlitParams<Real>& p) {
    if (is_infinite(z)) return point_at_infinity<Real>();
    const auto e = detail::slit_eval(z, p);
    if (e.q == Complex<Real>(1, 0)) return point_at_infinity<Real>();
    return mobius_to_disc(e.q);
}

// phi'(z) by the chain rule through mu1, the square root, and mu2.
// Throws where the derivative blows up (s = 1 and z at a preimage of 1).
template <typename Real>
Complex<Real> slit_map_derivative(const Complex<Real>& z, const SlitParams<Real>& p) {
    if (is_infinite(z)) return Complex<Real>(p.s * (1 + p.c), 0);
    const auto e = detail::slit_eval(z, p);
    if (e.sqrt_h == Complex<Real>(0, 0))
        throw std::domain_error(
            "slit_map_derivative: square-root singularity hit (s = 1 preimage of 1); "
            "use s > 1 to keep singular points off the closed exterior disc");
    const Complex<Real> one_minus_q = Real(1) - e.q;
    const Complex<Real> zs1 = z * p.s + Real(1);
    return Real(4) * p.s * e.u /
           (one_minus_q * one_minus_q * std::sqrt(1 + p.c) * e.sqrt_h * zs1 * zs1);
}

// phi and phi' together; one square root instead of two.
template <typename Real>
std::pair<Complex<Real>, Complex<Real>> slit_map_with_derivative(const Complex<Real>& z,
                                                                 const SlitParams<Real>& p) {
    const auto e = detail::slit_eval(z, p);
    if (e.sqrt_h == Complex<Real>(0, 0))
        throw std::domain_error("slit_map_with_derivative: square-root singularity hit");
    const Complex<Real> one_minus_q = Real(1) - e.q;
    const Complex<Real> zs1 = z * p.s + Real(1);
    const Complex<Real> value = (Real(1) + e.q) / one_minus_q;
    const Complex<Real> deriv = Real(4) * p.s * e.u /
        (one_minus_q * one_minus_q * std::sqrt(1 + p.c) * e.sqrt_h * zs1 * zs1);
    return {value, deriv};
}

// Closed form of |phi'(z)/phi(z)| for s = 1:
//   |z-1| / ( |z| sqrt(|z-z1| |z-z2|) ).
template <typename Real>
Real log_derivative_ratio(const Complex<Real>& z, const SlitParams<Real>& p) {
    if (p.s != Real(1))
        throw std::invalid_argument("log_derivative_ratio: closed form requires s = 1");
    const Real denom = std::abs(z) * std::sqrt(std::abs(z - p.z1) * std::abs(z - p.z2));
    if (denom == 0)
        throw std::domain_error("log_derivative_ratio: singular point");
    return std::abs(z - Real(1)) / denom;
}

// Inverse map psi = phi^{-1}:
//   psi(w) = (1/s) mu2( sqrt((1+c) mu1(w)^2 - c) ).
// Right inverse on the image of the exterior disc; ambiguous on the open slit.
template <typename Real>
Complex<Real> inverse_map(const Complex<Real>& w, const SlitParams<Real>& p) {
    if (is_infinite(w)) return point_at_infinity<Real>();
    const Complex<Real> v = mobius_to_halfplane(w);
    const Complex<Real> h = (1 + p.c) * v * v - p.c_slit;
    if (h.imag() == 0 && h.real() < 0 && w.imag() == 0)
        throw std::domain_error("inverse_map: w lies on the slit, branch ambiguous");
    const Complex<Real> root = std::sqrt(h);
    if (root == Complex<Real>(1, 0)) return point_at_infinity<Real>();
    return mobius_to_disc(root) / p.s;
}

// Residual of the critical-radius equation psi(x)^k = x, evaluated through
// the modulus so it is defined (and negative) also below the slit tip, where
// real x sits on the slit itself and |psi(x)| = 1/s from either side.
template <typename Real>
Real critical_radius_residual(Real x, int k, const SlitParams<Real>& p) {
    const Complex<Real> v = mobius_to_halfplane(Complex<Real>(x, 0));
    const Complex<Real> root = std::sqrt((1 + p.c) * v * v - p.c_slit);
    const Real r = std::abs(mobius_to_disc(root)) / p.s;
    return std::pow(r, Real(k)) - x;
}

// Critical radius R > 1: the unique positive solution of psi(x)^k = x (k-th
// power of the real value). Guarantees the annulus containment D_R inside
// psi^k(D_R); any upper bound works downstream, so the bisection result is
// rounded up to the tolerance boundary.
template <typename Real>
Real critical_radius(int k, const SlitParams<Real>& p, Real tol = Real(1e-9)) {
    if (k < 2) throw std::invalid_argument("critical_radius: k must be >= 2");
    if (!(tol > 0)) throw std::invalid_argument("critical_radius: tol must be > 0");
    if (p.degenerate())
        throw std::domain_error(
            "critical_radius: degenerate block (l = 0) has no solution > 1");

    // psi(x) has modulus 1/s below the slit tip l+1, so the residual starts
    // negative; it grows like (x/(s(1+c)))^k for large x.
    Real lo = 1 + tol;
    if (critical_radius_residual(lo, k, p) > 0)
        throw std::runtime_error("critical_radius: no bracketing interval at x = 1+");
    Real hi = 2 * (p.l + 2);
    while (critical_radius_residual(hi, k, p) <= 0) {
        hi *= 2;
        if (hi > Real(1e8))
            throw std::runtime_error("critical_radius: bracket not found below 1e8");
    }
    while (hi - lo > tol) {
        const Real mid = lo + (hi - lo) / 2;
        if (critical_radius_residual(mid, k, p) <= 0)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

}  // namespace snowflake
