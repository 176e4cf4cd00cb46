#pragma once

#include <array>
#include <string>
#include <vector>

#include "snowflake/quadrature.hpp"
#include "snowflake/test_function.hpp"
#include "snowflake/transfer_operator.hpp"

namespace snowflake {

struct NoCertifiedConstants : std::domain_error {
    using std::domain_error::domain_error;
};

// Hand-certified sup bounds on derivatives of the slit map (orders 1..7) and
// of the rational test function (orders 1..6), plus the resulting bound on
// the sixth angular derivative of the full integrand. Valid only for the
// (s, l) pair they were derived for; they are inputs to the proof, not
// recomputed. Sampling checks in the test suite guard transcription.
struct DerivativeBounds {
    std::array<double, 7> phi_bounds{};
    std::array<double, 6> nu_bounds{};
    double f6_bound = 0;
    double s = 0;
    double l = 0;
};

DerivativeBounds certified_derivative_bounds(double s, double l);

// Constants controlling the radial modulus of continuity of I(r) for k = 13:
// the radial derivative of |phi'/phi| is positive only on an arc
// |theta| <= arc_halfwidth, is at most max_positive_derivative there, and
//   I'(r) < coeff * r^{1/k - 1},
// with coeff >= 2 * arc_halfwidth * max_positive_derivative / (2 pi k).
struct RadialLipschitz {
    double arc_halfwidth = 0;
    double max_positive_derivative = 0;
    double coeff = 0;
};

RadialLipschitz radial_lipschitz(int k);

// I(r): angular mean of nu(|phi(r^{1/k} e^{i theta})|) |phi'/phi| on a fixed
// equispaced grid, compensated summation. Total quadrature error is bounded
// by euler_error_bound for the scheme.
double angular_integral(double r, const QuadratureScheme& q, const TestFunction& nu,
                        const SlitParams<double>& p, int k);

// Lower bound for min P(nu)/nu on [r1, r2] given I values at the endpoints
// computed with quadrature error quad_err, for nonincreasing nu:
//   r1^{1/k} (min{I1, I2} - quad_err - lip (r2-r1) r1^{1/k-1}) / nu(r1).
// The Lipschitz factor r^{1/k-1} is evaluated at r1, where it is largest.
double interval_lower_bound(double I1, double I2, double r1, double r2, const TestFunction& nu,
                            int k, double quad_err, double lip);

struct ProvenanceEntry {
    std::string name;
    double value;
    std::string provenance;
};

struct CertificateT1 {
    SnowflakeParams<double> params;  // t = 1, k = 13, l = 73, s = 1.002
    double R = 76.2;
    double quad_error = 0;       // certified per-point quadrature error
    double lipschitz_coeff = 0;  // radial continuity coefficient
    int n_points = 0;
    int quad_nodes = 0;
    std::vector<double> radii;
    std::vector<double> I_values;
    std::vector<double> interval_minima;
    double min_bound = 0;
    double beta_bound = 0;
    bool passed = false;
    std::vector<int> failed_intervals;  // indices with non-certifying (<= 0) bounds
    std::vector<ProvenanceEntry> constants_provenance;
};

struct CertifyConfig {
    int points = 3000;
    int nodes = 10000;
    unsigned jobs = 0;
};

// The full rigorous pipeline for t = 1: I(r) at equidistributed points on
// [1, R], per-interval certified minima, global minimum and the bound
// beta(1) >= log(min)/log 13. Any non-certifying interval marks the
// certificate FAILED.
CertificateT1 certify(const CertifyConfig& config = {});

}  // namespace snowflake
