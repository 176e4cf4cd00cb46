#include "snowflake/certificate.hpp"

#include <algorithm>
#include <cmath>

#include "snowflake/parallel.hpp"

namespace snowflake {

DerivativeBounds certified_derivative_bounds(double s, double l) {
    if (std::abs(s - 1.002) < 1e-12 && std::abs(l - 73.0) < 1e-12) {
        DerivativeBounds b;
        b.phi_bounds = {55.0, 11800.0, 8.69e6, 1.08e10, 1.90e13, 4.25e16, 1.17e20};
        b.nu_bounds = {0.28, 0.45, 1.12, 3.69, 15.3, 76.2};
        b.f6_bound = 1.65e21;
        b.s = s;
        b.l = l;
        return b;
    }
    throw NoCertifiedConstants("no certified derivative bounds for s = " + std::to_string(s) +
                               ", l = " + std::to_string(l));
}

RadialLipschitz radial_lipschitz(int k) {
    if (k == 13) return {1.48, 0.36, 0.0131};
    throw NoCertifiedConstants("no certified radial continuity constants for k = " +
                               std::to_string(k));
}

double angular_integral(double r, const QuadratureScheme& q, const TestFunction& nu,
                        const SlitParams<double>& p, int k) {
    const double rho = std::pow(r, 1.0 / k);
    return periodic_mean_kahan(
        [&](double theta) {
            const auto [w, dw] = slit_map_with_derivative(std::polar(rho, theta), p);
            const double a = std::abs(w);
            return nu(a) * std::abs(dw) / a;
        },
        q.nodes);
}

double interval_lower_bound(double I1, double I2, double r1, double r2, const TestFunction& nu,
                            int k, double quad_err, double lip) {
    if (!(r1 <= r2)) throw std::invalid_argument("interval_lower_bound: need r1 <= r2");
    const double slack = quad_err + lip * (r2 - r1) * std::pow(r1, 1.0 / k - 1.0);
    return std::pow(r1, 1.0 / k) * (std::min(I1, I2) - slack) / nu(r1);
}

CertificateT1 certify(const CertifyConfig& config) {
    if (config.points < 2 || config.nodes < 2)
        throw std::invalid_argument("certify: points and nodes must be >= 2");

    CertificateT1 cert;
    cert.params = make_snowflake_params(1.0, 13, 73.0, 1.002);
    cert.R = 76.2;
    cert.n_points = config.points;
    cert.quad_nodes = config.nodes;

    QuadratureScheme quad;
    quad.nodes = config.nodes;
    quad.euler_order = 3;

    const DerivativeBounds bounds = certified_derivative_bounds(1.002, 73.0);
    const RadialLipschitz lip = radial_lipschitz(13);

    // Certified per-point quadrature error, plus a rounding allowance that
    // dominates double-precision accumulation error of the compensated sums.
    const double rounding_allowance = 1e-10;
    cert.quad_error = euler_error_bound(quad, bounds.f6_bound) + rounding_allowance;
    cert.lipschitz_coeff = lip.coeff;

    const TestFunction nu = test_function_t1();
    const MonotonicityReport rep = scan_test_function(nu);
    if (!rep.positive || !rep.nonincreasing)
        throw std::logic_error("certify: test function must be positive and nonincreasing");

    cert.radii.resize(config.points);
    cert.I_values.resize(config.points);
    for (int i = 0; i < config.points; ++i)
        cert.radii[i] = 1.0 + (cert.R - 1.0) * i / (config.points - 1);
    cert.radii.back() = cert.R;

    parallel_for(static_cast<std::size_t>(config.points), config.jobs, [&](std::size_t i) {
        cert.I_values[i] = angular_integral(cert.radii[i], quad, nu, cert.params.slit, 13);
    });

    cert.interval_minima.resize(config.points - 1);
    for (int i = 0; i + 1 < config.points; ++i) {
        cert.interval_minima[i] =
            interval_lower_bound(cert.I_values[i], cert.I_values[i + 1], cert.radii[i],
                                 cert.radii[i + 1], nu, 13, cert.quad_error, lip.coeff);
        if (cert.interval_minima[i] <= 0) cert.failed_intervals.push_back(i);
    }
    cert.min_bound =
        *std::min_element(cert.interval_minima.begin(), cert.interval_minima.end());
    cert.beta_bound = std::log(cert.min_bound) / std::log(13.0);
    cert.passed = cert.failed_intervals.empty() && std::isfinite(cert.beta_bound);

    cert.constants_provenance = {
        {"c", cert.params.slit.c, "slit constant l^2/(4l+4) for l = 73, exact rational 5329/296"},
        {"R", cert.R, "critical radius 76.1568 for (k=13, l=73, s=1.002), rounded up"},
        {"gamma_6", 1.0 / 30240, "Euler coefficient B_6/6! = (1/42)/720"},
        {"f6_bound", bounds.f6_bound,
         "hand-certified sup of the 6th angular derivative of nu(|phi|)|phi'/phi| at s=1.002"},
        {"quad_error", cert.quad_error,
         "gamma_6 * f6_bound * (2pi/nodes)^6 for the normalized mean, plus 1e-10 rounding"},
        {"arc_halfwidth", lip.arc_halfwidth,
         "half-width of the arc where the radial derivative of |phi'/phi| can be positive"},
        {"max_positive_derivative", lip.max_positive_derivative,
         "sup of the radial derivative of |phi'/phi| on {1<r<1.4, |theta|<1.48}, attained at 1.4"},
        {"lipschitz_coeff", lip.coeff,
         "I'(r) < coeff * r^{1/k-1}; coeff >= 2*1.48*0.36/(2 pi 13) = 0.013046"},
        {"phi_deriv_bound_1", bounds.phi_bounds[0],
         "sup|phi'| on the closed exterior disc at s = 1.002, from the power series at z1"},
    };
    return cert;
}

}  // namespace snowflake
