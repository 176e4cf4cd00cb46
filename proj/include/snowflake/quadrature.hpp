#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace snowflake {

// Bernoulli number B_m (B_1 = -1/2 convention), by the defining recurrence.
// Only small m is ever needed.
inline double bernoulli_number(int m) {
    if (m < 0) throw std::invalid_argument("bernoulli_number: m >= 0");
    std::vector<double> b(m + 1, 0.0);
    for (int n = 0; n <= m; ++n) {
        // sum_{j=0}^{n} C(n+1, j) B_j = 0  for n >= 1, with B_0 = 1.
        if (n == 0) {
            b[0] = 1.0;
            continue;
        }
        double acc = 0.0;
        double binom = 1.0;  // C(n+1, 0)
        for (int j = 0; j < n; ++j) {
            acc += binom * b[j];
            binom = binom * (n + 1 - j) / (j + 1);
        }
        b[n] = -acc / binom;  // binom == C(n+1, n) = n+1
    }
    return b[m];
}

// gamma_m = B_m / m!, the coefficients of the Euler correction terms.
inline double euler_gamma_coefficient(int m) {
    double fact = 1.0;
    for (int i = 2; i <= m; ++i) fact *= i;
    return bernoulli_number(m) / fact;
}

// Angular quadrature configuration shared by the discretized operator, the
// semi-rigorous bound, and the certificate.
struct QuadratureScheme {
    // Fixed-node path (certificate): nodes equally spaced on [0, 2pi).
    int nodes = 10000;
    int euler_order = 3;  // n in the error term gamma_{2n} max|f^(2n)| eps^{2n}

    // Adaptive path (semi-rigorous bounds): trapezoid with node doubling.
    int start_nodes = 512;
    int max_doublings = 16;
    double tol = 1e-7;

    double epsilon() const { return 2.0 * std::numbers::pi / nodes; }
};

// Certified quadrature error for the (1/2pi)-normalized periodic trapezoid
// sum: |gamma_{2n}| max|f^(2n)| eps^{2n}. All Euler correction terms vanish
// for a 2pi-periodic integrand, so this holds for every n at once; the 2pi
// factor of the unnormalized bound is cancelled by the dtheta/2pi measure.
inline double euler_error_bound(const QuadratureScheme& q, double max_f2n) {
    if (!(max_f2n >= 0)) throw std::invalid_argument("euler_error_bound: max_f2n must be >= 0");
    if (q.euler_order < 1) throw std::invalid_argument("euler_error_bound: order must be >= 1");
    const double gamma = euler_gamma_coefficient(2 * q.euler_order);
    return std::abs(gamma) * max_f2n * std::pow(q.epsilon(), 2.0 * q.euler_order);
}

// Mean of f over [0, 2pi) on `nodes` equispaced points with compensated
// summation. For periodic f this is the (1/2pi)-normalized trapezoid rule.
template <typename Fn>
double periodic_mean_kahan(Fn&& f, int nodes) {
    const double step = 2.0 * std::numbers::pi / nodes;
    double sum = 0.0, comp = 0.0;
    for (int m = 0; m < nodes; ++m) {
        const double y = f(m * step) - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum / nodes;
}

struct QuadratureResult {
    double value = 0;
    double est_error = 0;  // magnitude of the last doubling difference
    int nodes = 0;
};

struct QuadratureNonConvergence : std::runtime_error {
    double last_difference;
    int nodes;
    QuadratureNonConvergence(double diff, int n)
        : std::runtime_error("periodic quadrature did not converge after doubling to " +
                             std::to_string(n) + " nodes (last difference " +
                             std::to_string(diff) + ")"),
          last_difference(diff),
          nodes(n) {}
};

// Periodic trapezoid with node doubling until successive values differ by
// less than q.tol. Each doubling reuses the previous sum: the new value is
// the average of the old sum and the midpoint sum.
template <typename Fn>
QuadratureResult adaptive_periodic_mean(Fn&& f, const QuadratureScheme& q) {
    const double two_pi = 2.0 * std::numbers::pi;
    std::int64_t m = q.start_nodes;
    double mean = periodic_mean_kahan(f, static_cast<int>(m));
    double diff = 0;
    for (int d = 0; d < q.max_doublings; ++d) {
        const double step = two_pi / static_cast<double>(m);
        double sum = 0.0, comp = 0.0;
        for (std::int64_t j = 0; j < m; ++j) {
            const double y = f((j + 0.5) * step) - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        const double mid = sum / static_cast<double>(m);
        const double next = 0.5 * (mean + mid);
        diff = std::abs(next - mean);
        mean = next;
        m *= 2;
        if (diff < q.tol) return {mean, diff, static_cast<int>(m)};
    }
    throw QuadratureNonConvergence(diff, static_cast<int>(m));
}

}  // namespace snowflake
