#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "snowflake/grid.hpp"
#include "snowflake/parallel.hpp"
#include "snowflake/quadrature.hpp"
#include "snowflake/slit_map.hpp"

namespace snowflake {

// Kernel factor |phi'(z)|^t / |phi(z)| together with the image modulus |phi(z)|.
template <typename Real>
std::pair<Real, Real> kernel_weight(const Complex<Real>& z, const SlitParams<Real>& slit,
                                    Real t) {
    const auto [w, dw] = slit_map_with_derivative(z, slit);
    const Real a = std::abs(w);
    const Real da = std::abs(dw);
    const Real num = (t == Real(1)) ? da : std::pow(da, t);
    return {a, num / a};
}

// Discretization P_N of the transfer operator on the radial grid:
//   P[n][n'] = sum_m r_n^{1-t(k-1)/k} |phi'(r_n^{1/k} e^{i theta_m})|^t
//              / ( |phi(r_n^{1/k} e^{i theta_m})| M ),
// summed over the angle samples whose image modulus falls nearest to r_{n'}.
template <typename Scalar = double>
struct TransferMatrix {
    SnowflakeParams<Scalar> params;
    DiscretizationGrid grid;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> entries;
    std::int64_t clamped_low = 0;   // samples below r_1, assigned to bin 1
    std::int64_t clamped_high = 0;  // samples above R, assigned to bin N
    std::int64_t samples = 0;

    double top_clamp_fraction() const {
        return samples == 0 ? 0.0 : static_cast<double>(clamped_high) / samples;
    }
};

template <typename Scalar = double>
TransferMatrix<Scalar> build_matrix(const SnowflakeParams<Scalar>& params,
                                    const DiscretizationGrid& grid, unsigned jobs = 0) {
    const int N = grid.N, M = grid.M, k = params.k;
    const Scalar t = params.t;
    const SlitParams<Scalar>& slit = params.slit;

    if (!slit.degenerate()) {
        const Scalar rc = critical_radius(k, slit);
        if (grid.R < rc - Scalar(1e-6))
            throw std::invalid_argument("build_matrix: grid radius " + std::to_string(grid.R) +
                                        " is below the critical radius " + std::to_string(rc));
    }

    TransferMatrix<Scalar> out;
    out.params = params;
    out.grid = grid;
    out.entries.setZero(N, N);

    std::vector<std::int64_t> low_counts(N, 0), high_counts(N, 0);
    auto fill_row = [&](std::size_t row) {
        const int n = static_cast<int>(row);
        const Scalar rn = grid.r[n];
        const Scalar rho = std::pow(rn, Scalar(1) / k);
        const Scalar pref = std::pow(rn, Scalar(1) - t * (k - 1) / k);
        for (int m = 0; m < M; ++m) {
            const Complex<Scalar> z = std::polar(rho, Scalar(grid.theta[m]));
            const auto [a, wgt] = kernel_weight(z, slit, t);
            bool lo = false, hi = false;
            const int bin = grid.nearest_bin(static_cast<double>(a), &lo, &hi);
            low_counts[n] += lo;
            high_counts[n] += hi;
            out.entries(n, bin) += pref * wgt / M;
        }
    };
    parallel_for(static_cast<std::size_t>(N), jobs, fill_row);

    for (int n = 0; n < N; ++n) {
        out.clamped_low += low_counts[n];
        out.clamped_high += high_counts[n];
    }
    out.samples = static_cast<std::int64_t>(N) * M;
    return out;
}

template <typename Scalar = double>
struct EigenPair {
    Scalar lambda = 0;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vector;  // >= 0, max entry 1
    Scalar residual = 0;                              // ||P v - lambda v||_inf / lambda
    int iterations = 0;
};

struct PowerIterationError : std::runtime_error {
    double residual;
    int iterations;
    PowerIterationError(double res, int iters)
        : std::runtime_error("power iteration: residual " + std::to_string(res) +
                             " above tolerance after " + std::to_string(iters) + " iterations"),
          residual(res),
          iterations(iters) {}
};

// Power iteration from the all-ones vector, normalized by the maximum entry
// each step. The matrix is entrywise nonnegative, so the limit is the Perron
// root and a nonnegative eigenvector.
template <typename Scalar = double>
EigenPair<Scalar> dominant_eigen(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& P,
                                 Scalar tol = Scalar(1e-10), int max_iter = 100000) {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    if (P.rows() != P.cols() || P.rows() == 0)
        throw std::invalid_argument("dominant_eigen: matrix must be square and nonempty");
    if ((P.array() < Scalar(0)).any())
        throw std::invalid_argument("dominant_eigen: matrix must be entrywise nonnegative");

    Vector v = Vector::Ones(P.rows());
    Vector w(P.rows());
    Scalar lambda = 0, residual = 0;
    for (int it = 1; it <= max_iter; ++it) {
        w.noalias() = P * v;
        lambda = w.maxCoeff();
        if (!(lambda > Scalar(0)))
            throw std::domain_error("dominant_eigen: P v vanished (matrix is nilpotent-like)");
        residual = (w - lambda * v).template lpNorm<Eigen::Infinity>() / lambda;
        v = w / lambda;
        if (residual <= tol) return {lambda, v, residual, it};
    }
    throw PowerIterationError(static_cast<double>(residual), max_iter);
}

template <typename Scalar = double>
EigenPair<Scalar> dominant_eigen(const TransferMatrix<Scalar>& m, Scalar tol = Scalar(1e-10),
                                 int max_iter = 100000) {
    return dominant_eigen<Scalar>(m.entries, tol, max_iter);
}

// beta(t) >= log(lambda) / log(k) for the Perron eigenvalue of P.
inline double bound_from_lambda(double lambda, int k) {
    if (!(lambda > 0)) throw std::invalid_argument("bound_from_lambda: lambda must be > 0");
    if (k < 2) throw std::invalid_argument("bound_from_lambda: k must be >= 2");
    return std::log(lambda) / std::log(static_cast<double>(k));
}

// Continuous transfer operator applied to a radial function:
//   P nu(r) = r^{1-(k-1)t/k} * mean_theta[ nu(|phi|) |phi'|^t / |phi| ],
// evaluated by the periodic trapezoid rule with node doubling.
template <typename Nu>
QuadratureResult apply_operator(const SnowflakeParams<double>& params, const Nu& nu, double r,
                                const QuadratureScheme& quad) {
    const int k = params.k;
    const double t = params.t;
    const double rho = std::pow(r, 1.0 / k);
    const double pref = std::pow(r, 1.0 - t * (k - 1) / k);
    auto integrand = [&](double theta) {
        const Complex<double> z = std::polar(rho, theta);
        const auto [a, wgt] = kernel_weight(z, params.slit, t);
        return nu(a) * wgt;
    };
    QuadratureResult res = adaptive_periodic_mean(integrand, quad);
    res.value *= pref;
    res.est_error *= pref;
    return res;
}

}  // namespace snowflake
