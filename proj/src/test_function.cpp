#include "snowflake/test_function.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace snowflake {

double TestFunction::operator()(double x) const {
    if (form == TestFunctionForm::rational) {
        double num = 0;
        for (int i = 5; i >= 0; --i) num = num * x + num_coeffs[i];
        return num / (den_coeffs[0] + den_coeffs[1] * x);
    }
    // Piecewise linear with constant extension beyond the outermost knots.
    if (x <= knot_r.front()) return knot_v.front();
    if (x >= knot_r.back()) return knot_v.back();
    const auto it = std::upper_bound(knot_r.begin(), knot_r.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - knot_r.begin());
    const double r0 = knot_r[j - 1], r1 = knot_r[j];
    const double w = (x - r0) / (r1 - r0);
    return knot_v[j - 1] * (1 - w) + knot_v[j] * w;
}

TestFunction TestFunction::constant(double value, double R) {
    if (!(value > 0)) throw std::invalid_argument("TestFunction::constant: value must be > 0");
    TestFunction f;
    f.form = TestFunctionForm::piecewise_linear;
    f.knot_r = {1.0, R};
    f.knot_v = {value, value};
    f.domain_hi = R;
    return f;
}

TestFunction TestFunction::piecewise(std::vector<double> r, std::vector<double> v, double R) {
    if (r.size() != v.size() || r.size() < 2)
        throw std::invalid_argument("TestFunction::piecewise: need matching knots, >= 2");
    TestFunction f;
    f.form = TestFunctionForm::piecewise_linear;
    f.knot_r = std::move(r);
    f.knot_v = std::move(v);
    f.domain_hi = R;
    return f;
}

TestFunction TestFunction::rational(const std::array<double, 6>& num,
                                    const std::array<double, 2>& den, double R) {
    TestFunction f;
    f.form = TestFunctionForm::rational;
    f.num_coeffs = num;
    f.den_coeffs = den;
    f.domain_hi = R;
    return f;
}

TestFunction test_function_t1() {
    return TestFunction::rational(
        {7.1479, 8.9280, -0.07765, 1.733e-3, -2.0598e-5, 9.5353e-8},
        {2.7154, 13.2845}, 76.2);
}

MonotonicityReport scan_test_function(const TestFunction& nu, int points) {
    MonotonicityReport rep;
    const double lo = nu.domain_lo, hi = nu.domain_hi;
    double prev = nu(lo);
    if (!(prev > 0)) {
        rep.positive = false;
        rep.violation_r = lo;
    }
    for (int i = 1; i < points; ++i) {
        const double x = lo + (hi - lo) * i / (points - 1);
        const double val = nu(x);
        if (!(val > 0) && rep.positive) {
            rep.positive = false;
            rep.violation_r = x;
        }
        if (val > prev) rep.nonincreasing = false;
        if (val < prev) rep.nondecreasing = false;
        prev = val;
    }
    return rep;
}

TestFunction fit_test_function(const EigenPair<double>& eig, const DiscretizationGrid& grid,
                               TestFunctionForm form) {
    const int N = grid.N;
    if (eig.vector.size() != N)
        throw std::invalid_argument("fit_test_function: eigenvector size does not match grid");
    if (eig.vector.minCoeff() < 0)
        throw std::invalid_argument("fit_test_function: eigenvector must be nonnegative");

    if (form == TestFunctionForm::piecewise_linear) {
        std::vector<double> r(grid.r.begin(), grid.r.end());
        std::vector<double> v(eig.vector.data(), eig.vector.data() + N);
        return TestFunction::piecewise(std::move(r), std::move(v), grid.R);
    }

    // Homogeneous least squares for num(r) - v den(r) = 0 over the 8
    // coefficients; the smallest right singular vector is the minimizer on
    // the unit sphere.
    Eigen::MatrixXd A(N, 8);
    for (int n = 0; n < N; ++n) {
        const double r = grid.r[n];
        const double v = eig.vector[n];
        const double w = 1.0 / std::max(v, 1e-8);  // relative-error weighting
        double pw = 1.0;
        for (int j = 0; j < 6; ++j) {
            A(n, j) = w * pw;
            pw *= r;
        }
        A(n, 6) = -w * v;
        A(n, 7) = -w * v * r;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinV);
    Eigen::VectorXd u = svd.matrixV().col(7);

    TestFunction f;
    f.form = TestFunctionForm::rational;
    for (int j = 0; j < 6; ++j) f.num_coeffs[j] = u[j];
    f.den_coeffs = {u[6], u[7]};
    f.domain_hi = grid.R;

    // Fix the overall sign, then scale the denominator pair so the fitted
    // mean over the grid matches the eigenvector mean.
    if (f.den_coeffs[0] + f.den_coeffs[1] < 0) {
        for (auto& c : f.num_coeffs) c = -c;
        for (auto& c : f.den_coeffs) c = -c;
    }
    double fit_mean = 0;
    for (int n = 0; n < N; ++n) fit_mean += f(grid.r[n]);
    fit_mean /= N;
    const double target_mean = eig.vector.mean();
    if (fit_mean > 0 && target_mean > 0) {
        const double alpha = fit_mean / target_mean;
        f.den_coeffs[0] *= alpha;
        f.den_coeffs[1] *= alpha;
    }

    const MonotonicityReport rep = scan_test_function(f);
    if (!rep.positive)
        throw FitError("fit_test_function: fitted function nonpositive at r = " +
                           std::to_string(rep.violation_r),
                       rep.violation_r);
    if (!rep.nonincreasing && !rep.nondecreasing)
        throw FitError("fit_test_function: fitted function is not monotone", 0.0);
    return f;
}

}  // namespace snowflake
