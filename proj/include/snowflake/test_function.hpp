#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "snowflake/grid.hpp"
#include "snowflake/transfer_operator.hpp"

namespace snowflake {

enum class TestFunctionForm { piecewise_linear, rational };

// A positive radial function on [1, R] used to lower-bound the Perron
// eigenvalue via min P(nu)/nu. Either a piecewise-linear interpolant of an
// eigenvector (constant extension outside the knots) or a degree-(5,1)
// rational function.
class TestFunction {
  public:
    TestFunctionForm form = TestFunctionForm::piecewise_linear;
    std::vector<double> knot_r, knot_v;             // piecewise form
    std::array<double, 6> num_coeffs{};             // rational form, degree 5
    std::array<double, 2> den_coeffs{};             // rational form, degree 1
    double domain_lo = 1.0, domain_hi = 1.0;

    double operator()(double x) const;

    static TestFunction constant(double value, double R);
    static TestFunction piecewise(std::vector<double> r, std::vector<double> v, double R);
    static TestFunction rational(const std::array<double, 6>& num,
                                 const std::array<double, 2>& den, double R);
};

// The fixed rational test function for the t = 1 snowflake (k = 13, l = 73)
// on [1, 76.2]:
//   nu(x) = (7.1479 + 8.9280 x - 0.07765 x^2 + 1.733e-3 x^3
//            - 2.0598e-5 x^4 + 9.5353e-8 x^5) / (2.7154 + 13.2845 x).
TestFunction test_function_t1();

struct MonotonicityReport {
    bool positive = true;
    bool nonincreasing = true;
    bool nondecreasing = true;
    double violation_r = 0;  // first r where positivity fails (if it does)
};

// Dense scan of positivity and monotone direction (default 10^4 points).
MonotonicityReport scan_test_function(const TestFunction& nu, int points = 10000);

struct FitError : std::runtime_error {
    double violating_r;
    FitError(const std::string& what, double r) : std::runtime_error(what), violating_r(r) {}
};

// Turns a positive eigenvector on the grid radii into a test function.
// Piecewise form interpolates the knots directly. Rational form solves the
// linearized least-squares problem num(r) - v * den(r) ~ 0 (rows weighted by
// 1/v for relative error) and rescales the denominator so the fitted mean
// matches the eigenvector mean. Throws FitError if the result is nonpositive
// or not monotone on a dense scan.
TestFunction fit_test_function(const EigenPair<double>& eig, const DiscretizationGrid& grid,
                               TestFunctionForm form);

}  // namespace snowflake
