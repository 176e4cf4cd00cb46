#pragma once

#include <optional>
#include <string>
#include <vector>

#include "snowflake/quadrature.hpp"
#include "snowflake/test_function.hpp"
#include "snowflake/transfer_operator.hpp"

namespace snowflake {

// Semi-rigorous lower bound from a positive test function:
//   beta(t) >= log( min_r P nu(r)/nu(r) ) / log k.
// The minimum is taken over a dense radial grid; only the t = 1 certificate
// controls the quadrature and continuity errors rigorously.
struct BoundResult {
    SnowflakeParams<double> params;
    double beta_lower = 0;
    double min_ratio = 0;
    double argmin_r = 0;
    std::vector<std::pair<double, double>> per_point;  // (r, P nu / nu)
    double quad_tol = 0;
};

BoundResult bound_from_test_function(const SnowflakeParams<double>& params,
                                     const TestFunction& nu, double R, int n_points,
                                     const QuadratureScheme& quad, unsigned jobs = 0);

struct SweepRecord {
    double t = 0;
    int k = 0;
    double l = 0;
    double log_k_lambda = 0;
    std::optional<double> beta_lower;
    std::string error;    // nonempty if the cell failed
    std::string warning;  // reliability notes (e.g. strongly negative t)
};

struct SweepOptions {
    double s = 1.0;
    int N = 1000;
    int M = 500;
    double eigen_tol = 1e-10;
    int max_iter = 100000;
    unsigned jobs = 0;
    bool beta_for_best = false;  // fit + bound the strongest cell
    QuadratureScheme quad;
    int bound_points = 1000;
};

// Grid search over (k, l): per cell, critical radius -> P_N -> Perron root.
// Cells that fail record their error instead of aborting the sweep. Results
// are sorted by descending log_k lambda.
std::vector<SweepRecord> sweep(double t, const std::vector<int>& ks,
                               const std::vector<double>& ls, const SweepOptions& opts);

}  // namespace snowflake
