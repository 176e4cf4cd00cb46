#include "snowflake/spectrum_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "snowflake/parallel.hpp"

namespace snowflake {

BoundResult bound_from_test_function(const SnowflakeParams<double>& params,
                                     const TestFunction& nu, double R, int n_points,
                                     const QuadratureScheme& quad, unsigned jobs) {
    if (n_points < 2) throw std::invalid_argument("bound_from_test_function: n_points >= 2");
    const MonotonicityReport rep = scan_test_function(nu);
    if (!rep.positive)
        throw std::invalid_argument("bound_from_test_function: test function nonpositive at r = " +
                                    std::to_string(rep.violation_r));

    // For s = 1 the kernel is singular on |z| = 1; nudge the first sample off
    // the endpoint so the angular integrand stays bounded.
    const bool offset_endpoint = params.slit.s == 1.0 && !params.slit.degenerate();

    BoundResult out;
    out.params = params;
    out.quad_tol = quad.tol;
    out.per_point.resize(n_points);
    parallel_for(static_cast<std::size_t>(n_points), jobs, [&](std::size_t i) {
        double r = 1.0 + (R - 1.0) * static_cast<double>(i) / (n_points - 1);
        if (i == 0 && offset_endpoint) r = 1.0 + (R - 1.0) * 1e-4;
        const QuadratureResult q = apply_operator(params, nu, r, quad);
        out.per_point[i] = {r, q.value / nu(r)};
    });

    auto min_it = std::min_element(out.per_point.begin(), out.per_point.end(),
                                   [](const auto& a, const auto& b) { return a.second < b.second; });
    out.min_ratio = min_it->second;
    out.argmin_r = min_it->first;
    out.beta_lower = std::log(out.min_ratio) / std::log(static_cast<double>(params.k));
    return out;
}

std::vector<SweepRecord> sweep(double t, const std::vector<int>& ks,
                               const std::vector<double>& ls, const SweepOptions& opts) {
    std::vector<std::pair<int, double>> cells;
    for (int k : ks)
        for (double l : ls) cells.emplace_back(k, l);

    std::vector<SweepRecord> records(cells.size());
    // Cells run sequentially; each cell parallelizes its matrix assembly.
    for (std::size_t i = 0; i < cells.size(); ++i) {
        auto [k, l] = cells[i];
        SweepRecord rec;
        rec.t = t;
        rec.k = k;
        rec.l = l;
        if (t <= -0.8)
            rec.warning = "kernel singularity at z = 1 makes lambda unreliable for t <= -0.8";
        try {
            const SnowflakeParams<double> params = make_snowflake_params(t, k, l, opts.s);
            const double R = critical_radius(k, params.slit);
            const DiscretizationGrid grid = make_grid(opts.N, opts.M, R);
            const TransferMatrix<double> P = build_matrix(params, grid, opts.jobs);
            const EigenPair<double> eig = dominant_eigen(P, opts.eigen_tol, opts.max_iter);
            rec.log_k_lambda = bound_from_lambda(eig.lambda, k);
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
        records[i] = rec;
    }

    std::stable_sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
        if (a.error.empty() != b.error.empty()) return a.error.empty();
        return a.log_k_lambda > b.log_k_lambda;
    });

    if (opts.beta_for_best && !records.empty() && records.front().error.empty()) {
        SweepRecord& best = records.front();
        try {
            const SnowflakeParams<double> params =
                make_snowflake_params(best.t, best.k, best.l, opts.s);
            const double R = critical_radius(best.k, params.slit);
            const DiscretizationGrid grid = make_grid(opts.N, opts.M, R);
            const TransferMatrix<double> P = build_matrix(params, grid, opts.jobs);
            const EigenPair<double> eig = dominant_eigen(P, opts.eigen_tol, opts.max_iter);
            const TestFunction nu = fit_test_function(eig, grid, TestFunctionForm::rational);
            best.beta_lower = bound_from_test_function(params, nu, R, opts.bound_points,
                                                       opts.quad, opts.jobs)
                                  .beta_lower;
        } catch (const std::exception& e) {
            best.warning += std::string(best.warning.empty() ? "" : "; ") +
                            "beta bound failed: " + e.what();
        }
    }
    return records;
}

}  // namespace snowflake
