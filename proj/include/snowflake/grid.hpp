#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace snowflake {

// Radial/angular discretization of the annulus [1, R] x [0, 2pi):
//   r_n = 1 + (R-1) n/N  (n = 1..N, so r_1 > 1 and r_N = R),
//   theta_m = 2 pi m / M (m = 0..M-1).
struct DiscretizationGrid {
    int N = 0;
    int M = 0;
    double R = 1;
    std::vector<double> r;      // size N, r[i] = r_{i+1}
    std::vector<double> theta;  // size M

    double spacing() const { return (R - 1) / N; }

    // Index (0-based) of the grid radius nearest to a; exact midpoints go to
    // the lower index. Out-of-range moduli clamp to the end bins.
    int nearest_bin(double a, bool* clamped_low = nullptr, bool* clamped_high = nullptr) const {
        const double u = (a - 1.0) * N / (R - 1.0);  // continuous index, 1-based
        int n = static_cast<int>(std::ceil(u - 0.5));
        if (n < 1) {
            if (clamped_low) *clamped_low = true;
            n = 1;
        } else if (n > N) {
            if (clamped_high) *clamped_high = true;
            n = N;
        }
        return n - 1;
    }
};

inline DiscretizationGrid make_grid(int N, int M, double R) {
    if (N < 2 || M < 2) throw std::invalid_argument("make_grid: N and M must be >= 2");
    if (!(R > 1)) throw std::invalid_argument("make_grid: R must exceed 1");
    DiscretizationGrid g;
    g.N = N;
    g.M = M;
    g.R = R;
    g.r.resize(N);
    for (int n = 1; n <= N; ++n) g.r[n - 1] = 1.0 + (R - 1.0) * n / N;
    g.r[N - 1] = R;
    g.theta.resize(M);
    for (int m = 0; m < M; ++m) g.theta[m] = 2.0 * std::numbers::pi * m / M;
    return g;
}

}  // namespace snowflake
