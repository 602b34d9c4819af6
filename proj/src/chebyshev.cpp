#include "eqfit/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace eqfit {

Index standard_chop(const Eigen::Ref<const Eigen::VectorXd>& abs_coeffs, double tol) {
    const Index n = abs_coeffs.size();
    if (tol >= 1.0) return 1;
    if (n < 17) return n;

    // 1-based arrays keep the indexing identical to the published algorithm.
    std::vector<double> env(static_cast<std::size_t>(n) + 1);
    env[static_cast<std::size_t>(n)] = std::abs(abs_coeffs(n - 1));
    for (Index j = n - 1; j >= 1; --j)
        env[static_cast<std::size_t>(j)] = std::max(std::abs(abs_coeffs(j - 1)), env[static_cast<std::size_t>(j) + 1]);
    if (env[1] == 0.0) return 1;
    const double top = env[1];
    for (Index j = 1; j <= n; ++j) env[static_cast<std::size_t>(j)] /= top;

    Index plateau_point = 0;
    Index j2 = 0;
    for (Index j = 2; j <= n; ++j) {
        j2 = static_cast<Index>(std::round(1.25 * static_cast<double>(j) + 5.0));
        if (j2 > n) return n;
        const double e1 = env[static_cast<std::size_t>(j)];
        const double e2 = env[static_cast<std::size_t>(j2)];
        const double r = 3.0 * (1.0 - std::log(e1) / std::log(tol));
        if (e1 == 0.0 || e2 / e1 > r) {
            plateau_point = j - 1;
            break;
        }
    }
    if (plateau_point == 0) return n;
    if (env[static_cast<std::size_t>(plateau_point)] == 0.0) return plateau_point;

    const double floor_level = std::pow(tol, 7.0 / 6.0);
    Index j3 = 0;
    for (Index j = 1; j <= n; ++j)
        if (env[static_cast<std::size_t>(j)] >= floor_level) ++j3;
    if (j3 < j2) {
        j2 = j3 + 1;
        env[static_cast<std::size_t>(j2)] = floor_level;
    }

    const double tilt = (-1.0 / 3.0) * std::log10(tol);
    Index best = 1;
    double best_val = 0.0;
    for (Index j = 1; j <= j2; ++j) {
        const double ramp = j2 > 1 ? tilt * static_cast<double>(j - 1) / static_cast<double>(j2 - 1) : 0.0;
        const double cc = std::log10(env[static_cast<std::size_t>(j)]) + ramp;
        if (j == 1 || cc < best_val) {
            best_val = cc;
            best = j;
        }
    }
    return std::max<Index>(best - 1, 1);
}

} // namespace eqfit
