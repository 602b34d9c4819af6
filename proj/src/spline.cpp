#include <algorithm>
#include <vector>

#include "eqfit/baselines.hpp"

namespace eqfit {

SplineFit cubic_spline(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f) {
    const Index n = x.size();
    if (n < 4) throw invalid_input("cubic_spline: need n >= 4");
    if (f.size() != n) throw invalid_input("cubic_spline: x and f differ in length");
    for (Index i = 1; i < n; ++i)
        if (!(x(i) > x(i - 1))) throw invalid_input("cubic_spline: knots must be strictly increasing");

    const Eigen::VectorXd h = x.tail(n - 1) - x.head(n - 1);
    Eigen::VectorXcd slope(n - 1);
    for (Index i = 0; i + 1 < n; ++i) slope(i) = (f(i + 1) - f(i)) / h(i);

    // Second derivatives M_1..M_{n-2}; M_0 and M_{n-1} are eliminated with the
    // not-a-knot conditions (third derivative continuous at x_1 and x_{n-2}).
    const Index m = n - 2;
    std::vector<double> lower(static_cast<std::size_t>(m)), diag(static_cast<std::size_t>(m)),
        upper(static_cast<std::size_t>(m));
    std::vector<cplx> rhs(static_cast<std::size_t>(m));
    for (Index r = 0; r < m; ++r) {
        const Index i = r + 1;
        lower[static_cast<std::size_t>(r)] = h(i - 1);
        diag[static_cast<std::size_t>(r)] = 2.0 * (h(i - 1) + h(i));
        upper[static_cast<std::size_t>(r)] = h(i);
        rhs[static_cast<std::size_t>(r)] = 6.0 * (slope(i) - slope(i - 1));
    }
    diag.front() += h(0) * (1.0 + h(0) / h(1));
    upper.front() -= h(0) * h(0) / h(1);
    diag.back() += h(n - 2) * (1.0 + h(n - 2) / h(n - 3));
    lower.back() -= h(n - 2) * h(n - 2) / h(n - 3);

    // Thomas algorithm.
    for (std::size_t r = 1; r < rhs.size(); ++r) {
        const double factor = lower[r] / diag[r - 1];
        diag[r] -= factor * upper[r - 1];
        rhs[r] -= factor * rhs[r - 1];
    }
    Eigen::VectorXcd second(n);
    second(m) = rhs.back() / diag.back();
    for (Index r = m - 2; r >= 0; --r)
        second(r + 1) = (rhs[static_cast<std::size_t>(r)] - upper[static_cast<std::size_t>(r)] * second(r + 2)) /
                        diag[static_cast<std::size_t>(r)];
    second(0) = second(1) * (1.0 + h(0) / h(1)) - second(2) * h(0) / h(1);
    second(n - 1) = second(n - 2) * (1.0 + h(n - 2) / h(n - 3)) - second(n - 3) * h(n - 2) / h(n - 3);

    SplineFit s;
    s.knots = x;
    s.coefficients.resize(n - 1, 4);
    for (Index i = 0; i + 1 < n; ++i) {
        s.coefficients(i, 0) = f(i);
        s.coefficients(i, 1) = slope(i) - h(i) * (2.0 * second(i) + second(i + 1)) / 6.0;
        s.coefficients(i, 2) = second(i) / 2.0;
        s.coefficients(i, 3) = (second(i + 1) - second(i)) / (6.0 * h(i));
    }
    return s;
}

cplx SplineFit::operator()(double x) const {
    const Index pieces = coefficients.rows();
    const double* begin = knots.data();
    auto it = std::upper_bound(begin, begin + knots.size(), x);
    Index i = static_cast<Index>(it - begin) - 1;
    i = std::clamp<Index>(i, 0, pieces - 1);
    const double s = x - knots(i);
    return coefficients(i, 0) + s * (coefficients(i, 1) + s * (coefficients(i, 2) + s * coefficients(i, 3)));
}

} // namespace eqfit
