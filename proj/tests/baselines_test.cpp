#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "eqfit/baselines.hpp"
#include "eqfit/rational.hpp"
#include "eqfit/testlib.hpp"

using namespace eqfit;

namespace {

constexpr double pi = std::numbers::pi;

template <typename F>
Eigen::VectorXcd on_grid(const Eigen::VectorXd& x, F f) {
    Eigen::VectorXcd out(x.size());
    for (Index i = 0; i < x.size(); ++i) out(i) = f(x(i));
    return out;
}

template <typename Fit, typename F>
double dense_error(const Fit& fit, F f, Index m = 1000) {
    const Eigen::VectorXd xs = equispaced_grid(m);
    double err = 0.0;
    for (Index i = 0; i < m; ++i) err = std::max(err, std::abs(fit(xs(i)) - cplx(f(xs(i)))));
    return err;
}

double binom(Index n, Index k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (Index i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

} // namespace

TEST(PolyLs, ChebyshevBasisMember) {
    const Eigen::VectorXd x = equispaced_grid(20);
    const auto fit = poly_ls_cheb(x, on_grid(x, [](double t) { return 2 * t * t - 1; }));
    EXPECT_EQ(fit.poly_degree, 9);
    ASSERT_EQ(fit.size(), 10);
    for (Index k = 0; k < 10; ++k) EXPECT_LE(std::abs(fit.coefficients(k) - (k == 2 ? 1.0 : 0.0)), 1e-12);
    EXPECT_TRUE(fit.real_output);
}

TEST(PolyLs, DegreeRule) {
    const Eigen::VectorXd x = equispaced_grid(21);
    const Eigen::VectorXcd f = Eigen::VectorXcd::Ones(21);
    // ceil(21/2) - 1 = 10, ceil(21/3) - 1 = 6
    EXPECT_EQ(poly_ls_cheb(x, f).poly_degree, 10);
    EXPECT_EQ(poly_ls_cheb(x, f, 3.0).poly_degree, 6);
    EXPECT_EQ(poly_ls_monomial(x, f).poly_degree, 10);
    EXPECT_THROW(poly_ls_cheb(x, f, 1.0), invalid_input);
    EXPECT_THROW(poly_ls_cheb(equispaced_grid(2).head(1), Eigen::VectorXcd::Ones(1)), invalid_input);
}

TEST(PolyLs, ConstantAndLinearData) {
    const Eigen::VectorXd x = equispaced_grid(10);
    const auto c = poly_ls_cheb(x, Eigen::VectorXcd::Constant(10, 4.0));
    EXPECT_LE(std::abs(c.coefficients(0) - 4.0), 1e-13);
    EXPECT_LE(c.coefficients.tail(c.size() - 1).cwiseAbs().maxCoeff(), 1e-13);

    const auto m = poly_ls_monomial(x, Eigen::VectorXcd::Constant(10, 4.0));
    EXPECT_LE(std::abs(m.coefficients(0) - 4.0), 1e-13);
    EXPECT_LE(m.coefficients.tail(m.size() - 1).cwiseAbs().maxCoeff(), 1e-12);

    const auto lin = poly_ls_monomial(x, x.cast<cplx>());
    EXPECT_LE(dense_error(lin, [](double t) { return t; }), 1e-12);
}

TEST(FourierExt, BasisMember) {
    auto f = [](double t) { return std::cos(pi * t / 2); };
    // coefficients are unique only while the extension frame is well conditioned (small K)
    const Eigen::VectorXd x = equispaced_grid(20);
    const auto fit = fourier_ext(x, on_grid(x, f));
    EXPECT_EQ(fit.half_width, 2.0);
    // 2K+1 <= 10 and odd: K = 4
    EXPECT_EQ(fit.fourier_modes, 4);
    const Index K = fit.fourier_modes;
    for (Index k = -K; k <= K; ++k) {
        const double expected = std::abs(k) == 1 ? 0.5 : 0.0;
        EXPECT_LE(std::abs(fit.coefficients(k + K) - expected), 1e-12) << "k=" << k;
    }
    // with a redundant frame the fit itself stays exact
    const Eigen::VectorXd y = equispaced_grid(40);
    const auto wide = fourier_ext(y, on_grid(y, f));
    EXPECT_EQ(wide.fourier_modes, 9);
    EXPECT_LE(dense_error(wide, f), 1e-12);
}

TEST(FourierExt, ConstantDataAndErrors) {
    const Eigen::VectorXd x = equispaced_grid(12);
    const auto fit = fourier_ext(x, Eigen::VectorXcd::Constant(12, 2.0));
    const Index K = fit.fourier_modes;
    for (Index k = -K; k <= K; ++k) EXPECT_LE(std::abs(fit.coefficients(k + K) - (k == 0 ? 2.0 : 0.0)), 1e-12);
    EXPECT_THROW(fourier_ext(x, Eigen::VectorXcd::Ones(12), 1.0), invalid_input);
    EXPECT_THROW(fourier_ext(equispaced_grid(2).head(1), Eigen::VectorXcd::Ones(1)), invalid_input);
}

TEST(FourierExtVa, ArnoldiColumnsAreOrthonormal) {
    const Eigen::VectorXd x = equispaced_grid(60);
    const auto fit = fourier_ext_va(x, sample_equispaced(TestFunctionId::amber, 60));
    const Eigen::MatrixXcd q = arnoldi_basis(fit, x);
    ASSERT_EQ(q.cols(), 2 * fit.fourier_modes + 1);
    const Index k = q.cols();
    EXPECT_LE((q.adjoint() * q - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FourierExtVa, BasisMemberMatchesRawLeastSquares) {
    const Eigen::VectorXd x = equispaced_grid(16);
    auto f = on_grid(x, [](double t) { return std::exp(cplx(0.0, pi * t / 2)); });
    const auto va = fourier_ext_va(x, f);
    double grid_residual = 0.0;
    for (Index i = 0; i < 16; ++i) grid_residual = std::max(grid_residual, std::abs(va(x(i)) - f(i)));
    EXPECT_LT(grid_residual, 1e-12);

    // the raw-exponential fit spans the same space; both agree off the grid
    const auto raw = fourier_ext(x, f);
    for (double t : {-0.95, -0.3, 0.11, 0.77}) EXPECT_LE(std::abs(va(t) - raw(t)), 1e-11);
}

TEST(FourierPlusPoly, PeriodicAndLinearData) {
    auto f = [](double t) { return std::sin(pi * t); };
    const Eigen::VectorXd x = equispaced_grid(20);
    const auto per = fourier_plus_poly(x, on_grid(x, f));
    // p = round(sqrt(20)) = 4, 10 columns in all
    EXPECT_EQ(per.poly_degree, 4);
    EXPECT_EQ(per.fourier_modes, 2);
    EXPECT_EQ(per.size(), 10);
    EXPECT_LE(per.coefficients.tail(per.poly_degree + 1).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE(std::abs(per.coefficients(per.fourier_modes + 1) - cplx(0.0, -0.5)), 1e-10);
    EXPECT_LE(std::abs(per.coefficients(per.fourier_modes - 1) - cplx(0.0, 0.5)), 1e-10);
    EXPECT_LE(dense_error(per, f), 1e-10);

    const Eigen::VectorXd y = equispaced_grid(50);
    const auto wide = fourier_plus_poly(y, on_grid(y, f));
    EXPECT_EQ(wide.poly_degree, 7);
    EXPECT_LE(dense_error(wide, f), 1e-10);

    const auto lin = fourier_plus_poly(y, y.cast<cplx>());
    double grid_residual = 0.0;
    for (Index i = 0; i < 50; ++i) grid_residual = std::max(grid_residual, std::abs(lin(y(i)) - y(i)));
    EXPECT_LT(grid_residual, 1e-10);
}

TEST(CubicSpline, ReproducesCubicsAndIsC2) {
    const Eigen::VectorXd x = equispaced_grid(9);
    auto cubic = [](double t) { return 1.0 - 2.0 * t + 0.5 * t * t + 3.0 * t * t * t; };
    const auto s = cubic_spline(x, on_grid(x, cubic));
    EXPECT_LE(dense_error(s, cubic), 1e-12);

    const auto lin = cubic_spline(x, on_grid(x, [](double t) { return 3.0 * t - 1.0; }));
    EXPECT_LE(dense_error(lin, [](double t) { return 3.0 * t - 1.0; }), 1e-13);

    // generic data: interpolation and C2 continuity at interior knots
    const Eigen::VectorXd y = equispaced_grid(15);
    const Eigen::VectorXcd f = sample_equispaced(TestFunctionId::fD, 15);
    const auto g = cubic_spline(y, f);
    const double scale = f.cwiseAbs().maxCoeff();
    for (Index i = 0; i < 15; ++i) EXPECT_LE(std::abs(g(y(i)) - f(i)), 1e-12 * scale);
    for (Index i = 0; i + 1 < g.coefficients.rows(); ++i) {
        const double h = g.knots(i + 1) - g.knots(i);
        const auto c = g.coefficients.row(i);
        const auto n = g.coefficients.row(i + 1);
        const cplx value = c(0) + c(1) * h + c(2) * h * h + c(3) * h * h * h;
        const cplx slope = c(1) + 2.0 * c(2) * h + 3.0 * c(3) * h * h;
        const cplx curv = 2.0 * c(2) + 6.0 * c(3) * h;
        EXPECT_LE(std::abs(value - n(0)), 1e-10 * scale);
        EXPECT_LE(std::abs(slope - n(1)), 1e-10 * std::max(1.0, std::abs(n(1))));
        EXPECT_LE(std::abs(curv - 2.0 * n(2)), 1e-10 * std::max(1.0, std::abs(n(2))));
    }
    // not-a-knot: third derivative continuous across the second and penultimate knots
    const Index last = g.coefficients.rows() - 1;
    EXPECT_LE(std::abs(g.coefficients(0, 3) - g.coefficients(1, 3)), 1e-9 * std::abs(g.coefficients(0, 3)));
    EXPECT_LE(std::abs(g.coefficients(last, 3) - g.coefficients(last - 1, 3)),
              1e-9 * std::abs(g.coefficients(last, 3)));

    EXPECT_THROW(cubic_spline(equispaced_grid(3), Eigen::VectorXcd::Ones(3)), invalid_input);
}

TEST(FhWeights, KnownCases) {
    const Eigen::VectorXd berrut = fh_weights(7, 0);
    for (Index k = 0; k < 7; ++k) EXPECT_EQ(std::abs(berrut(k)), 1.0);
    for (Index k = 1; k < 7; ++k) EXPECT_EQ(berrut(k), -berrut(k - 1));

    const Eigen::VectorXd poly = fh_weights(7, 6);
    const double sign = poly(0) > 0 ? 1.0 : -1.0;
    for (Index k = 0; k < 7; ++k) EXPECT_EQ(poly(k), sign * (k % 2 ? -1.0 : 1.0) * binom(6, k));

    EXPECT_THROW(fh_weights(5, 5), invalid_input);
    EXPECT_THROW(fh_weights(5, -1), invalid_input);
}

TEST(FhWeights, MatchBlendedLocalPolynomials) {
    // r = sum_i lambda_i p_i / sum_i lambda_i with lambda_i = (-1)^i / prod_{k=i..i+d}(x - x_k)
    // and p_i the polynomial interpolant on x_i..x_{i+d}; compare with the barycentric form
    const Index n = 6, d = 2;
    const Eigen::VectorXd x = equispaced_grid(n);
    const Eigen::VectorXcd f = on_grid(x, [](double t) { return std::exp(t) * std::cos(3 * t); });
    const auto fh = fh_interpolant(x, f, d);
    for (double t : {-0.93, -0.41, 0.05, 0.33, 0.71, 0.99}) {
        cplx num = 0.0;
        double den = 0.0;
        for (Index i = 0; i + d < n; ++i) {
            double prod = 1.0;
            for (Index k = i; k <= i + d; ++k) prod *= t - x(k);
            const double lambda = (i % 2 ? -1.0 : 1.0) / prod;
            cplx p = 0.0;
            for (Index j = i; j <= i + d; ++j) {
                double l = 1.0;
                for (Index k = i; k <= i + d; ++k)
                    if (k != j) l *= (t - x(k)) / (x(j) - x(k));
                p += f(j) * l;
            }
            num += lambda * p;
            den += lambda;
        }
        EXPECT_LE(std::abs(fh(t) - num / den), 1e-13) << "x=" << t;
    }
}

TEST(FhInterpolant, NodesAreExactAndNoPoles) {
    for (Index n : {8, 25, 60}) {
        const Eigen::VectorXd x = equispaced_grid(n);
        const Eigen::VectorXcd f = sample_equispaced(TestFunctionId::fB, n);
        for (Index d : {Index{0}, Index{3}, std::min<Index>(n - 1, 20)}) {
            const auto fh = fh_interpolant(x, f, d);
            for (Index i = 0; i < n; ++i) EXPECT_EQ(fh(x(i)), f(i));
            // the sign of the denominator alternates exactly across the nodes
            const Index probes = 10000;
            int expected = 0;
            for (Index s = 0; s < probes; ++s) {
                const double t = -1.0 + 2.0 * (static_cast<double>(s) + 0.5) / probes;
                double den = 0.0;
                Index right = 0;
                for (Index k = 0; k < n; ++k) {
                    den += fh.weights(k) / (t - x(k));
                    if (x(k) > t) ++right;
                }
                const int sgn = (den > 0 ? 1 : -1) * (right % 2 ? -1 : 1);
                if (s == 0) expected = sgn;
                ASSERT_EQ(sgn, expected) << "n=" << n << " d=" << d << " t=" << t;
            }
        }
    }
}

TEST(FhAdaptive, LinearDataPicksSmallestExactDegree) {
    auto f = [](double t) { return 2.0 * t + 1.0; };
    // d = 0 reproduces linear data iff the node count is even (the weights (-1)^k then sum
    // to zero), so the even-index half grid decides: 10 nodes for n = 20, 11 for n = 21
    const Eigen::VectorXd x = equispaced_grid(20);
    const auto even = fh_adaptive(x, on_grid(x, f));
    EXPECT_EQ(even.blend_degree, 0);
    EXPECT_LE(dense_error(even, f), 1e-13);

    const Eigen::VectorXd y = equispaced_grid(21);
    const auto odd = fh_adaptive(y, on_grid(y, f));
    EXPECT_EQ(odd.blend_degree, 1);
    EXPECT_LE(dense_error(odd, f), 1e-13);
}

TEST(FhAdaptive, DegreeWithinBounds) {
    for (Index n : {4, 9, 50, 200}) {
        const Eigen::VectorXd x = equispaced_grid(n);
        const auto fh = fh_adaptive(x, sample_equispaced(TestFunctionId::fC, n));
        EXPECT_GE(fh.blend_degree, 0);
        EXPECT_LE(fh.blend_degree, std::min<Index>(n - 1, 20));
    }
    EXPECT_THROW(fh_adaptive(equispaced_grid(3), Eigen::VectorXcd::Ones(3)), invalid_input);
}

TEST(FhAdaptive, LosesToAaaOnTanh) {
    const Index n = 100;
    const Eigen::VectorXd x = equispaced_grid(n);
    const Eigen::VectorXcd f = sample_equispaced(TestFunctionId::fC, n);
    const auto fh = fh_adaptive(x, f);
    const auto aaa = fit_equispaced(f);
    const double e_fh = max_dense_error([&](double t) { return fh(t); }, TestFunctionId::fC);
    const double e_aaa = max_dense_error([&](double t) { return evaluate(aaa.approximant, t); }, TestFunctionId::fC);
    EXPECT_GT(e_fh, e_aaa);
}

TEST(GrowthConstant, ClosedFormAndLimits) {
    EXPECT_NEAR(growth_constant(2.0), std::pow(3.0, 0.75) / 2.0, 1e-15);
    EXPECT_NEAR(growth_constant(1.0), 2.0, 1e-15);
    EXPECT_NEAR(growth_constant(1e12), 1.0, 1e-10);
    double prev = growth_constant(1.0);
    for (double g = 1.25; g < 50.0; g *= 1.25) {
        const double c = growth_constant(g);
        EXPECT_LT(c, prev);
        prev = c;
    }
    EXPECT_THROW(growth_constant(0.5), invalid_input);
}
