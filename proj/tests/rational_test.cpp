#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eqfit/rational.hpp"
#include "eqfit/testlib.hpp"

using namespace eqfit;

namespace {

Eigen::VectorXcd samples(const Eigen::VectorXd& x, cplx (*f)(cplx)) {
    Eigen::VectorXcd out(x.size());
    for (Index i = 0; i < x.size(); ++i) out(i) = f(x(i));
    return out;
}

cplx runge(cplx z) { return 1.0 / (1.0 + 25.0 * z * z); }
cplx tanh5(cplx z) { return std::tanh(5.0 * z); }

double dense_error(const Approximant& r, cplx (*f)(cplx), Index m = 1000) {
    double err = 0.0;
    const Eigen::VectorXd xs = equispaced_grid(m);
    for (Index i = 0; i < m; ++i) err = std::max(err, std::abs(evaluate(r, xs(i)) - f(xs(i))));
    return err;
}

// index of the entry of v closest to z
Index nearest(const Eigen::VectorXcd& v, cplx z) {
    Index best = 0;
    for (Index k = 1; k < v.size(); ++k)
        if (std::abs(v(k) - z) < std::abs(v(best) - z)) best = k;
    return best;
}

} // namespace

TEST(EquispacedGrid, EndpointsAndSymmetry) {
    const Eigen::VectorXd x = equispaced_grid(7);
    EXPECT_EQ(x(0), -1.0);
    EXPECT_EQ(x(6), 1.0);
    EXPECT_EQ(x(3), 0.0);
    for (Index j = 0; j < 7; ++j) EXPECT_EQ(x(j), -x(6 - j));
    EXPECT_THROW(equispaced_grid(1), invalid_input);
}

TEST(AaaFit, ConstantData) {
    const Eigen::VectorXd x = equispaced_grid(11);
    const auto res = aaa_fit(x, Eigen::VectorXcd::Constant(11, 7.0));
    EXPECT_EQ(res.report.degree, 0);
    EXPECT_EQ(res.report.grid_residual, 0.0);
    EXPECT_LE(std::abs(bary_eval(res.rational, cplx(0.3, 0.4)) - 7.0), 1e-14);
    EXPECT_EQ(bary_eval(res.rational, res.rational.support_points(0)), cplx(7.0));
    EXPECT_EQ(poles(res.rational).size(), 0);
    EXPECT_EQ(zeros(res.rational).size(), 0);
}

TEST(AaaFit, RungeIsCapturedAtDegreeTwo) {
    const Eigen::VectorXd x = equispaced_grid(20);
    const auto res = aaa_fit(x, samples(x, runge));
    EXPECT_EQ(res.report.degree, 2);
    EXPECT_FALSE(res.report.is_interpolant);
    EXPECT_LT(dense_error(res.rational, runge), 1e-12);
}

TEST(AaaFit, ExpSqrtHasDegree17) {
    const Eigen::VectorXd x = equispaced_grid(50);
    const Eigen::VectorXcd f = sample_equispaced(TestFunctionId::expsqrt, 50);
    const auto res = aaa_fit(x, f, 1e-13);
    EXPECT_EQ(res.report.degree, 17);
    EXPECT_LE(res.report.grid_residual, 1e-13);
    // evaluation on the dense grid, within a factor 5 of 9.6e-14
    const double err = max_dense_error([&](double t) { return bary_eval(res.rational, t); }, TestFunctionId::expsqrt);
    EXPECT_LE(err, 5 * 9.6e-14);
}

TEST(AaaFit, DegreeCapAndInterpolantFlag) {
    const Eigen::VectorXd x = equispaced_grid(12);
    const Eigen::VectorXcd f = sample_equispaced(TestFunctionId::fB, 12);
    const auto capped = aaa_fit(x, f, 1e-13, 3);
    EXPECT_EQ(capped.report.degree, 3);
    EXPECT_FALSE(capped.report.is_interpolant);

    const auto full = aaa_fit(x, f, 1e-13);
    EXPECT_EQ(full.report.degree, interpolant_degree(12));
    EXPECT_TRUE(full.report.is_interpolant);

    // odd n: ceil((n-1)/2)
    EXPECT_EQ(interpolant_degree(11), 5);
    EXPECT_EQ(interpolant_degree(12), 6);
}

TEST(AaaFit, TwoPointsInterpolateLinearly) {
    const Eigen::VectorXd x = equispaced_grid(2);
    Eigen::VectorXcd f(2);
    f << 1.0, 3.0;
    const auto res = aaa_fit(x, f);
    EXPECT_LE(std::abs(bary_eval(res.rational, 0.0) - 2.0), 1e-15);
    EXPECT_LE(std::abs(bary_eval(res.rational, -1.0) - 1.0), 0.0);
    EXPECT_LE(std::abs(bary_eval(res.rational, 1.0) - 3.0), 0.0);
}

TEST(AaaFit, RejectsBadInput) {
    Eigen::VectorXd x(3);
    x << 0.0, 0.0, 1.0;
    const Eigen::VectorXcd f = Eigen::VectorXcd::Ones(3);
    EXPECT_THROW(aaa_fit(x, f), invalid_input);
    x << 0.0, 1.0, 0.5;
    EXPECT_THROW(aaa_fit(x, f), invalid_input);
    EXPECT_THROW(aaa_fit(equispaced_grid(3), Eigen::VectorXcd::Ones(2)), invalid_input);
    EXPECT_THROW(aaa_fit(equispaced_grid(3), f, 0.0), invalid_input);
    EXPECT_THROW(aaa_fit(equispaced_grid(3), f, 1e-13, 0), invalid_input);
    Eigen::VectorXcd g = f;
    g(1) = cplx(std::nan(""), 0.0);
    EXPECT_THROW(aaa_fit(equispaced_grid(3), g), invalid_input);
}

TEST(BaryEval, SupportPointsAreExact) {
    const Eigen::VectorXd x = equispaced_grid(40);
    const auto res = aaa_fit(x, samples(x, tanh5));
    const auto& r = res.rational;
    ASSERT_GE(r.degree(), 3);
    for (Index j = 0; j <= r.degree(); ++j) EXPECT_EQ(bary_eval(r, r.support_points(j)), r.support_values(j));
}

TEST(Poles, RungePolesAndResidues) {
    const Eigen::VectorXd x = equispaced_grid(20);
    const auto res = aaa_fit(x, samples(x, runge));
    const Eigen::VectorXcd p = poles(res.rational);
    ASSERT_EQ(p.size(), 2);
    const Index up = nearest(p, cplx(0.0, 0.2));
    const Index down = 1 - up;
    EXPECT_LE(std::abs(p(up) - cplx(0.0, 0.2)), 1e-10);
    EXPECT_LE(std::abs(p(down) - cplx(0.0, -0.2)), 1e-10);
    // 1/(1+25x^2) = (-i/10)/(x - i/5) + (i/10)/(x + i/5)
    const Eigen::VectorXcd a = residues(res.rational, p);
    EXPECT_LE(std::abs(a(up) - cplx(0.0, -0.1)), 1e-8);
    EXPECT_LE(std::abs(a(down) - cplx(0.0, 0.1)), 1e-8);
    EXPECT_TRUE(detect_bad_poles(p, 1e-8).empty());
}

TEST(Poles, TanhPolesNearImaginaryAxis) {
    const Eigen::VectorXd x = equispaced_grid(100);
    const auto res = aaa_fit(x, samples(x, tanh5));
    const Eigen::VectorXcd p = poles(res.rational);
    const cplx exact(0.0, std::numbers::pi / 10.0);
    EXPECT_LE(std::abs(p(nearest(p, exact)) - exact), 1e-6);
    EXPECT_LE(std::abs(p(nearest(p, std::conj(exact))) - std::conj(exact)), 1e-6);
}

TEST(Poles, HandBuiltReciprocal) {
    // supports {-1, 1}, values {-1, 1}: weights {1, 1} give 1/x, weights {1, -1} give x
    BarycentricRational r;
    r.support_points = Eigen::Vector2d(-1.0, 1.0);
    r.support_values = Eigen::Vector2cd(-1.0, 1.0);
    r.weights = Eigen::Vector2cd(1.0, 1.0);
    EXPECT_LE(std::abs(bary_eval(r, 0.5) - 2.0), 1e-15);
    const Eigen::VectorXcd p = poles(r);
    ASSERT_EQ(p.size(), 1);
    EXPECT_LE(std::abs(p(0)), 1e-14);
    const Eigen::VectorXcd a = residues(r, p);
    EXPECT_LE(std::abs(a(0) - 1.0), 1e-14);
    EXPECT_EQ(zeros(r).size(), 0);

    r.weights = Eigen::Vector2cd(1.0, -1.0);
    EXPECT_LE(std::abs(bary_eval(r, 0.5) - 0.5), 1e-15);
    EXPECT_EQ(poles(r).size(), 0);
    const Eigen::VectorXcd z = zeros(r);
    ASSERT_EQ(z.size(), 1);
    EXPECT_LE(std::abs(z(0)), 1e-14);
}

TEST(Poles, ResidueAtSupportPointIsDegenerate) {
    BarycentricRational r;
    r.support_points = Eigen::Vector2d(-1.0, 1.0);
    r.support_values = Eigen::Vector2cd(-1.0, 1.0);
    r.weights = Eigen::Vector2cd(1.0, 1.0);
    Eigen::VectorXcd p(1);
    p << 1.0;
    EXPECT_THROW(residues(r, p), degenerate_error);
}

TEST(Poles, WeightScalingLeavesPolesAndResiduesUnchanged) {
    const Eigen::VectorXd x = equispaced_grid(30);
    auto r = aaa_fit(x, samples(x, runge)).rational;
    const Eigen::VectorXcd p = poles(r);
    const Eigen::VectorXcd a = residues(r, p);
    r.weights *= 2.0;
    const Eigen::VectorXcd p2 = poles(r);
    const Eigen::VectorXcd a2 = residues(r, p2);
    ASSERT_EQ(p2.size(), p.size());
    EXPECT_LE((p2 - p).norm(), 1e-13 * p.norm());
    EXPECT_LE((a2 - a).norm(), 1e-13 * a.norm());
}

TEST(Zeros, OddAndQuadraticData) {
    const Eigen::VectorXd x = equispaced_grid(5);
    const auto lin = aaa_fit(x, x.cast<cplx>());
    const Eigen::VectorXcd z1 = zeros(lin.rational);
    ASSERT_EQ(z1.size(), 1);
    EXPECT_LE(std::abs(z1(0)), 1e-12);

    const Eigen::VectorXd x9 = equispaced_grid(9);
    const Eigen::VectorXcd q = (1.0 - x9.array().square()).matrix().cast<cplx>();
    const auto quad = aaa_fit(x9, q);
    const Eigen::VectorXcd z2 = zeros(quad.rational);
    ASSERT_GE(z2.size(), 2);
    EXPECT_LE(std::abs(z2(nearest(z2, 1.0)) - 1.0), 1e-10);
    EXPECT_LE(std::abs(z2(nearest(z2, -1.0)) + 1.0), 1e-10);
}

TEST(DetectBadPoles, Predicate) {
    Eigen::VectorXcd p(5);
    p << cplx(0.0, 0.2), cplx(0.0, -0.2), cplx(0.5, 1e-12), cplx(1.5, 0.0), cplx(-1.0, -1e-9);
    const auto bad = detect_bad_poles(p, 1e-8);
    ASSERT_EQ(bad.size(), 2u);
    EXPECT_EQ(bad[0], 2);
    EXPECT_EQ(bad[1], 4);
    EXPECT_TRUE(detect_bad_poles(Eigen::VectorXcd(0), 1e-8).empty());
    EXPECT_THROW(detect_bad_poles(p, -1.0), invalid_input);
}

TEST(AaaLs, RecoversKnownPartialFractions) {
    const Eigen::VectorXd x = equispaced_grid(50);
    Eigen::VectorXcd f(50);
    const cplx p(0.0, 2.0);
    for (Index i = 0; i < 50; ++i) f(i) = 3.0 + 1.0 / (x(i) - p) + 1.0 / (x(i) - std::conj(p));
    ASSERT_LE(f.imag().cwiseAbs().maxCoeff(), 1e-15);
    f = f.real().cast<cplx>();
    Eigen::VectorXcd good(2);
    good << p, std::conj(p);
    const auto r = aaa_ls(x, f, good);
    EXPECT_LE(std::abs(r.constant - 3.0), 1e-10);
    ASSERT_EQ(r.residues.size(), 2);
    for (Index k = 0; k < 2; ++k) EXPECT_LE(std::abs(r.residues(k) - 1.0), 1e-10);
    // real on the real line
    EXPECT_EQ(r(cplx(0.37, 0.0)).imag(), 0.0);
}

TEST(AaaLs, ComplexDataUsesPolesAsGiven) {
    const Eigen::VectorXd x = equispaced_grid(40);
    const cplx p(0.3, 1.5);
    Eigen::VectorXcd f(40);
    for (Index i = 0; i < 40; ++i) f(i) = cplx(1.0, -2.0) + cplx(0.5, 0.5) / (x(i) - p);
    Eigen::VectorXcd good(1);
    good << p;
    const auto r = aaa_ls(x, f, good);
    EXPECT_LE(std::abs(r.constant - cplx(1.0, -2.0)), 1e-10);
    EXPECT_LE(std::abs(r.residues(0) - cplx(0.5, 0.5)), 1e-10);
}

TEST(AaaLs, EmptyPoleSetGivesMean) {
    const Eigen::VectorXd x = equispaced_grid(6);
    const auto r = aaa_ls(x, Eigen::VectorXcd::Constant(6, 4.0), Eigen::VectorXcd(0));
    EXPECT_EQ(r.degree(), 0);
    EXPECT_LE(std::abs(r.constant - 4.0), 1e-15);
}

TEST(AaaLs, RejectsBadPoles) {
    const Eigen::VectorXd x = equispaced_grid(6);
    Eigen::VectorXcd bad(1);
    bad << 0.25;
    EXPECT_THROW(aaa_ls(x, Eigen::VectorXcd::Ones(6), bad), invalid_input);
}

TEST(FitEquispaced, ExpSqrtDataStaysBarycentric) {
    const auto fit = fit_equispaced(sample_equispaced(TestFunctionId::expsqrt, 50));
    EXPECT_TRUE(std::holds_alternative<BarycentricRational>(fit.approximant));
    EXPECT_EQ(fit.report.degree, 17);
    EXPECT_FALSE(fit.report.rescue_applied);
    EXPECT_EQ(fit.report.n_bad_poles, 0);
}

TEST(FitEquispaced, ConstantData) {
    const auto fit = fit_equispaced(Eigen::VectorXcd::Constant(9, -2.0));
    EXPECT_EQ(fit.report.degree, 0);
    EXPECT_EQ(approximant_poles(fit.approximant).size(), 0);
    EXPECT_FALSE(fit.report.rescue_applied);
}

TEST(FitEquispaced, RescueReportIsConsistent) {
    // whatever the outcome at a given n, the flags must agree with the pole set
    for (Index n : {20, 40, 60, 80}) {
        const auto fit = fit_equispaced(sample_equispaced(TestFunctionId::fB, n));
        EXPECT_EQ(fit.report.rescue_applied, fit.report.n_bad_poles > 0);
        EXPECT_TRUE(detect_bad_poles(approximant_poles(fit.approximant), 1e-8).empty());
        EXPECT_TRUE(std::isfinite(fit.report.grid_residual));
        if (fit.report.rescue_applied)
            EXPECT_TRUE(std::holds_alternative<PartialFractionRational>(fit.approximant));
    }
}

TEST(ToChebyshev, ExpSqrtApproximant) {
    const auto fit = fit_equispaced(sample_equispaced(TestFunctionId::expsqrt, 50));
    const auto p = to_chebyshev(fit.approximant);
    EXPECT_GE(p.degree(), 96);
    EXPECT_LE(p.degree(), 112);
    const double err = max_dense_error([&](double t) { return cplx(p(t)); }, TestFunctionId::expsqrt);
    EXPECT_LE(err, 10 * 9.6e-14);
}

TEST(ToChebyshev, ConstantAndBasisFunction) {
    const auto c = to_chebyshev(fit_equispaced(Eigen::VectorXcd::Constant(5, 3.0)).approximant);
    EXPECT_EQ(c.degree(), 0);
    EXPECT_LE(std::abs(c.coefficients(0) - 3.0), 1e-15);

    const Eigen::VectorXd x = equispaced_grid(30);
    Eigen::VectorXcd f(30);
    for (Index i = 0; i < 30; ++i) f(i) = std::cos(5.0 * std::acos(x(i)));
    const auto p = to_chebyshev(fit_equispaced(f).approximant);
    ASSERT_GE(p.coefficients.size(), 6);
    for (Index k = 0; k < p.coefficients.size(); ++k) EXPECT_NEAR(p.coefficients(k), k == 5 ? 1.0 : 0.0, 1e-10);
}

TEST(ToChebyshev, PoleOnIntervalIsNotResolvable) {
    PartialFractionRational r;
    // the real part of 1/(x - 1e-7 i) is a spike needing far more than 2^16 terms
    r.poles = Eigen::VectorXcd::Constant(1, cplx(0.0, 1e-7));
    r.residues = Eigen::VectorXcd::Constant(1, cplx(1.0));
    EXPECT_THROW(to_chebyshev(r), not_resolvable);
}

TEST(EvalOnGrid, SupportPointsPolesAndEmpty) {
    const Eigen::VectorXd x = equispaced_grid(20);
    const Approximant r = aaa_fit(x, samples(x, runge)).rational;
    const auto& b = std::get<BarycentricRational>(r);
    Eigen::VectorXcd pts(2);
    pts << b.support_points(1), cplx(0.1, 0.1);
    const auto g = eval_on_grid(r, pts);
    EXPECT_EQ(g.values(0), b.support_values(1));
    EXPECT_TRUE(g.singular.empty());
    EXPECT_EQ(eval_on_grid(r, Eigen::VectorXcd(0)).values.size(), 0);

    PartialFractionRational pf;
    pf.poles = Eigen::VectorXcd::Constant(1, cplx(0.0, 2.0));
    pf.residues = Eigen::VectorXcd::Constant(1, cplx(1.0));
    Eigen::VectorXcd at_pole(2);
    at_pole << cplx(0.0, 2.0), cplx(0.0, 0.0);
    const auto h = eval_on_grid(pf, at_pole);
    ASSERT_EQ(h.singular.size(), 1u);
    EXPECT_EQ(h.singular[0], 0);
    EXPECT_TRUE(std::isinf(h.values(0).real()));
    EXPECT_TRUE(std::isfinite(std::abs(h.values(1))));
}

TEST(Serialization, RoundTripIsExact) {
    const auto fit = fit_equispaced(sample_equispaced(TestFunctionId::fC, 30));
    std::stringstream ss;
    write_approximant(ss, fit.approximant, 1e-13);
    double tol = 0.0;
    const Approximant back = read_approximant(ss, &tol);
    EXPECT_EQ(tol, 1e-13);
    const auto& a = std::get<BarycentricRational>(fit.approximant);
    const auto& b = std::get<BarycentricRational>(back);
    EXPECT_EQ(a.support_points, b.support_points);
    EXPECT_EQ(a.support_values, b.support_values);
    EXPECT_EQ(a.weights, b.weights);

    PartialFractionRational pf;
    pf.poles = Eigen::VectorXcd::Constant(1, cplx(0.1, 2.0 / 3.0));
    pf.residues = Eigen::VectorXcd::Constant(1, cplx(1.0 / 7.0, -0.3));
    pf.constant = cplx(std::numbers::pi, 0.0);
    std::stringstream s2;
    write_approximant(s2, pf, 1e-10);
    const auto pf2 = std::get<PartialFractionRational>(read_approximant(s2));
    EXPECT_EQ(pf2.poles, pf.poles);
    EXPECT_EQ(pf2.residues, pf.residues);
    EXPECT_EQ(pf2.constant, pf.constant);
}

TEST(Serialization, MalformedInputIsRejected) {
    std::istringstream empty("");
    EXPECT_THROW(read_approximant(empty), invalid_input);
    std::istringstream wrong("polynomial 3 1e-13\n");
    EXPECT_THROW(read_approximant(wrong), invalid_input);
    std::istringstream truncated("barycentric 1 1e-13\n0 1 0 1 0\n");
    EXPECT_THROW(read_approximant(truncated), invalid_input);
}
