#include <cmath>
#include <numbers>

#include "eqfit/baselines.hpp"
#include "eqfit/chebyshev.hpp"

namespace eqfit {

namespace {

constexpr double kRtol = 1e-14;

bool is_real(const Eigen::Ref<const Eigen::VectorXcd>& f) { return (f.imag().array() == 0.0).all(); }

void check_fit_input(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f,
                     double gamma) {
    if (x.size() < 2) throw invalid_input("least-squares fit: need n >= 2");
    if (x.size() != f.size()) throw invalid_input("least-squares fit: x and f differ in length");
    if (!(gamma > 1.0)) throw invalid_input("least-squares fit: gamma must exceed 1");
}

// Largest odd integer <= budget, as K with 2K+1 columns; throws if budget < 1.
Index modes_for_budget(double budget) {
    auto cols = static_cast<Index>(std::floor(budget));
    if (cols % 2 == 0) --cols;
    if (cols < 1) throw invalid_input("Fourier fit: too few samples for a single mode");
    return (cols - 1) / 2;
}

Eigen::MatrixXcd chebyshev_columns(const Eigen::Ref<const Eigen::VectorXd>& x, Index degree) {
    Eigen::MatrixXcd a(x.size(), degree + 1);
    a.col(0).setOnes();
    if (degree >= 1) a.col(1) = x.cast<cplx>();
    for (Index j = 2; j <= degree; ++j)
        a.col(j) = (2.0 * x.array().cast<cplx>() * a.col(j - 1).array() - a.col(j - 2).array()).matrix();
    return a;
}

Eigen::MatrixXcd exponential_columns(const Eigen::Ref<const Eigen::VectorXd>& x, Index modes, double half_width) {
    Eigen::MatrixXcd a(x.size(), 2 * modes + 1);
    for (Index k = -modes; k <= modes; ++k)
        for (Index i = 0; i < x.size(); ++i)
            a(i, k + modes) = std::polar(1.0, std::numbers::pi * static_cast<double>(k) * x(i) / half_width);
    return a;
}

cplx exponential_sum(const Eigen::VectorXcd& c, Index offset, Index modes, double half_width, double x) {
    cplx s = 0.0;
    for (Index k = -modes; k <= modes; ++k)
        s += c(offset + k + modes) * std::polar(1.0, std::numbers::pi * static_cast<double>(k) * x / half_width);
    return s;
}

} // namespace

cplx LinearFit::operator()(double x) const {
    cplx v = 0.0;
    switch (kind) {
    case BasisKind::chebyshev: v = clenshaw(coefficients, x); break;
    case BasisKind::monomial:
        for (Index j = coefficients.size() - 1; j >= 0; --j) v = v * x + coefficients(j);
        break;
    case BasisKind::fourier: v = exponential_sum(coefficients, 0, fourier_modes, half_width, x); break;
    case BasisKind::fourier_plus_cheb: {
        const Index nf = 2 * fourier_modes + 1;
        v = exponential_sum(coefficients, 0, fourier_modes, 1.0, x) +
            clenshaw(coefficients.segment(nf, poly_degree + 1), x);
        break;
    }
    case BasisKind::arnoldi_fourier: {
        const Index ncols = coefficients.size();
        const cplx z = std::polar(1.0, std::numbers::pi * x / half_width);
        Eigen::VectorXcd q(ncols);
        q(0) = std::polar(1.0, -std::numbers::pi * static_cast<double>(fourier_modes) * x / half_width) / start_norm;
        for (Index j = 0; j + 1 < ncols; ++j) {
            cplx next = z * q(j);
            for (Index i = 0; i <= j; ++i) next -= hessenberg(i, j) * q(i);
            q(j + 1) = next / hessenberg(j + 1, j);
        }
        v = (q.transpose() * coefficients)(0);
        break;
    }
    }
    return real_output ? cplx(v.real(), 0.0) : v;
}

LinearFit poly_ls_cheb(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f,
                       double gamma) {
    check_fit_input(x, f, gamma);
    const auto n = static_cast<double>(x.size());
    const Index degree = static_cast<Index>(std::ceil(n / gamma)) - 1;
    LinearFit fit;
    fit.kind = BasisKind::chebyshev;
    fit.poly_degree = degree;
    fit.real_output = is_real(f);
    fit.coefficients = least_squares_min_norm(chebyshev_columns(x, degree), f, kRtol);
    return fit;
}

LinearFit poly_ls_monomial(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f,
                           double gamma) {
    check_fit_input(x, f, gamma);
    const auto n = static_cast<double>(x.size());
    const Index degree = static_cast<Index>(std::ceil(n / gamma)) - 1;
    Eigen::MatrixXcd a(x.size(), degree + 1);
    a.col(0).setOnes();
    for (Index j = 1; j <= degree; ++j) a.col(j) = a.col(j - 1).cwiseProduct(x.cast<cplx>());
    LinearFit fit;
    fit.kind = BasisKind::monomial;
    fit.poly_degree = degree;
    fit.real_output = is_real(f);
    fit.coefficients = least_squares_min_norm(a, f, kRtol);
    return fit;
}

LinearFit fourier_ext(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f,
                      double half_width, double gamma) {
    check_fit_input(x, f, gamma);
    if (!(half_width > 1.0)) throw invalid_input("fourier_ext: T must exceed 1");
    LinearFit fit;
    fit.kind = BasisKind::fourier;
    fit.fourier_modes = modes_for_budget(static_cast<double>(x.size()) / gamma);
    fit.half_width = half_width;
    fit.real_output = is_real(f);
    fit.coefficients = least_squares_min_norm(exponential_columns(x, fit.fourier_modes, half_width), f, kRtol);
    return fit;
}

LinearFit fourier_ext_va(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f,
                         double half_width, double gamma) {
    check_fit_input(x, f, gamma);
    if (!(half_width > 1.0)) throw invalid_input("fourier_ext_va: T must exceed 1");
    LinearFit fit;
    fit.kind = BasisKind::arnoldi_fourier;
    fit.fourier_modes = modes_for_budget(static_cast<double>(x.size()) / gamma);
    fit.half_width = half_width;
    fit.real_output = is_real(f);

    const Index n = x.size();
    const Index ncols = 2 * fit.fourier_modes + 1;
    Eigen::VectorXcd z(n), start(n);
    for (Index i = 0; i < n; ++i) {
        z(i) = std::polar(1.0, std::numbers::pi * x(i) / half_width);
        start(i) = std::polar(1.0, -std::numbers::pi * static_cast<double>(fit.fourier_modes) * x(i) / half_width);
    }
    Eigen::MatrixXcd q(n, ncols);
    fit.hessenberg = Eigen::MatrixXcd::Zero(ncols, std::max<Index>(ncols - 1, 0));
    fit.start_norm = start.norm();
    q.col(0) = start / fit.start_norm;
    for (Index j = 0; j + 1 < ncols; ++j) {
        Eigen::VectorXcd v = z.cwiseProduct(q.col(j));
        // Modified Gram-Schmidt, applied twice; both passes accumulate into h.
        for (int pass = 0; pass < 2; ++pass) {
            for (Index i = 0; i <= j; ++i) {
                const cplx h = q.col(i).dot(v);
                fit.hessenberg(i, j) += h;
                v -= h * q.col(i);
            }
        }
        fit.hessenberg(j + 1, j) = v.norm();
        q.col(j + 1) = v / v.norm();
    }
    fit.coefficients = least_squares_min_norm(q, f, kRtol);
    return fit;
}

Eigen::MatrixXcd arnoldi_basis(const LinearFit& fit, const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (fit.kind != BasisKind::arnoldi_fourier) throw invalid_input("arnoldi_basis: not an Arnoldi fit");
    const Index ncols = fit.coefficients.size();
    Eigen::MatrixXcd q(x.size(), ncols);
    for (Index i = 0; i < x.size(); ++i) {
        const cplx z = std::polar(1.0, std::numbers::pi * x(i) / fit.half_width);
        q(i, 0) = std::polar(1.0, -std::numbers::pi * static_cast<double>(fit.fourier_modes) * x(i) / fit.half_width) /
                  fit.start_norm;
        for (Index j = 0; j + 1 < ncols; ++j) {
            cplx next = z * q(i, j);
            for (Index k = 0; k <= j; ++k) next -= fit.hessenberg(k, j) * q(i, k);
            q(i, j + 1) = next / fit.hessenberg(j + 1, j);
        }
    }
    return q;
}

LinearFit fourier_plus_poly(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f,
                            double gamma) {
    check_fit_input(x, f, gamma);
    const auto n = static_cast<double>(x.size());
    const auto total = static_cast<Index>(std::ceil(n / gamma));
    const auto p = static_cast<Index>(std::lround(std::sqrt(n)));
    LinearFit fit;
    fit.kind = BasisKind::fourier_plus_cheb;
    fit.poly_degree = p;
    fit.fourier_modes = modes_for_budget(static_cast<double>(total - (p + 1)));
    fit.half_width = 1.0;
    fit.real_output = is_real(f);

    const Index nf = 2 * fit.fourier_modes + 1;
    Eigen::MatrixXcd a(x.size(), nf + p + 1);
    a.leftCols(nf) = exponential_columns(x, fit.fourier_modes, 1.0);
    a.rightCols(p + 1) = chebyshev_columns(x, p);
    fit.coefficients = least_squares_min_norm(a, f, kRtol);
    return fit;
}

double growth_constant(double gamma) {
    if (!(gamma >= 1.0)) throw invalid_input("growth_constant: gamma must be >= 1");
    const double alpha = 1.0 / gamma;
    return std::sqrt(std::pow(1.0 + alpha, 1.0 + alpha) * std::pow(1.0 - alpha, 1.0 - alpha));
}

} // namespace eqfit
