#ifndef EQFIT_BASELINES_HPP
#define EQFIT_BASELINES_HPP

// Classical comparison methods for equispaced data: least-squares fits in
// Chebyshev, monomial, Fourier-extension and Fourier-plus-polynomial bases,
// a Vandermonde-with-Arnoldi Fourier extension, not-a-knot cubic splines,
// and Floater-Hormann rational interpolation.

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "eqfit/numerics.hpp"

namespace eqfit {

enum class BasisKind { chebyshev, monomial, fourier, fourier_plus_cheb, arnoldi_fourier };

/// Coefficients in one of the BasisKind bases.
///
/// chebyshev / monomial:  sum_{j<=poly_degree} c_j T_j(x) or c_j x^j
/// fourier:               sum_{k=-K..K} c_{k+K} exp(i pi k x / T)
/// fourier_plus_cheb:     Fourier part with T = 1 first, then poly_degree+1 Chebyshev terms
/// arnoldi_fourier:       sum_j c_j q_j(x), q_j from the stored Hessenberg recurrence
struct LinearFit {
    BasisKind kind = BasisKind::chebyshev;
    Index poly_degree = -1;  // -1 when there is no polynomial part
    Index fourier_modes = -1; // K; -1 when there is no Fourier part
    double half_width = 1.0; // T
    Eigen::VectorXcd coefficients;
    bool real_output = false; // data were real: return the real part

    // Arnoldi recurrence: q_0 = exp(-i pi K x / T) / start_norm,
    // h(j+1,j) q_{j+1} = z q_j - sum_{i<=j} h(i,j) q_i with z = exp(i pi x / T).
    Eigen::MatrixXcd hessenberg;
    double start_norm = 1.0;

    Index size() const { return coefficients.size(); }
    cplx operator()(double x) const;
};

/// C^2 piecewise cubic; piece i on [knots(i), knots(i+1)] is
/// a + b s + c s^2 + d s^3 with s = x - knots(i).
struct SplineFit {
    Eigen::VectorXd knots;
    Eigen::MatrixX4cd coefficients; // rows = pieces, columns = (a, b, c, d)

    cplx operator()(double x) const;
};

struct FHInterpolant {
    Eigen::VectorXd nodes;
    Eigen::VectorXcd values;
    Eigen::VectorXd weights;
    Index blend_degree = 0;

    cplx operator()(cplx z) const;
};

/// Least-squares Chebyshev series of degree ceil(n/gamma) - 1.
LinearFit poly_ls_cheb(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f,
                       double gamma = 2.0);

/// As poly_ls_cheb in the monomial basis.
LinearFit poly_ls_monomial(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f,
                           double gamma = 2.0);

/// Fourier extension on [-T,T] with 2K+1 the largest odd count <= n/gamma.
LinearFit fourier_ext(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f,
                      double half_width = 2.0, double gamma = 2.0);

/// Same fit space as fourier_ext, with an orthonormal basis built on the grid by Arnoldi.
LinearFit fourier_ext_va(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f,
                         double half_width = 2.0, double gamma = 2.0);

/// exp(i pi k x), |k| <= K, jointly with T_0..T_p, p = round(sqrt(n)).
LinearFit fourier_plus_poly(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f,
                            double gamma = 2.0);

/// Grid columns of the Arnoldi basis of a fourier_ext_va fit (orthonormal on x).
Eigen::MatrixXcd arnoldi_basis(const LinearFit& fit, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Not-a-knot cubic spline interpolant; n >= 4.
SplineFit cubic_spline(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f);

/// Equispaced Floater-Hormann weights (-1)^k sum_i C(d, k-i); 0 <= d <= n-1.
Eigen::VectorXd fh_weights(Index n, Index d);

/// Floater-Hormann interpolant of blending degree d on equispaced nodes.
FHInterpolant fh_interpolant(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f,
                             Index d);

/// Floater-Hormann with d in 0..min(n-1, 20) picked by fitting the even-index
/// samples and scoring at the odd-index ones; smallest d wins near-ties.
FHInterpolant fh_adaptive(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f);

/// Exponential growth rate C of least-squares instability for oversampling gamma.
double growth_constant(double gamma);

} // namespace eqfit

#endif // EQFIT_BASELINES_HPP
