#ifndef EQFIT_RATIONAL_HPP
#define EQFIT_RATIONAL_HPP

// AAA rational approximation of equispaced data with the AAA-LS rescue for
// poles that land in [-1,1], plus conversion to a Chebyshev series.

#include <Eigen/Dense>

#include <complex>
#include <iosfwd>
#include <limits>
#include <variant>
#include <vector>

#include "eqfit/numerics.hpp"

namespace eqfit {

/// r(z) = sum_j w_j f_j / (z - t_j) / sum_j w_j / (z - t_j), degree = size - 1.
struct BarycentricRational {
    Eigen::VectorXd support_points;
    Eigen::VectorXcd support_values;
    Eigen::VectorXcd weights;

    Index degree() const { return support_points.size() - 1; }
    cplx operator()(cplx z) const;
};

/// r(z) = c + sum_k a_k / (z - p_k).
struct PartialFractionRational {
    Eigen::VectorXcd poles;
    Eigen::VectorXcd residues;
    cplx constant{0.0, 0.0};

    Index degree() const { return poles.size(); }
    cplx operator()(cplx z) const;
};

using Approximant = std::variant<BarycentricRational, PartialFractionRational>;

struct FitReport {
    Index degree = 0;
    double grid_residual = 0.0; // max |F - r| on the samples, relative to max |F|
    bool is_interpolant = false;
    Index n_bad_poles = 0;
    bool rescue_applied = false;
};

struct AaaResult {
    BarycentricRational rational;
    FitReport report;
};

struct EquispacedFit {
    Approximant approximant;
    FitReport report;
};

struct FitOptions {
    double tol = 1e-13;
    Index mmax = 99;
    double im_tol = 1e-8;
};

/// Coefficients c_0..c_d of sum_k c_k T_k(x).
struct ChebyshevPolynomial {
    Eigen::VectorXd coefficients;

    Index degree() const { return coefficients.size() - 1; }
    double operator()(double x) const;
    cplx operator()(cplx z) const;
};

/// Values of a grid evaluation plus the indices that hit a pole exactly.
struct GridValues {
    Eigen::VectorXcd values;
    std::vector<Index> singular;
};

/// n equispaced points x_j = -1 + 2j/(n-1), exactly antisymmetric.
Eigen::VectorXd equispaced_grid(Index n);

/// Degree at which AAA on n points becomes an interpolant: ceil((n-1)/2).
inline Index interpolant_degree(Index n) { return n / 2; }

/// Greedy AAA. The degree is capped by min(mmax, ceil((n-1)/2)); reaching the
/// latter yields an interpolant of the whole grid.
AaaResult aaa_fit(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f,
                  double tol = 1e-13, Index mmax = 99);

cplx bary_eval(const BarycentricRational& r, cplx z);

/// The degree() finite eigenvalues of the arrowhead pencil of r, sorted by (Re, Im).
Eigen::VectorXcd poles(const BarycentricRational& r);
Eigen::VectorXcd zeros(const BarycentricRational& r);

/// N(p)/D'(p) at each pole. Throws degenerate_error if a pole sits on a support point.
Eigen::VectorXcd residues(const BarycentricRational& r, const Eigen::Ref<const Eigen::VectorXcd>& p);

/// Indices of poles with Re in [-1,1] and |Im| <= im_tol.
std::vector<Index> detect_bad_poles(const Eigen::Ref<const Eigen::VectorXcd>& p, double im_tol = 1e-8);

/// Least-squares fit c + sum_k a_k/(x - p_k) over the given poles. For real data
/// the pole set is symmetrized into conjugate pairs and the fit is done in the
/// real basis, so the result is real on the real line.
PartialFractionRational aaa_ls(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f,
                               const Eigen::Ref<const Eigen::VectorXcd>& good_poles, double im_tol = 1e-8);

/// AAA on equispaced samples; falls back to aaa_ls when bad poles appear.
EquispacedFit fit_equispaced(const Eigen::Ref<const Eigen::VectorXcd>& f, const FitOptions& options = {});

/// Adaptive Chebyshev series of the real part of r on [-1,1].
/// Throws not_resolvable if no plateau is found by degree 2^16.
ChebyshevPolynomial to_chebyshev(const Approximant& r, double tol = std::numeric_limits<double>::epsilon());

cplx evaluate(const Approximant& r, cplx z);
GridValues eval_on_grid(const Approximant& r, const Eigen::Ref<const Eigen::VectorXcd>& points);

/// Poles of either variant (empty for degree 0).
Eigen::VectorXcd approximant_poles(const Approximant& r);

// Plain-text serialization; see rational_io.cpp for the format.
void write_approximant(std::ostream& os, const Approximant& r, double tol);
Approximant read_approximant(std::istream& is, double* tol = nullptr);

} // namespace eqfit

#endif // EQFIT_RATIONAL_HPP
