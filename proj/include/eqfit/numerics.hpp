#ifndef EQFIT_NUMERICS_HPP
#define EQFIT_NUMERICS_HPP

// Dense kernels shared by every fitter: SVD, truncated minimum-norm least
// squares, and finite generalized eigenvalues by null-space deflation.
// Callers pass complex matrices; the templates also accept real ones.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <complex>
#include <limits>

#include "eqfit/errors.hpp"

namespace eqfit {

using Index = Eigen::Index;
using cplx = std::complex<double>;

template <typename Scalar>
struct SvdResult {
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    Eigen::Matrix<Real, Eigen::Dynamic, 1> singular_values; // descending
    Matrix left_vectors;
    Matrix right_vectors;
};

/// Singular value decomposition A = U diag(s) V^*.
///
/// Thin U and V by default. With `full_right` the right factor is square,
/// which AAA needs when the Loewner matrix is wider than tall.
template <typename Derived>
SvdResult<typename Derived::Scalar> svd(const Eigen::MatrixBase<Derived>& a, bool full_right = false) {
    using Scalar = typename Derived::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (a.rows() < 1 || a.cols() < 1) throw invalid_input("svd: empty matrix");
    if (!a.allFinite()) throw invalid_input("svd: non-finite entries");

    const unsigned opts = Eigen::ComputeThinU | (full_right ? Eigen::ComputeFullV : Eigen::ComputeThinV);
    Eigen::JacobiSVD<Matrix> dec(Matrix(a), opts);
    return {dec.singularValues(), dec.matrixU(), dec.matrixV()};
}

/// Minimum-norm solution of min ||Ax - b||_2 with singular values below
/// rtol * sigma_1 treated as zero.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, 1>
least_squares_min_norm(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                       double rtol = 1e-14) {
    using Scalar = typename DerivedA::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    if (a.rows() < 1 || a.cols() < 1) throw invalid_input("least_squares_min_norm: empty matrix");
    if (b.size() != a.rows()) throw invalid_input("least_squares_min_norm: rhs length mismatch");
    if (!(rtol > 0.0 && rtol < 1.0)) throw invalid_input("least_squares_min_norm: rtol must lie in (0,1)");
    if (!a.allFinite() || !b.allFinite()) throw invalid_input("least_squares_min_norm: non-finite entries");

    Eigen::JacobiSVD<Matrix> dec(Matrix(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = dec.singularValues();
    const double cutoff = rtol * s(0);
    Vector utb = dec.matrixU().adjoint() * Vector(b);
    for (Index k = 0; k < s.size(); ++k) utb(k) = s(k) > cutoff ? Scalar(utb(k) / s(k)) : Scalar(0);
    return dec.matrixV() * utb;
}

namespace detail {

template <typename Derived>
bool has_real_entries(const Eigen::MatrixBase<Derived>& m) {
    if constexpr (Eigen::NumTraits<typename Derived::Scalar>::IsComplex)
        return (m.imag().array() == 0.0).all();
    else
        return true;
}

// Real QZ. Eigenvalues with beta below the backward-error level of B are infinite.
inline Eigen::VectorXcd real_pencil_eig(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const Index n = a.rows();
    Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges(a, b, false);
    if (ges.info() != Eigen::Success) throw degenerate_error("generalized_eig: QZ iteration failed");
    const double tol = 10.0 * static_cast<double>(n) * eps;
    const double a_norm = a.norm(), b_norm = b.norm();
    Eigen::VectorXcd out(n);
    Index count = 0;
    for (Index i = 0; i < n; ++i) {
        const cplx alpha = ges.alphas()(i);
        const double beta = ges.betas()(i);
        if (std::abs(beta) <= tol * b_norm) {
            if (std::abs(alpha) <= tol * a_norm) throw degenerate_error("generalized_eig: singular pencil");
            continue;
        }
        out(count++) = alpha / beta;
    }
    return out.head(count);
}

} // namespace detail

/// Finite eigenvalues of the pencil A - lambda B.
///
/// Real pencils go through the real QZ algorithm. Otherwise the null space of
/// B is deflated repeatedly until the reduced B is invertible; each deflation
/// removes the infinite eigenvalues it carries.
/// Throws degenerate_error when the pencil is singular (det(A - lambda B) == 0).
template <typename DerivedA, typename DerivedB>
Eigen::VectorXcd generalized_eig(const Eigen::MatrixBase<DerivedA>& a_in, const Eigen::MatrixBase<DerivedB>& b_in) {
    using Matrix = Eigen::MatrixXcd;
    if (a_in.rows() != a_in.cols() || b_in.rows() != b_in.cols() || a_in.rows() != b_in.rows())
        throw invalid_input("generalized_eig: A and B must be square and of equal size");
    if (!a_in.allFinite() || !b_in.allFinite()) throw invalid_input("generalized_eig: non-finite entries");
    if (a_in.rows() == 0) return Eigen::VectorXcd(0);
    if (detail::has_real_entries(a_in) && detail::has_real_entries(b_in))
        return detail::real_pencil_eig(a_in.real().template cast<double>(), b_in.real().template cast<double>());

    Matrix a = a_in.template cast<cplx>();
    Matrix b = b_in.template cast<cplx>();
    constexpr double eps = std::numeric_limits<double>::epsilon();

    while (a.rows() > 0) {
        const Index n = a.rows();
        Eigen::JacobiSVD<Matrix> bsvd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Eigen::VectorXd& sb = bsvd.singularValues();
        const double thresh = 10.0 * static_cast<double>(n) * eps * sb(0);
        Index rank = 0;
        while (rank < n && sb(rank) > thresh) ++rank;

        if (rank == n) {
            Matrix reduced = b.fullPivLu().solve(a);
            Eigen::ComplexEigenSolver<Matrix> es(reduced, false);
            if (es.info() != Eigen::Success) throw degenerate_error("generalized_eig: eigensolver failed");
            return es.eigenvalues();
        }

        // In the SVD coordinates B = diag(s, 0); the trailing rows of the
        // transformed A are constraints on the eigenvector.
        Matrix at = bsvd.matrixU().adjoint() * a * bsvd.matrixV();
        const Index k = n - rank;
        Eigen::JacobiSVD<Matrix> csvd(at.bottomRows(k), Eigen::ComputeFullV);
        const Eigen::VectorXd& sc = csvd.singularValues();
        const double cthresh = 10.0 * static_cast<double>(n) * eps * std::max(sc(0), at.norm());
        if (sc(k - 1) <= cthresh) throw degenerate_error("generalized_eig: singular pencil");
        Matrix null_basis = csvd.matrixV().rightCols(rank);

        a = at.topRows(rank) * null_basis;
        b = sb.head(rank).cast<cplx>().asDiagonal() * null_basis.topRows(rank);
    }
    return Eigen::VectorXcd(0);
}

} // namespace eqfit

#endif // EQFIT_NUMERICS_HPP
