#ifndef EQFIT_CHEBYSHEV_HPP
#define EQFIT_CHEBYSHEV_HPP

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>
#include <vector>

#include "eqfit/errors.hpp"

namespace eqfit {

using Index = Eigen::Index;

/// Chebyshev points of the second kind x_j = cos(j pi / m), j = 0..m (descending).
inline Eigen::VectorXd cheb_points(Index m) {
    if (m < 0) throw invalid_input("cheb_points: negative degree");
    if (m == 0) return Eigen::VectorXd::Zero(1);
    Eigen::VectorXd x(m + 1);
    // sin form keeps the grid exactly antisymmetric
    for (Index j = 0; j <= m; ++j)
        x(j) = std::sin(std::numbers::pi * static_cast<double>(m - 2 * j) / (2.0 * static_cast<double>(m)));
    return x;
}

namespace detail {

// Y_k = sum_j ext_j exp(-i pi j k / m) for the even extension of length 2m.
inline std::vector<std::complex<double>> even_extension_dft(const std::vector<std::complex<double>>& v) {
    const std::size_t m = v.size() - 1;
    std::vector<std::complex<double>> ext(2 * m);
    for (std::size_t j = 0; j <= m; ++j) ext[j] = v[j];
    for (std::size_t j = 1; j < m; ++j) ext[2 * m - j] = v[j];
    std::vector<std::complex<double>> out;
    Eigen::FFT<double> fft;
    fft.fwd(out, ext);
    return out;
}

template <typename Scalar>
Scalar from_complex(const std::complex<double>& z) {
    if constexpr (std::is_same_v<Scalar, double>)
        return z.real();
    else
        return z;
}

} // namespace detail

/// Values at cheb_points(m) to Chebyshev coefficients c_0..c_m.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> cheb_transform(const Eigen::MatrixBase<Derived>& values) {
    using Scalar = typename Derived::Scalar;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const Index n = values.size();
    if (n < 1) throw invalid_input("cheb_transform: need at least one value");
    if (n == 1) return Vector(values);
    const Index m = n - 1;
    std::vector<std::complex<double>> v(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = std::complex<double>(values(j));
    auto y = detail::even_extension_dft(v);
    Vector c(n);
    const double md = static_cast<double>(m);
    for (Index k = 0; k <= m; ++k) {
        const double scale = (k == 0 || k == m) ? 0.5 / md : 1.0 / md;
        c(k) = detail::from_complex<Scalar>(y[static_cast<std::size_t>(k)] * scale);
    }
    return c;
}

/// Inverse of cheb_transform: coefficients c_0..c_m to values at cheb_points(m).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
cheb_inverse_transform(const Eigen::MatrixBase<Derived>& coeffs) {
    using Scalar = typename Derived::Scalar;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const Index n = coeffs.size();
    if (n < 1) throw invalid_input("cheb_inverse_transform: need at least one coefficient");
    if (n == 1) return Vector(coeffs);
    const Index m = n - 1;
    std::vector<std::complex<double>> a(static_cast<std::size_t>(n));
    for (Index k = 0; k <= m; ++k) {
        const double scale = (k == 0 || k == m) ? 1.0 : 0.5;
        a[static_cast<std::size_t>(k)] = std::complex<double>(coeffs(k)) * scale;
    }
    auto y = detail::even_extension_dft(a);
    Vector v(n);
    for (Index j = 0; j <= m; ++j) v(j) = detail::from_complex<Scalar>(y[static_cast<std::size_t>(j)]);
    return v;
}

/// Clenshaw backward recurrence for sum_k c_k T_k(x); x may be real or complex.
template <typename Derived, typename Arg>
auto clenshaw(const Eigen::MatrixBase<Derived>& c, Arg x) {
    using Scalar = typename Derived::Scalar;
    using Result = decltype(Scalar{} * Arg{});
    const Index n = c.size();
    if (n == 0) return Result{};
    Result b1{}, b2{};
    for (Index k = n - 1; k >= 1; --k) {
        Result b0 = Result(c(k)) + Result(2.0) * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return Result(c(0)) + x * b1 - b2;
}

/// Length of the coefficient prefix to keep: the plateau-detecting chop rule
/// of Aurentz and Trefethen. Returns coeffs.size() when no plateau is found.
Index standard_chop(const Eigen::Ref<const Eigen::VectorXd>& abs_coeffs, double tol);

} // namespace eqfit

#endif // EQFIT_CHEBYSHEV_HPP
