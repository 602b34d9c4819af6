#ifndef EQFIT_TESTLIB_HPP
#define EQFIT_TESTLIB_HPP

// Benchmark functions on [-1,1], all evaluable at complex arguments.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace eqfit {

using cplx = std::complex<double>;

enum class TestFunctionId {
    fA,      // sqrt(1.21 - z^2)
    fB,      // sqrt(0.01 + z^2)
    fC,      // tanh(5z)
    fD,      // sin(40z)
    fE,      // exp(-1/z^2), 0 at z = 0
    amber,   // Chebyshev series with coefficients +-2^-k, signs from the bits of pi
    runge,   // 1/(1 + 25 z^2)
    sum6,    // fA + fB + fC + fD + fE + amber
    expsqrt, // exp(z)/sqrt(1 + 9 z^2)
};

struct TestFunction {
    TestFunctionId id;
    std::string name;  // identifier used on the command line and in CSV output
    std::string label; // human-readable formula
    cplx operator()(cplx z) const;
};

const std::vector<TestFunction>& test_functions();
const TestFunction& test_function(TestFunctionId id);
/// Lookup by identifier; throws invalid_input for unknown names.
const TestFunction& test_function(std::string_view name);

cplx eval_test_function(TestFunctionId id, cplx z);

/// c_0..c_53 with |c_k| = 2^-k and sign + where bit k of floor(2^52 pi) is 1
/// (most significant bit first).
const std::array<double, 54>& amber_coeffs();
cplx amber_eval(cplx z);

/// max |f(x) - r(x)| over grid_size equispaced points of [-1,1]; any
/// non-finite value of r makes the result +inf.
double max_dense_error(const std::function<cplx(double)>& approx, TestFunctionId id, Eigen::Index grid_size = 1000);

/// Samples of f at the n-point equispaced grid.
Eigen::VectorXcd sample_equispaced(TestFunctionId id, Eigen::Index n);

} // namespace eqfit

#endif // EQFIT_TESTLIB_HPP
