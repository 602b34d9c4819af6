#include "eqfit/testlib.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "eqfit/chebyshev.hpp"
#include "eqfit/errors.hpp"
#include "eqfit/rational.hpp"

namespace eqfit {

namespace {

cplx f_e(cplx z) {
    if (z == cplx(0.0)) return 0.0;
    return std::exp(-1.0 / (z * z));
}

std::array<double, 54> make_amber_coeffs() {
    // 2^52 * pi is an exact double (an integer below 2^54), so the cast is exact.
    const auto bits = static_cast<std::uint64_t>(std::ldexp(std::numbers::pi, 52));
    std::array<double, 54> c{};
    for (int k = 0; k < 54; ++k) {
        const bool one = (bits >> (53 - k)) & 1u;
        c[static_cast<std::size_t>(k)] = (one ? 1.0 : -1.0) * std::ldexp(1.0, -k);
    }
    return c;
}

} // namespace

const std::array<double, 54>& amber_coeffs() {
    static const std::array<double, 54> c = make_amber_coeffs();
    return c;
}

cplx amber_eval(cplx z) {
    const auto& c = amber_coeffs();
    return clenshaw(Eigen::Map<const Eigen::VectorXd>(c.data(), 54), z);
}

cplx eval_test_function(TestFunctionId id, cplx z) {
    switch (id) {
    case TestFunctionId::fA: return std::sqrt(1.21 - z * z);
    case TestFunctionId::fB: return std::sqrt(0.01 + z * z);
    case TestFunctionId::fC: return std::tanh(5.0 * z);
    case TestFunctionId::fD: return std::sin(40.0 * z);
    case TestFunctionId::fE: return f_e(z);
    case TestFunctionId::amber: return amber_eval(z);
    case TestFunctionId::runge: return 1.0 / (1.0 + 25.0 * z * z);
    case TestFunctionId::sum6:
        return std::sqrt(1.21 - z * z) + std::sqrt(0.01 + z * z) + std::tanh(5.0 * z) + std::sin(40.0 * z) + f_e(z) +
               amber_eval(z);
    case TestFunctionId::expsqrt: return std::exp(z) / std::sqrt(1.0 + 9.0 * z * z);
    }
    throw invalid_input("eval_test_function: unknown id");
}

cplx TestFunction::operator()(cplx z) const { return eval_test_function(id, z); }

const std::vector<TestFunction>& test_functions() {
    static const std::vector<TestFunction> all = {
        {TestFunctionId::fA, "fA", "sqrt(1.21-x^2)"},
        {TestFunctionId::fB, "fB", "sqrt(0.01+x^2)"},
        {TestFunctionId::fC, "fC", "tanh(5x)"},
        {TestFunctionId::fD, "fD", "sin(40x)"},
        {TestFunctionId::fE, "fE", "exp(-1/x^2)"},
        {TestFunctionId::amber, "amber", "sum_k 2^-k s_k T_k(x)"},
        {TestFunctionId::runge, "runge", "1/(1+25x^2)"},
        {TestFunctionId::sum6, "sum6", "fA+fB+fC+fD+fE+amber"},
        {TestFunctionId::expsqrt, "expsqrt", "exp(x)/sqrt(1+9x^2)"},
    };
    return all;
}

const TestFunction& test_function(TestFunctionId id) {
    for (const auto& f : test_functions())
        if (f.id == id) return f;
    throw invalid_input("test_function: unknown id");
}

const TestFunction& test_function(std::string_view name) {
    for (const auto& f : test_functions())
        if (f.name == name) return f;
    throw invalid_input("unknown test function '" + std::string(name) + "'");
}

double max_dense_error(const std::function<cplx(double)>& approx, TestFunctionId id, Eigen::Index grid_size) {
    if (grid_size < 2) throw invalid_input("max_dense_error: grid_size must be >= 2");
    const Eigen::VectorXd xs = equispaced_grid(grid_size);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < grid_size; ++i) {
        const cplx r = approx(xs(i));
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, std::abs(eval_test_function(id, xs(i)) - r));
    }
    return worst;
}

Eigen::VectorXcd sample_equispaced(TestFunctionId id, Eigen::Index n) {
    const Eigen::VectorXd xs = equispaced_grid(n);
    Eigen::VectorXcd f(n);
    for (Eigen::Index i = 0; i < n; ++i) f(i) = eval_test_function(id, xs(i));
    return f;
}

} // namespace eqfit
