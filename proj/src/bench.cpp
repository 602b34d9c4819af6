#include "eqfit/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "eqfit/baselines.hpp"

namespace eqfit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct MethodEntry {
    MethodId id;
    std::string_view name;
};

constexpr std::array<MethodEntry, 8> kMethods = {{
    {MethodId::aaa, "aaa"},
    {MethodId::poly_cheb, "poly_cheb"},
    {MethodId::poly_monomial, "poly_monomial"},
    {MethodId::fourier_ext, "fourier_ext"},
    {MethodId::fourier_ext_va, "fourier_ext_va"},
    {MethodId::fourier_poly, "fourier_poly"},
    {MethodId::spline, "spline"},
    {MethodId::fh, "fh"},
}};

MethodFit wrap_linear(LinearFit fit) {
    MethodFit m;
    m.degree = fit.size() - 1;
    m.eval = [fit = std::move(fit)](double x) { return fit(x); };
    return m;
}

} // namespace

std::string_view method_name(MethodId id) {
    for (const auto& e : kMethods)
        if (e.id == id) return e.name;
    throw invalid_input("method_name: unknown method");
}

MethodId parse_method(std::string_view name) {
    for (const auto& e : kMethods)
        if (e.name == name) return e.id;
    throw invalid_input("unknown method '" + std::string(name) + "'");
}

std::vector<MethodConfig> parse_method_list(std::string_view list, const MethodConfig& defaults) {
    std::vector<MethodConfig> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = std::min(list.find(',', start), list.size());
        const std::string_view tok = list.substr(start, comma - start);
        if (!tok.empty()) {
            MethodConfig m = defaults;
            m.id = parse_method(tok);
            out.push_back(m);
        }
        start = comma + 1;
    }
    if (out.empty()) throw invalid_input("empty method list");
    return out;
}

std::vector<MethodConfig> comparison_methods() {
    std::vector<MethodConfig> out;
    for (MethodId id : {MethodId::spline, MethodId::poly_cheb, MethodId::fourier_ext, MethodId::fourier_poly,
                        MethodId::fh, MethodId::aaa}) {
        MethodConfig m;
        m.id = id;
        out.push_back(m);
    }
    return out;
}

MethodFit fit_method(const MethodConfig& method, const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXcd>& f) {
    switch (method.id) {
    case MethodId::aaa: {
        // Samples are taken on the equispaced grid, which fit_equispaced rebuilds.
        EquispacedFit fit = fit_equispaced(f, {method.tol, method.mmax, method.im_tol});
        MethodFit m;
        m.degree = fit.report.degree;
        m.is_interpolant = fit.report.is_interpolant;
        m.rescue = fit.report.rescue_applied;
        m.eval = [r = std::move(fit.approximant)](double t) { return evaluate(r, t); };
        return m;
    }
    case MethodId::poly_cheb: return wrap_linear(poly_ls_cheb(x, f, method.gamma));
    case MethodId::poly_monomial: return wrap_linear(poly_ls_monomial(x, f, method.gamma));
    case MethodId::fourier_ext: return wrap_linear(fourier_ext(x, f, method.half_width, method.gamma));
    case MethodId::fourier_ext_va: return wrap_linear(fourier_ext_va(x, f, method.half_width, method.gamma));
    case MethodId::fourier_poly: return wrap_linear(fourier_plus_poly(x, f, method.gamma));
    case MethodId::spline: {
        MethodFit m;
        m.degree = 3;
        m.is_interpolant = true;
        m.eval = [s = cubic_spline(x, f)](double t) { return s(t); };
        return m;
    }
    case MethodId::fh: {
        FHInterpolant r = fh_adaptive(x, f);
        MethodFit m;
        m.degree = r.blend_degree;
        m.is_interpolant = true;
        m.eval = [r = std::move(r)](double t) { return r(t); };
        return m;
    }
    }
    throw invalid_input("fit_method: unknown method");
}

std::vector<Index> n_sweep(Index nstep, Index nmax) {
    if (nstep < 1) throw invalid_input("n_sweep: step must be >= 1");
    std::vector<Index> out;
    for (Index n = nstep; n <= nmax; n += nstep)
        if (n >= 4) out.push_back(n);
    if (out.empty()) throw invalid_input("n_sweep: no n >= 4 in range");
    return out;
}

std::vector<ConvergenceCurve> run_convergence(TestFunctionId function, const std::vector<MethodConfig>& methods,
                                              const std::vector<Index>& n_values, Index grid_size, unsigned threads) {
    if (n_values.empty()) throw invalid_input("run_convergence: empty n list");
    for (Index n : n_values)
        if (n < 4) throw invalid_input("run_convergence: every n must be >= 4");
    if (grid_size < 2) throw invalid_input("run_convergence: grid_size must be >= 2");

    const TestFunction& fn = test_function(function);
    std::vector<ConvergenceCurve> curves(methods.size());
    for (std::size_t k = 0; k < methods.size(); ++k) {
        curves[k].function = fn.name;
        curves[k].method = methods[k];
        curves[k].points.resize(n_values.size());
    }

    const std::size_t tasks = methods.size() * n_values.size();
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < tasks; t = next++) {
            const std::size_t ni = t / methods.size(), mi = t % methods.size();
            const Index n = n_values[ni];
            CurvePoint& pt = curves[mi].points[ni];
            pt.n = n;
            try {
                const Eigen::VectorXd x = equispaced_grid(n);
                const Eigen::VectorXcd f = sample_equispaced(function, n);
                MethodFit fit = fit_method(methods[mi], x, f);
                pt.degree = fit.degree;
                pt.is_interpolant = fit.is_interpolant;
                pt.rescue = fit.rescue;
                pt.error = max_dense_error(fit.eval, function, grid_size);
            } catch (const std::exception&) {
                pt.error = kInf;
            }
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    return curves;
}

ComplexMap run_complex_map(TestFunctionId function, Index n, const std::array<double, 4>& box, Index res,
                           const FitOptions& options) {
    if (res < 2) throw invalid_input("run_complex_map: resolution must be >= 2");
    if (!(box[1] > box[0] && box[3] > box[2])) throw invalid_input("run_complex_map: empty box");

    const EquispacedFit fit = fit_equispaced(sample_equispaced(function, n), options);
    ComplexMap map;
    map.report = fit.report;
    map.re = Eigen::VectorXd::LinSpaced(res, box[0], box[1]);
    map.im = Eigen::VectorXd::LinSpaced(res, box[2], box[3]);
    map.abserr.resize(res, res);
    for (Index i = 0; i < res; ++i)
        for (Index j = 0; j < res; ++j) {
            const cplx z(map.re(j), map.im(i));
            const double e = std::abs(eval_test_function(function, z) - evaluate(fit.approximant, z));
            map.abserr(i, j) = std::isfinite(e) ? e : kInf;
        }

    if (const auto* b = std::get_if<BarycentricRational>(&fit.approximant)) {
        map.poles = poles(*b);
        map.residues.resize(map.poles.size());
        for (Index k = 0; k < map.poles.size(); ++k) {
            try {
                map.residues(k) = residues(*b, map.poles.segment(k, 1))(0);
            } catch (const degenerate_error&) {
                map.residues(k) = {std::nan(""), std::nan("")};
            }
        }
    } else {
        const auto& pf = std::get<PartialFractionRational>(fit.approximant);
        map.poles = pf.poles;
        map.residues = pf.residues;
    }
    return map;
}

} // namespace eqfit
