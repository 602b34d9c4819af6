#include "eqfit/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "eqfit/baselines.hpp"
#include "eqfit/bench.hpp"
#include "eqfit/chebyshev.hpp"
#include "eqfit/rational.hpp"
#include "eqfit/testlib.hpp"

namespace eqfit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double m = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit l;
    l.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    l.intercept = (sy - l.slope * sx) / m;
    return l;
}

const ConvergenceCurve& curve_for(const std::vector<ConvergenceCurve>& curves, MethodId id) {
    for (const auto& c : curves)
        if (c.method.id == id) return c;
    throw invalid_input("curve_for: method not in sweep");
}

std::vector<MethodConfig> methods_of(std::initializer_list<MethodId> ids) {
    std::vector<MethodConfig> out;
    for (MethodId id : ids) {
        MethodConfig m;
        m.id = id;
        out.push_back(m);
    }
    return out;
}

// First n at which the curve reaches `level`; +inf if never.
double first_reaching(const ConvergenceCurve& c, double level) {
    for (const auto& p : c.points)
        if (p.error <= level) return static_cast<double>(p.n);
    return kInf;
}

std::size_t argmin_error(const ConvergenceCurve& c) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < c.points.size(); ++i)
        if (c.points[i].error < c.points[best].error) best = i;
    return best;
}

// Amber sweep to n = 400, shared by the parity and basis-swap checks.
const std::vector<ConvergenceCurve>& amber_sweep() {
    static const std::vector<ConvergenceCurve> curves = run_convergence(
        TestFunctionId::amber,
        methods_of({MethodId::aaa, MethodId::fh, MethodId::poly_cheb, MethodId::poly_monomial, MethodId::fourier_ext,
                    MethodId::fourier_ext_va}),
        n_sweep(4, 400));
    return curves;
}

struct ExpSqrtFit {
    Eigen::VectorXd x;
    Eigen::VectorXcd f;
    EquispacedFit fit;
    double seconds = 0.0;
};

const ExpSqrtFit& expsqrt_fit() {
    static const ExpSqrtFit cached = [] {
        ExpSqrtFit r;
        r.x = equispaced_grid(50);
        r.f = sample_equispaced(TestFunctionId::expsqrt, 50);
        const auto t0 = std::chrono::steady_clock::now();
        r.fit = fit_equispaced(r.f);
        r.seconds = seconds_since(t0);
        return r;
    }();
    return cached;
}

CriterionResult expsqrt_fit_check() {
    const ExpSqrtFit& c = expsqrt_fit();
    double resid = 0.0;
    for (Index j = 0; j < c.x.size(); ++j) resid = std::max(resid, std::abs(c.f(j) - evaluate(c.fit.approximant, c.x(j))));
    const double err =
        max_dense_error([&](double t) { return evaluate(c.fit.approximant, t); }, TestFunctionId::expsqrt);
    const Index deg = c.fit.report.degree;
    const bool ok = !c.fit.report.rescue_applied && deg >= 16 && deg <= 18 && resid <= 1e-12 && err <= 5e-13 &&
                    c.seconds < 0.1;
    return {1, "", ok,
            fmt("degree %ld (16..18), grid residual %.2e (<=1e-12), dense error %.2e (<=5e-13), %.1f ms (<100)",
                static_cast<long>(deg), resid, err, 1e3 * c.seconds)};
}

CriterionResult runge_catastrophe() {
    const ExpSqrtFit& c = expsqrt_fit();
    const FHInterpolant p = fh_interpolant(c.x, c.f, c.x.size() - 1);
    const double err = max_dense_error([&](double t) { return p(t); }, TestFunctionId::expsqrt);
    return {2, "", err >= 50.0 && err <= 250.0, fmt("degree-49 interpolant dense error %.4g (in [50, 250])", err)};
}

CriterionResult chebyshev_conversion() {
    const ExpSqrtFit& c = expsqrt_fit();
    const ChebyshevPolynomial p = to_chebyshev(c.fit.approximant);
    const double err = max_dense_error([&](double t) { return cplx(p(t)); }, TestFunctionId::expsqrt);
    const Index deg = p.degree();
    return {3, "", deg >= 96 && deg <= 112 && err <= 1e-12,
            fmt("degree %ld (104 +- 8), dense error %.2e (<=1e-12)", static_cast<long>(deg), err)};
}

CriterionResult growth_constants() {
    const double c2 = growth_constant(2.0), c1 = growth_constant(1.0);
    const double ref = std::pow(3.0, 0.75) / 2.0;
    const bool ok = std::abs(c2 - ref) <= 1e-12 && std::abs(c2 - 1.139754) < 5e-7 && std::abs(c1 - 2.0) <= 1e-12;
    return {4, "", ok, fmt("C(2) = %.15f (3^(3/4)/2 = %.15f), C(1) = %.15f", c2, ref, c1)};
}

CriterionResult instability_signature() {
    const double target = std::log10(1.14);
    bool ok = true;
    std::string detail;
    for (TestFunctionId id : {TestFunctionId::fA, TestFunctionId::fD}) {
        const auto curves = run_convergence(id, methods_of({MethodId::poly_cheb}), n_sweep(1, 260));
        const ConvergenceCurve& c = curves.front();
        const std::size_t i0 = argmin_error(c);
        std::vector<double> n, le;
        for (std::size_t i = i0 + 1; i < c.points.size() && std::isfinite(c.points[i].error); ++i) {
            n.push_back(static_cast<double>(c.points[i].n));
            le.push_back(std::log10(c.points[i].error));
        }
        const bool enough = n.size() >= 40;
        const LineFit l = enough ? fit_line(n, le) : LineFit{};
        const double ratio = l.slope / target;
        const bool this_ok = enough && ratio >= 0.5 && ratio <= 1.5 && l.intercept >= -18.0 && l.intercept <= -14.0;
        ok = ok && this_ok;
        detail += fmt("%s: min at n=%ld, %zu pts, slope/log10(1.14) %.3f, log10 err at n=0 %.2f; ",
                      test_function(id).name.c_str(), static_cast<long>(c.points[i0].n), n.size(), ratio, l.intercept);
    }
    return {5, "", ok, detail};
}

CriterionResult aaa_first_to_1e10() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (TestFunctionId id :
         {TestFunctionId::fA, TestFunctionId::fB, TestFunctionId::fC, TestFunctionId::fD, TestFunctionId::fE}) {
        const auto curves = run_convergence(id, comparison_methods(), n_sweep(4, 200));
        const double n_aaa = first_reaching(curve_for(curves, MethodId::aaa), 1e-10);
        double n_other = kInf;
        std::string who = "none";
        for (const auto& c : curves) {
            if (c.method.id == MethodId::aaa) continue;
            const double n = first_reaching(c, 1e-10);
            if (n < n_other) {
                n_other = n;
                who = std::string(method_name(c.method.id));
            }
        }
        const bool this_ok = std::isfinite(n_aaa) && n_aaa <= n_other;
        ok = ok && this_ok;
        detail += fmt("%s aaa@%g best-other %s@%g%s; ", test_function(id).name.c_str(), n_aaa, who.c_str(), n_other,
                      this_ok ? "" : " (LOST)");
    }
    const double secs = seconds_since(t0);
    ok = ok && secs < 600.0;
    detail += fmt("sweep %.1f s (<600)", secs);
    return {6, "", ok, detail};
}

CriterionResult spline_rate() {
    std::vector<Index> ns;
    for (Index n = 40; n <= 200; ++n) ns.push_back(n);
    const auto curves = run_convergence(TestFunctionId::fD, methods_of({MethodId::spline}), ns);
    std::vector<double> ln, le;
    for (const auto& p : curves.front().points) {
        ln.push_back(std::log(static_cast<double>(p.n)));
        le.push_back(std::log(p.error));
    }
    const double slope = fit_line(ln, le).slope;
    return {7, "", slope >= -4.5 && slope <= -3.5, fmt("log-log slope over n in [40, 200]: %.3f (in [-4.5, -3.5])", slope)};
}

CriterionResult amber_parity() {
    const auto& curves = amber_sweep();
    const ConvergenceCurve& a = curve_for(curves, MethodId::aaa);
    const ConvergenceCurve& h = curve_for(curves, MethodId::fh);
    double worst = 0.0;
    Index worst_n = 0;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        const double ea = a.points[i].error, eh = h.points[i].error;
        if (!(ea < 1e-2 && eh < 1e-2)) continue;
        const double gap = std::abs(std::log10(ea) - std::log10(eh));
        if (gap > worst) {
            worst = gap;
            worst_n = a.points[i].n;
        }
    }
    return {8, "", worst <= 2.0,
            fmt("max |log10 err_aaa - log10 err_fh| = %.3f at n=%ld (<=2)", worst, static_cast<long>(worst_n))};
}

CriterionResult basis_swap() {
    const auto& curves = amber_sweep();
    const ConvergenceCurve& fe = curve_for(curves, MethodId::fourier_ext);
    const ConvergenceCurve& va = curve_for(curves, MethodId::fourier_ext_va);
    const ConvergenceCurve& mono = curve_for(curves, MethodId::poly_monomial);
    const ConvergenceCurve& cheb = curve_for(curves, MethodId::poly_cheb);

    const double fe_floor = fe.points[argmin_error(fe)].error;
    const std::size_t iva = argmin_error(va);
    const double va_min = va.points[iva].error;
    double va_after = 0.0;
    for (std::size_t i = iva; i < va.points.size(); ++i) va_after = std::max(va_after, va.points[i].error);
    const bool dives = va_min <= 1e-3 * fe_floor;
    const bool rises = va_after >= 1e3 * va_min;

    // Bounded: nothing after the minimum climbs more than two decades above it.
    const std::size_t imono = argmin_error(mono);
    double mono_after = 0.0;
    for (std::size_t i = imono; i < mono.points.size(); ++i) mono_after = std::max(mono_after, mono.points[i].error);
    const bool mono_bounded = mono_after <= 1e2 * mono.points[imono].error;
    const double cheb_min = cheb.points[argmin_error(cheb)].error;
    const bool cheb_diverges = cheb.points.back().error >= 1e6 * cheb_min;

    return {9, "", dives && rises && mono_bounded && cheb_diverges,
            fmt("va min %.2e at n=%ld vs fourier_ext floor %.2e (need 1e3 below: %s), va rises to %.2e (%s); "
                "monomial min %.2e max-after %.2e (%s); cheb min %.2e final %.2e (%s)",
                va_min, static_cast<long>(va.points[iva].n), fe_floor, dives ? "yes" : "no", va_after,
                rises ? "yes" : "no", mono.points[imono].error, mono_after, mono_bounded ? "bounded" : "grows",
                cheb_min, cheb.points.back().error, cheb_diverges ? "diverges" : "bounded")};
}

CriterionResult sum6_rescue() {
    ConvergenceCurve curve;
    curve.function = test_function(TestFunctionId::sum6).name;
    curve.method.id = MethodId::aaa;
    bool all_clean = true;
    std::vector<Index> rescued;
    for (Index n : n_sweep(4, 280)) {
        if (n < 180) continue;
        const EquispacedFit fit = fit_equispaced(sample_equispaced(TestFunctionId::sum6, n));
        const bool clean = detect_bad_poles(approximant_poles(fit.approximant)).empty();
        all_clean = all_clean && clean;
        if (fit.report.rescue_applied) rescued.push_back(n);
        CurvePoint p;
        p.n = n;
        p.degree = fit.report.degree;
        p.is_interpolant = fit.report.is_interpolant;
        p.rescue = fit.report.rescue_applied;
        p.error = max_dense_error([&](double t) { return evaluate(fit.approximant, t); }, TestFunctionId::sum6);
        curve.points.push_back(p);
    }

    std::stringstream csv;
    write_convergence_csv(csv, {curve});
    std::vector<Index> flagged;
    for (const auto& row : read_convergence_csv(csv))
        if (row.rescue) flagged.push_back(row.n);

    std::string list;
    for (Index n : rescued) list += fmt("%ld ", static_cast<long>(n));
    const bool ok = !rescued.empty() && all_clean && flagged == rescued;
    return {10, "", ok,
            fmt("rescue at n = %s(n in 180..280 step 4); fits bad-pole-free: %s; csv flags match: %s", list.c_str(),
                all_clean ? "yes" : "no", flagged == rescued ? "yes" : "no")};
}

CriterionResult invariants() {
    std::string failures;
    auto check = [&](bool cond, const std::string& what) {
        if (!cond) failures += what + "; ";
    };

    // Support-point interpolation and conjugate symmetry on real data.
    double conj_worst = 0.0;
    for (TestFunctionId id : {TestFunctionId::fA, TestFunctionId::fC, TestFunctionId::fD, TestFunctionId::amber,
                              TestFunctionId::expsqrt, TestFunctionId::runge}) {
        for (Index n : {20, 50, 80}) {
            const AaaResult a = aaa_fit(equispaced_grid(n), sample_equispaced(id, n));
            const BarycentricRational& r = a.rational;
            for (Index j = 0; j < r.support_points.size(); ++j)
                check(r(r.support_points(j)) == r.support_values(j),
                      "support interpolation " + test_function(id).name);
            const Eigen::VectorXcd p = poles(r);
            for (Index k = 0; k < p.size(); ++k) {
                double d = kInf;
                for (Index m = 0; m < p.size(); ++m) d = std::min(d, std::abs(std::conj(p(k)) - p(m)));
                conj_worst = std::max(conj_worst, d / std::max(1.0, std::abs(p(k))));
            }
        }
    }
    check(conj_worst <= 1e-10, fmt("conjugate symmetry %.2e", conj_worst));

    // Weight-scale invariance. Binary factors scale exactly, so they apply to
    // every fit; a general complex factor perturbs the weights at rounding
    // level, which only well-conditioned poles survive at this tolerance.
    {
        struct Case {
            TestFunctionId id;
            Index n;
            cplx factor;
        };
        for (const Case& cs : {Case{TestFunctionId::expsqrt, 50, 2.0}, Case{TestFunctionId::expsqrt, 50, -0.5},
                               Case{TestFunctionId::fC, 30, 2.0},
                               Case{TestFunctionId::fA, 40, -0.5}, Case{TestFunctionId::runge, 20, {-2.5, 1.5}}}) {
            const AaaResult a = aaa_fit(equispaced_grid(cs.n), sample_equispaced(cs.id, cs.n));
            BarycentricRational s = a.rational;
            s.weights *= cs.factor;
            auto rel_gap = [](const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
                if (u.size() != v.size()) return kInf;
                double worst = 0.0;
                for (Index k = 0; k < u.size(); ++k) {
                    double d = kInf;
                    for (Index m = 0; m < v.size(); ++m)
                        d = std::min(d, std::abs(u(k) - v(m)) / std::max(1.0, std::abs(u(k))));
                    worst = std::max(worst, d);
                }
                return worst;
            };
            const std::string tag = fmt(" (%s, factor %g%+gi)", test_function(cs.id).name.c_str(), cs.factor.real(),
                                        cs.factor.imag());
            const Eigen::VectorXcd p0 = poles(a.rational), p1 = poles(s);
            const double pg = rel_gap(p0, p1), zg = rel_gap(zeros(a.rational), zeros(s));
            check(pg <= 1e-13, fmt("pole scale invariance %.2e", pg) + tag);
            check(zg <= 1e-13, fmt("zero scale invariance %.2e", zg) + tag);
            const Eigen::VectorXcd r0 = residues(a.rational, p0), r1 = residues(s, p0);
            double rg = 0.0;
            for (Index k = 0; k < r0.size(); ++k) rg = std::max(rg, std::abs(r0(k) - r1(k)) / std::max(1.0, std::abs(r0(k))));
            check(rg <= 1e-13, fmt("residue scale invariance %.2e", rg) + tag);
            double ev = 0.0;
            for (int i = 0; i <= 400; ++i) {
                const double t = -1.0 + i / 200.0;
                ev = std::max(ev, std::abs(a.rational(t) - s(t)) / std::max(1.0, std::abs(a.rational(t))));
            }
            check(ev <= 1e-13, fmt("evaluation scale invariance %.2e", ev) + tag);
        }
    }

    // Floater-Hormann: exact at the nodes, and the denominator times the node
    // polynomial keeps one sign on [-1,1].
    for (Index n : {12, 41, 100}) {
        const Eigen::VectorXd x = equispaced_grid(n);
        const Eigen::VectorXcd f = sample_equispaced(TestFunctionId::fB, n);
        for (Index d : {Index{0}, Index{3}, Index{8}, std::min<Index>(20, n - 1)}) {
            const FHInterpolant r = fh_interpolant(x, f, d);
            for (Index k = 0; k < n; ++k) check(r(x(k)) == f(k), "FH node interpolation");
            int sign = 0;
            bool one_sign = true;
            for (Index i = 0; i < 20 * n; ++i) {
                const double t = -1.0 + (2.0 * static_cast<double>(i) + 1.0) / (20.0 * static_cast<double>(n));
                double den = 0.0;
                int flips = 0;
                for (Index k = 0; k < n; ++k) {
                    den += r.weights(k) / (t - x(k));
                    if (x(k) > t) ++flips;
                }
                if (den == 0.0) continue;
                const int s = ((den > 0) == (flips % 2 == 0)) ? 1 : -1;
                if (sign == 0) sign = s;
                one_sign = one_sign && s == sign;
            }
            check(one_sign, fmt("FH pole-freeness n=%ld d=%ld", static_cast<long>(n), static_cast<long>(d)));
        }
    }

    // Amber: Clenshaw against the cosine sum.
    {
        const auto& c = amber_coeffs();
        double worst = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            const double theta = M_PI * i / 2000.0;
            double trig = 0.0;
            for (int k = 0; k < 54; ++k) trig += c[static_cast<std::size_t>(k)] * std::cos(k * theta);
            worst = std::max(worst, std::abs(amber_eval(std::cos(theta)) - trig));
        }
        check(worst <= 1e-14, fmt("amber Clenshaw vs trig %.2e", worst));
    }

    return {11, "", failures.empty(), failures.empty() ? std::string("all invariant checks hold") : failures};
}

CriterionResult analytic_continuation() {
    const ComplexMap map = run_complex_map(TestFunctionId::expsqrt, 50, {-1.0, 1.0, -0.25, 0.25}, 201);
    double worst = 0.0;
    Index skipped = 0;
    for (Index i = 0; i < map.im.size(); ++i)
        for (Index j = 0; j < map.re.size(); ++j) {
            const cplx z(map.re(j), map.im(i));
            bool near_pole = false;
            for (Index k = 0; k < map.poles.size(); ++k) near_pole = near_pole || std::abs(z - map.poles(k)) <= 0.05;
            if (near_pole) {
                ++skipped;
                continue;
            }
            worst = std::max(worst, map.abserr(i, j));
        }
    return {12, "", worst < 1e-2,
            fmt("max |f - r| on [-1,1]x[-0.25,0.25] (201x201, %ld points within 0.05 of a pole skipped): %.2e (<1e-2)",
                static_cast<long>(skipped), worst)};
}

} // namespace

const std::vector<Criterion>& acceptance_criteria() {
    static const std::vector<Criterion> list = {
        {1, "AAA fit of exp(x)/sqrt(1+9x^2), n=50", expsqrt_fit_check},
        {2, "degree-49 polynomial interpolant blows up", runge_catastrophe},
        {3, "Chebyshev conversion of the n=50 fit", chebyshev_conversion},
        {4, "least-squares growth constants", growth_constants},
        {5, "Chebyshev least-squares instability rate", instability_signature},
        {6, "AAA first to 1e-10 on fA..fE", aaa_first_to_1e10},
        {7, "cubic spline O(n^-4) on sin(40x)", spline_rate},
        {8, "AAA and Floater-Hormann parity on amber", amber_parity},
        {9, "basis swap: Arnoldi Fourier vs plain, monomial vs Chebyshev", basis_swap},
        {10, "least-squares rescue on the six-function sum", sum6_rescue},
        {11, "invariant suites", invariants},
        {12, "analytic continuation of the n=50 fit", analytic_continuation},
    };
    return list;
}

int run_acceptance(std::ostream& os) {
    int failures = 0;
    for (const Criterion& c : acceptance_criteria()) {
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("threw: ") + e.what();
        }
        r.id = c.id;
        r.name = c.name;
        if (!r.passed) ++failures;
        os << (r.passed ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << r.detail
           << fmt(" (%.1f s)", seconds_since(t0)) << std::endl;
    }
    os << (failures == 0 ? "all criteria passed" : fmt("%d criteria failed", failures)) << std::endl;
    return failures;
}

} // namespace eqfit
