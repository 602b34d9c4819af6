#include "eqfit/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "eqfit/chebyshev.hpp"

namespace eqfit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// |F - R| with non-finite values promoted to +inf so they are picked first.
double abs_err(cplx a, cplx b) {
    const double e = std::abs(a - b);
    return std::isfinite(e) ? e : kInf;
}

Eigen::VectorXcd sorted(Eigen::VectorXcd v) {
    std::sort(v.data(), v.data() + v.size(), [](cplx a, cplx b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    return v;
}

// Finite eigenvalues of [0 u^T; 1 diag(t)] - lambda diag(0, 1, ..., 1).
// u is scaled to unit norm with its largest entry real and positive, so the
// roots do not depend on the scale of u; a u that is real up to rounding after
// the rotation yields a real pencil.
Eigen::VectorXcd arrowhead_roots(const Eigen::VectorXd& t, Eigen::VectorXcd u) {
    const Index m1 = t.size();
    Index k = 0;
    const double umax = u.cwiseAbs().maxCoeff(&k);
    if (umax > 0.0) {
        u *= std::conj(u(k)) / (umax * u.norm());
        if (u.imag().cwiseAbs().maxCoeff() <= 4.0 * std::numeric_limits<double>::epsilon())
            u = u.real().cast<cplx>();
    }
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(m1 + 1, m1 + 1);
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Identity(m1 + 1, m1 + 1);
    b(0, 0) = 0.0;
    e.block(0, 1, 1, m1) = u.transpose();
    e.block(1, 0, m1, 1).setOnes();
    for (Index j = 0; j < m1; ++j) e(j + 1, j + 1) = t(j);
    return sorted(generalized_eig(e, b));
}

bool is_real_data(const Eigen::Ref<const Eigen::VectorXcd>& f) { return (f.imag().array() == 0.0).all(); }

void check_samples(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f) {
    if (x.size() < 2) throw invalid_input("need at least two samples");
    if (x.size() != f.size()) throw invalid_input("sample points and values differ in length");
    if (!x.allFinite() || !f.allFinite()) throw invalid_input("non-finite samples");
    for (Index i = 1; i < x.size(); ++i) {
        if (x(i) == x(i - 1)) throw invalid_input("duplicate sample points");
        if (x(i) < x(i - 1)) throw invalid_input("sample points must be strictly increasing");
    }
}

double relative_residual(const Approximant& r, const Eigen::Ref<const Eigen::VectorXd>& x,
                         const Eigen::Ref<const Eigen::VectorXcd>& f) {
    const double scale = f.cwiseAbs().maxCoeff();
    double worst = 0.0;
    for (Index i = 0; i < x.size(); ++i) worst = std::max(worst, abs_err(f(i), evaluate(r, x(i))));
    return scale > 0.0 ? worst / scale : worst;
}

} // namespace

Eigen::VectorXd equispaced_grid(Index n) {
    if (n < 2) throw invalid_input("equispaced_grid: need n >= 2");
    Eigen::VectorXd x(n);
    const double denom = static_cast<double>(n - 1);
    for (Index j = 0; j < n; ++j) x(j) = static_cast<double>(2 * j - (n - 1)) / denom;
    return x;
}

cplx bary_eval(const BarycentricRational& r, cplx z) {
    cplx num = 0.0, den = 0.0;
    for (Index j = 0; j < r.support_points.size(); ++j) {
        const cplx diff = z - r.support_points(j);
        if (diff == cplx(0.0)) return r.support_values(j);
        const cplx c = r.weights(j) / diff;
        num += c * r.support_values(j);
        den += c;
    }
    return num / den;
}

cplx BarycentricRational::operator()(cplx z) const { return bary_eval(*this, z); }

cplx PartialFractionRational::operator()(cplx z) const {
    cplx s = constant;
    for (Index k = 0; k < poles.size(); ++k) {
        const cplx diff = z - poles(k);
        if (diff == cplx(0.0)) return {kInf, 0.0};
        s += residues(k) / diff;
    }
    return s;
}

double ChebyshevPolynomial::operator()(double x) const { return clenshaw(coefficients, x); }
cplx ChebyshevPolynomial::operator()(cplx z) const { return clenshaw(coefficients, z); }

AaaResult aaa_fit(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f, double tol,
                  Index mmax) {
    check_samples(x, f);
    if (!(tol > 0.0 && tol < 1.0)) throw invalid_input("aaa_fit: tol must lie in (0,1)");
    if (mmax < 1) throw invalid_input("aaa_fit: mmax must be >= 1");

    const Index n = x.size();
    const Index cap = std::min(mmax, interpolant_degree(n));
    const double scale = f.cwiseAbs().maxCoeff();

    Eigen::VectorXcd approx = Eigen::VectorXcd::Constant(n, f.mean());
    std::vector<bool> is_support(static_cast<std::size_t>(n), false);
    std::vector<Index> support;
    Eigen::MatrixXcd loewner(n, cap + 1);
    Eigen::VectorXcd w;
    double residual = kInf;

    while (true) {
        // Greedy step; strict comparison keeps the lowest index on ties.
        Index jmax = 0;
        double emax = -1.0;
        for (Index i = 0; i < n; ++i) {
            if (is_support[static_cast<std::size_t>(i)]) continue;
            const double e = abs_err(f(i), approx(i));
            if (e > emax) {
                emax = e;
                jmax = i;
            }
        }
        is_support[static_cast<std::size_t>(jmax)] = true;
        support.push_back(jmax);
        const Index m = static_cast<Index>(support.size());
        for (Index i = 0; i < n; ++i)
            loewner(i, m - 1) = i == jmax ? cplx(0.0) : (f(i) - f(jmax)) / (x(i) - x(jmax));

        std::vector<Index> rows;
        rows.reserve(static_cast<std::size_t>(n - m));
        for (Index i = 0; i < n; ++i)
            if (!is_support[static_cast<std::size_t>(i)]) rows.push_back(i);

        if (rows.empty()) {
            // Every sample is a support point: polynomial interpolation weights.
            w.resize(m);
            for (Index k = 0; k < m; ++k) {
                cplx prod = 1.0;
                for (Index l = 0; l < m; ++l)
                    if (l != k) prod *= x(support[static_cast<std::size_t>(k)]) - x(support[static_cast<std::size_t>(l)]);
                w(k) = 1.0 / prod;
            }
            w.normalize();
        } else {
            Eigen::MatrixXcd a(static_cast<Index>(rows.size()), m);
            for (std::size_t r = 0; r < rows.size(); ++r) a.row(static_cast<Index>(r)) = loewner.row(rows[r]).head(m);
            auto dec = svd(a, /*full_right=*/true);
            w = dec.right_vectors.col(m - 1);
        }

        approx = f;
        for (Index i : rows) {
            cplx num = 0.0, den = 0.0;
            for (Index k = 0; k < m; ++k) {
                const cplx c = w(k) / (x(i) - x(support[static_cast<std::size_t>(k)]));
                num += c * f(support[static_cast<std::size_t>(k)]);
                den += c;
            }
            approx(i) = num / den;
        }
        residual = 0.0;
        for (Index i = 0; i < n; ++i) residual = std::max(residual, abs_err(f(i), approx(i)));

        if (residual <= tol * scale || m - 1 >= cap) break;
    }

    const Index m = static_cast<Index>(support.size());
    AaaResult out;
    out.rational.support_points.resize(m);
    out.rational.support_values.resize(m);
    for (Index k = 0; k < m; ++k) {
        out.rational.support_points(k) = x(support[static_cast<std::size_t>(k)]);
        out.rational.support_values(k) = f(support[static_cast<std::size_t>(k)]);
    }
    out.rational.weights = w;
    out.report.degree = m - 1;
    out.report.grid_residual = scale > 0.0 ? residual / scale : residual;
    out.report.is_interpolant = out.report.degree == interpolant_degree(n);
    return out;
}

Eigen::VectorXcd poles(const BarycentricRational& r) {
    if (r.degree() < 1) return Eigen::VectorXcd(0);
    return arrowhead_roots(r.support_points, r.weights);
}

Eigen::VectorXcd zeros(const BarycentricRational& r) {
    if (r.degree() < 1) return Eigen::VectorXcd(0);
    return arrowhead_roots(r.support_points, r.weights.cwiseProduct(r.support_values));
}

Eigen::VectorXcd residues(const BarycentricRational& r, const Eigen::Ref<const Eigen::VectorXcd>& p) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    Eigen::VectorXcd res(p.size());
    for (Index k = 0; k < p.size(); ++k) {
        cplx num = 0.0, dden = 0.0;
        for (Index j = 0; j < r.support_points.size(); ++j) {
            const cplx diff = p(k) - r.support_points(j);
            if (std::abs(diff) <= 4.0 * eps * std::max(1.0, std::abs(r.support_points(j))))
                throw degenerate_error("residues: pole coincides with a support point");
            num += r.weights(j) * r.support_values(j) / diff;
            dden -= r.weights(j) / (diff * diff);
        }
        res(k) = num / dden;
    }
    return res;
}

std::vector<Index> detect_bad_poles(const Eigen::Ref<const Eigen::VectorXcd>& p, double im_tol) {
    if (!(im_tol >= 0.0)) throw invalid_input("detect_bad_poles: im_tol must be nonnegative");
    std::vector<Index> bad;
    for (Index k = 0; k < p.size(); ++k)
        if (p(k).real() >= -1.0 && p(k).real() <= 1.0 && std::abs(p(k).imag()) <= im_tol) bad.push_back(k);
    return bad;
}

PartialFractionRational aaa_ls(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f,
                               const Eigen::Ref<const Eigen::VectorXcd>& good_poles, double im_tol) {
    check_samples(x, f);
    if (!detect_bad_poles(good_poles, im_tol).empty()) throw invalid_input("aaa_ls: pole set contains a bad pole");

    const Index n = x.size();
    PartialFractionRational out;
    if (good_poles.size() == 0) {
        out.constant = f.mean();
        out.poles.resize(0);
        out.residues.resize(0);
        return out;
    }

    const bool real = is_real_data(f);
    // Basis: constant, then one column per real pole or two per conjugate pair.
    std::vector<cplx> real_poles, upper_poles, all_poles;
    if (real) {
        auto near = [](cplx a, cplx b) { return std::abs(a - b) <= 1e-6 * (1.0 + std::abs(a)); };
        for (Index k = 0; k < good_poles.size(); ++k) {
            const cplx p = good_poles(k);
            if (std::abs(p.imag()) <= im_tol)
                real_poles.emplace_back(p.real(), 0.0);
            else if (p.imag() > 0.0)
                upper_poles.push_back(p);
        }
        for (Index k = 0; k < good_poles.size(); ++k) {
            const cplx p = good_poles(k);
            if (p.imag() < -im_tol) {
                const bool paired = std::any_of(upper_poles.begin(), upper_poles.end(),
                                                [&](cplx q) { return near(q, std::conj(p)); });
                if (!paired) upper_poles.push_back(std::conj(p));
            }
        }
    } else {
        for (Index k = 0; k < good_poles.size(); ++k) all_poles.push_back(good_poles(k));
    }

    const Index ncols = real ? 1 + static_cast<Index>(real_poles.size() + 2 * upper_poles.size())
                             : 1 + static_cast<Index>(all_poles.size());
    Eigen::MatrixXcd a(n, ncols);
    a.col(0).setOnes();
    Index col = 1;
    if (real) {
        for (cplx p : real_poles) {
            for (Index i = 0; i < n; ++i) a(i, col) = 1.0 / (x(i) - p.real());
            ++col;
        }
        for (cplx p : upper_poles) {
            for (Index i = 0; i < n; ++i) {
                const cplx v = 1.0 / (x(i) - p);
                a(i, col) = v.real();
                a(i, col + 1) = v.imag();
            }
            col += 2;
        }
    } else {
        for (cplx p : all_poles) {
            for (Index i = 0; i < n; ++i) a(i, col) = 1.0 / (x(i) - p);
            ++col;
        }
    }

    Eigen::VectorXd colscale = a.colwise().norm().transpose();
    for (Index c = 0; c < ncols; ++c)
        if (colscale(c) > 0.0) a.col(c) /= colscale(c);
    Eigen::VectorXcd coef = least_squares_min_norm(a, f, 1e-14);
    for (Index c = 0; c < ncols; ++c)
        if (colscale(c) > 0.0) coef(c) /= colscale(c);

    std::vector<cplx> pk, ak;
    if (real) {
        out.constant = coef(0).real();
        col = 1;
        for (cplx p : real_poles) {
            pk.push_back(p);
            ak.emplace_back(coef(col).real(), 0.0);
            ++col;
        }
        // alpha Re(1/(x-p)) + beta Im(1/(x-p)) = a/(x-p) + conj(a)/(x-conj(p)), a = (alpha - i beta)/2
        for (cplx p : upper_poles) {
            const double alpha = coef(col).real(), beta = coef(col + 1).real();
            const cplx res(alpha / 2.0, -beta / 2.0);
            pk.push_back(p);
            ak.push_back(res);
            pk.push_back(std::conj(p));
            ak.push_back(std::conj(res));
            col += 2;
        }
    } else {
        out.constant = coef(0);
        for (std::size_t k = 0; k < all_poles.size(); ++k) {
            pk.push_back(all_poles[k]);
            ak.push_back(coef(static_cast<Index>(k) + 1));
        }
    }
    out.poles = Eigen::Map<Eigen::VectorXcd>(pk.data(), static_cast<Index>(pk.size()));
    out.residues = Eigen::Map<Eigen::VectorXcd>(ak.data(), static_cast<Index>(ak.size()));
    return out;
}

EquispacedFit fit_equispaced(const Eigen::Ref<const Eigen::VectorXcd>& f, const FitOptions& options) {
    if (f.size() < 2) throw invalid_input("fit_equispaced: need at least two samples");
    const Eigen::VectorXd x = equispaced_grid(f.size());
    AaaResult aaa = aaa_fit(x, f, options.tol, options.mmax);

    const Eigen::VectorXcd p = poles(aaa.rational);
    const std::vector<Index> bad = detect_bad_poles(p, options.im_tol);
    if (bad.empty()) return {std::move(aaa.rational), aaa.report};

    Eigen::VectorXcd good(p.size() - static_cast<Index>(bad.size()));
    Index g = 0;
    for (Index k = 0; k < p.size(); ++k)
        if (std::find(bad.begin(), bad.end(), k) == bad.end()) good(g++) = p(k);

    EquispacedFit out{aaa_ls(x, f, good, options.im_tol), {}};
    const auto& pf = std::get<PartialFractionRational>(out.approximant);
    out.report.degree = pf.degree();
    out.report.grid_residual = relative_residual(out.approximant, x, f);
    out.report.is_interpolant = false;
    out.report.n_bad_poles = static_cast<Index>(bad.size());
    out.report.rescue_applied = true;
    return out;
}

cplx evaluate(const Approximant& r, cplx z) {
    return std::visit([z](const auto& v) { return v(z); }, r);
}

GridValues eval_on_grid(const Approximant& r, const Eigen::Ref<const Eigen::VectorXcd>& points) {
    GridValues out;
    out.values.resize(points.size());
    for (Index i = 0; i < points.size(); ++i) {
        cplx v = evaluate(r, points(i));
        if (!std::isfinite(std::abs(v))) {
            v = {kInf, 0.0};
            out.singular.push_back(i);
        }
        out.values(i) = v;
    }
    return out;
}

Eigen::VectorXcd approximant_poles(const Approximant& r) {
    if (const auto* b = std::get_if<BarycentricRational>(&r)) return poles(*b);
    return std::get<PartialFractionRational>(r).poles;
}

ChebyshevPolynomial to_chebyshev(const Approximant& r, double tol) {
    for (int k = 4; k <= 16; ++k) {
        const Index m = Index{1} << k;
        const Eigen::VectorXd xs = cheb_points(m);
        Eigen::VectorXd vals(m + 1);
        for (Index j = 0; j <= m; ++j) vals(j) = evaluate(r, xs(j)).real();
        if (!vals.allFinite()) throw not_resolvable("to_chebyshev: approximant is not finite on [-1,1]");
        const Eigen::VectorXd c = cheb_transform(vals);
        const Index keep = standard_chop(c.cwiseAbs(), tol);
        if (keep < m + 1) {
            Index len = keep;
            while (len > 1 && c(len - 1) == 0.0) --len;
            return {c.head(len)};
        }
    }
    throw not_resolvable("to_chebyshev: no convergence by degree 2^16");
}

} // namespace eqfit
