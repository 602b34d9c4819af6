#include <algorithm>
#include <cmath>
#include <limits>

#include "eqfit/baselines.hpp"

namespace eqfit {

namespace {

double binomial(Index n, Index k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double c = 1.0;
    for (Index j = 1; j <= k; ++j) c = c * static_cast<double>(n - k + j) / static_cast<double>(j);
    return c < 1e15 ? std::round(c) : c;
}

} // namespace

Eigen::VectorXd fh_weights(Index n, Index d) {
    if (n < 1) throw invalid_input("fh_weights: need n >= 1");
    if (d < 0 || d > n - 1) throw invalid_input("fh_weights: blending degree out of range");
    Eigen::VectorXd w(n);
    for (Index k = 0; k < n; ++k) {
        double s = 0.0;
        for (Index i = std::max<Index>(0, k - d); i <= std::min(k, n - 1 - d); ++i) s += binomial(d, k - i);
        w(k) = (k % 2 == 0) ? s : -s;
    }
    return w;
}

FHInterpolant fh_interpolant(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f,
                             Index d) {
    if (x.size() != f.size()) throw invalid_input("fh_interpolant: x and f differ in length");
    FHInterpolant r;
    r.nodes = x;
    r.values = f;
    r.weights = fh_weights(x.size(), d);
    r.blend_degree = d;
    return r;
}

cplx FHInterpolant::operator()(cplx z) const {
    cplx num = 0.0, den = 0.0;
    for (Index k = 0; k < nodes.size(); ++k) {
        const cplx diff = z - nodes(k);
        if (diff == cplx(0.0)) return values(k);
        const cplx c = weights(k) / diff;
        num += c * values(k);
        den += c;
    }
    return num / den;
}

FHInterpolant fh_adaptive(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXcd>& f) {
    const Index n = x.size();
    if (n < 4) throw invalid_input("fh_adaptive: need n >= 4");
    if (f.size() != n) throw invalid_input("fh_adaptive: x and f differ in length");

    const Index n_even = (n + 1) / 2, n_odd = n / 2;
    Eigen::VectorXd xe(n_even), xo(n_odd);
    Eigen::VectorXcd fe(n_even), fo(n_odd);
    for (Index i = 0; i < n; ++i) {
        if (i % 2 == 0) {
            xe(i / 2) = x(i);
            fe(i / 2) = f(i);
        } else {
            xo(i / 2) = x(i);
            fo(i / 2) = f(i);
        }
    }

    const Index dmax = std::min<Index>({n - 1, 20, n_even - 1});
    std::vector<double> score(static_cast<std::size_t>(dmax) + 1);
    for (Index d = 0; d <= dmax; ++d) {
        const FHInterpolant half = fh_interpolant(xe, fe, d);
        double worst = 0.0;
        for (Index i = 0; i < n_odd; ++i) {
            const double e = std::abs(fo(i) - half(xo(i)));
            worst = std::max(worst, std::isfinite(e) ? e : std::numeric_limits<double>::infinity());
        }
        score[static_cast<std::size_t>(d)] = worst;
    }
    const double best = *std::min_element(score.begin(), score.end());
    // Scores within rounding of the best count as ties; the smallest d wins.
    const double slack = 1e-14 * f.cwiseAbs().maxCoeff();
    Index chosen = 0;
    while (score[static_cast<std::size_t>(chosen)] > best + slack) ++chosen;
    return fh_interpolant(x, f, chosen);
}

} // namespace eqfit
