// Text format, one record per line, numbers in %.17g:
//
//   barycentric <degree> <tol>
//   <t_j> <Re f_j> <Im f_j> <Re w_j> <Im w_j>        (degree + 1 lines)
//
//   partial_fraction <degree> <tol> <Re c> <Im c>
//   <Re p_k> <Im p_k> <Re a_k> <Im a_k>              (degree lines)

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "eqfit/rational.hpp"

namespace eqfit {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::istringstream next_record(std::istream& is) {
    std::string line;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#') return std::istringstream(line);
    throw invalid_input("read_approximant: unexpected end of input");
}

double read_double(std::istringstream& ls) {
    std::string tok;
    if (!(ls >> tok)) throw invalid_input("read_approximant: missing field");
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw invalid_input("read_approximant: malformed number '" + tok + "'");
    return v;
}

} // namespace

void write_approximant(std::ostream& os, const Approximant& r, double tol) {
    if (const auto* b = std::get_if<BarycentricRational>(&r)) {
        os << "barycentric " << b->degree() << ' ' << num(tol) << '\n';
        for (Index j = 0; j < b->support_points.size(); ++j)
            os << num(b->support_points(j)) << ' ' << num(b->support_values(j).real()) << ' '
               << num(b->support_values(j).imag()) << ' ' << num(b->weights(j).real()) << ' '
               << num(b->weights(j).imag()) << '\n';
        return;
    }
    const auto& pf = std::get<PartialFractionRational>(r);
    os << "partial_fraction " << pf.degree() << ' ' << num(tol) << ' ' << num(pf.constant.real()) << ' '
       << num(pf.constant.imag()) << '\n';
    for (Index k = 0; k < pf.poles.size(); ++k)
        os << num(pf.poles(k).real()) << ' ' << num(pf.poles(k).imag()) << ' ' << num(pf.residues(k).real()) << ' '
           << num(pf.residues(k).imag()) << '\n';
}

Approximant read_approximant(std::istream& is, double* tol) {
    auto header = next_record(is);
    std::string tag;
    long long degree = -1;
    header >> tag >> degree;
    if (!header) throw invalid_input("read_approximant: malformed header");
    const double t = read_double(header);
    if (tol) *tol = t;

    if (tag == "barycentric") {
        if (degree < 0) throw invalid_input("read_approximant: negative degree");
        BarycentricRational b;
        const Index m = static_cast<Index>(degree) + 1;
        b.support_points.resize(m);
        b.support_values.resize(m);
        b.weights.resize(m);
        for (Index j = 0; j < m; ++j) {
            auto ls = next_record(is);
            b.support_points(j) = read_double(ls);
            const double fr = read_double(ls), fi = read_double(ls);
            const double wr = read_double(ls), wi = read_double(ls);
            b.support_values(j) = {fr, fi};
            b.weights(j) = {wr, wi};
        }
        return b;
    }
    if (tag == "partial_fraction") {
        if (degree < 0) throw invalid_input("read_approximant: negative degree");
        PartialFractionRational pf;
        const double cr = read_double(header), ci = read_double(header);
        pf.constant = {cr, ci};
        pf.poles.resize(static_cast<Index>(degree));
        pf.residues.resize(static_cast<Index>(degree));
        for (Index k = 0; k < static_cast<Index>(degree); ++k) {
            auto ls = next_record(is);
            const double pr = read_double(ls), pi = read_double(ls);
            const double ar = read_double(ls), ai = read_double(ls);
            pf.poles(k) = {pr, pi};
            pf.residues(k) = {ar, ai};
        }
        return pf;
    }
    throw invalid_input("read_approximant: unknown variant tag '" + tag + "'");
}

} // namespace eqfit
