#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "eqfit/bench.hpp"

namespace eqfit {

namespace {

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    return os;
}

void finish(std::ofstream& os, const std::string& path) {
    os.flush();
    if (!os) throw std::runtime_error("write to '" + path + "' failed");
}

} // namespace

std::string format_error(double e) {
    if (std::isinf(e)) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", e);
    return buf;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceCurve>& curves) {
    os << "function,method,n,error,degree,is_interpolant,rescue\n";
    for (const auto& c : curves)
        for (const auto& p : c.points)
            os << c.function << ',' << method_name(c.method.id) << ',' << p.n << ',' << format_error(p.error) << ','
               << p.degree << ',' << (p.is_interpolant ? 1 : 0) << ',' << (p.rescue ? 1 : 0) << '\n';
}

std::vector<CsvRow> read_convergence_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "function,method,n,error,degree,is_interpolant,rescue")
        throw invalid_input("read_convergence_csv: missing or unexpected header");
    std::vector<CsvRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != 7) throw invalid_input("read_convergence_csv: expected 7 fields in '" + line + "'");
        CsvRow r;
        r.function = f[0];
        r.method = f[1];
        r.n = std::stoll(f[2]);
        r.error = f[3] == "inf" ? std::numeric_limits<double>::infinity() : std::stod(f[3]);
        r.degree = std::stoll(f[4]);
        r.is_interpolant = f[5] == "1";
        r.rescue = f[6] == "1";
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_plot_data(std::ostream& os, const std::vector<ConvergenceCurve>& curves) {
    bool first = true;
    for (const auto& c : curves) {
        if (!first) os << "\n\n";
        first = false;
        os << "# " << c.function << ' ' << method_name(c.method.id) << "\n# n log10(error)\n";
        for (const auto& p : c.points)
            os << p.n << ' ' << (std::isinf(p.error) ? std::string("inf") : num17(std::log10(p.error))) << '\n';
    }
}

void write_map_csv(std::ostream& os, const ComplexMap& map) {
    os << "re,im,abserr\n";
    for (Index i = 0; i < map.im.size(); ++i)
        for (Index j = 0; j < map.re.size(); ++j)
            os << num17(map.re(j)) << ',' << num17(map.im(i)) << ',' << format_error(map.abserr(i, j)) << '\n';
}

void write_poles_csv(std::ostream& os, const ComplexMap& map) {
    os << "re,im,residue_re,residue_im\n";
    for (Index k = 0; k < map.poles.size(); ++k)
        os << num17(map.poles(k).real()) << ',' << num17(map.poles(k).imag()) << ','
           << num17(map.residues(k).real()) << ',' << num17(map.residues(k).imag()) << '\n';
}

void emit_convergence(const std::string& path, const std::vector<ConvergenceCurve>& curves, bool plot_data) {
    auto os = open_for_write(path);
    write_convergence_csv(os, curves);
    finish(os, path);
    if (plot_data) {
        const std::string plot_path = path + ".plot.dat";
        auto ps = open_for_write(plot_path);
        write_plot_data(ps, curves);
        finish(ps, plot_path);
    }
}

void emit_map(const std::string& path, const ComplexMap& map) {
    auto os = open_for_write(path);
    write_map_csv(os, map);
    finish(os, path);
    const std::string poles_path = path + ".poles.csv";
    auto ps = open_for_write(poles_path);
    write_poles_csv(ps, map);
    finish(ps, poles_path);
}

} // namespace eqfit
