// eqfit: convergence sweeps and complex-plane error maps over the test corpus.
//
//   eqfit converge --function fC --methods aaa,fh,spline --nmax 200 --out fC.csv
//   eqfit cmap --function expsqrt --n 50 --box -2,2,-2,2 --res 201 --out map.csv
//   eqfit --seedcheck
//
// Every option may also come from a key=value file given with --config;
// options on the command line win.

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "eqfit/acceptance.hpp"
#include "eqfit/bench.hpp"

namespace {

using namespace eqfit;

struct Options {
    std::string function;
    std::string methods = "spline,poly_cheb,fourier_ext,fourier_poly,fh,aaa";
    std::optional<Index> nmax;
    Index nmin = 4;
    Index nstep = 4;
    double tol = 1e-13;
    Index grid = 1000;
    double gamma = 2.0;
    double half_width = 2.0;
    double im_tol = 1e-8;
    bool plot = false;
    unsigned threads = 0;
    Index n = 50;
    std::vector<double> box{-2.0, 2.0, -2.0, 2.0};
    Index res = 201;
    std::string out;
};

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_meta(const std::string& path, const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream os(path);
    for (const auto& [k, v] : entries) os << k << '=' << v << '\n';
    os.flush();
    if (!os) throw std::runtime_error("write to '" + path + "' failed");
}

int run_converge(const Options& o) {
    const TestFunction& tf = test_function(o.function);
    const bool long_sweep = tf.id == TestFunctionId::amber || tf.id == TestFunctionId::sum6;
    const Index nmax = o.nmax.value_or(long_sweep ? 400 : 200);

    MethodConfig defaults;
    defaults.tol = o.tol;
    defaults.gamma = o.gamma;
    defaults.half_width = o.half_width;
    defaults.im_tol = o.im_tol;
    const auto methods = parse_method_list(o.methods, defaults);

    std::vector<Index> ns;
    for (Index n : n_sweep(o.nstep, nmax))
        if (n >= o.nmin) ns.push_back(n);
    if (ns.empty()) throw invalid_input("no n values between --nmin and --nmax");

    const auto curves = run_convergence(tf.id, methods, ns, o.grid, o.threads);
    emit_convergence(o.out, curves, o.plot);
    write_meta(o.out + ".meta.txt", {{"command", "converge"},
                                     {"function", tf.name},
                                     {"label", tf.label},
                                     {"methods", o.methods},
                                     {"n_first", std::to_string(ns.front())},
                                     {"n_last", std::to_string(ns.back())},
                                     {"n_step", std::to_string(o.nstep)},
                                     {"grid", std::to_string(o.grid)},
                                     {"tol", g17(o.tol)},
                                     {"gamma", g17(o.gamma)},
                                     {"T", g17(o.half_width)},
                                     {"im_tol", g17(o.im_tol)},
                                     {"error", "absolute max error on the equispaced grid"}});

    std::size_t rescued = 0;
    for (const auto& c : curves)
        for (const auto& p : c.points) rescued += p.rescue ? 1 : 0;
    std::cout << "wrote " << o.out << ": " << curves.size() << " methods x " << ns.size() << " values of n";
    if (rescued > 0) std::cout << ", " << rescued << " fits used the least-squares rescue";
    std::cout << '\n';
    return 0;
}

int run_cmap(const Options& o) {
    const TestFunction& tf = test_function(o.function);
    if (o.n < 2) throw invalid_input("--n must be >= 2");
    FitOptions fo;
    fo.tol = o.tol;
    fo.im_tol = o.im_tol;
    const std::array<double, 4> box{o.box[0], o.box[1], o.box[2], o.box[3]};
    const ComplexMap map = run_complex_map(tf.id, o.n, box, o.res, fo);
    emit_map(o.out, map);
    write_meta(o.out + ".meta.txt", {{"command", "cmap"},
                                     {"function", tf.name},
                                     {"label", tf.label},
                                     {"n", std::to_string(o.n)},
                                     {"box", g17(box[0]) + "," + g17(box[1]) + "," + g17(box[2]) + "," + g17(box[3])},
                                     {"res", std::to_string(o.res)},
                                     {"tol", g17(o.tol)},
                                     {"im_tol", g17(o.im_tol)},
                                     {"degree", std::to_string(map.report.degree)},
                                     {"rescue", map.report.rescue_applied ? "1" : "0"}});
    std::cout << "wrote " << o.out << " (" << o.res << "x" << o.res << ") and " << o.out << ".poles.csv ("
              << map.poles.size() << " poles)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rational and classical approximation of equispaced data"};
    app.require_subcommand(0, 1);
    app.set_config("--config", "", "Read key=value options from a file");

    Options o;
    bool seedcheck = false;
    app.add_flag("--seedcheck", seedcheck, "Run the acceptance suite; nonzero exit if any criterion fails");
    app.add_option("--function", o.function, "Test function id (fA fB fC fD fE amber runge sum6 expsqrt)");
    app.add_option("--methods", o.methods, "Comma-separated methods")->capture_default_str();
    app.add_option("--nmax", o.nmax, "Largest n (default 200, 400 for amber and sum6)");
    app.add_option("--nmin", o.nmin, "Smallest n")->capture_default_str();
    app.add_option("--nstep", o.nstep, "Step in n")->capture_default_str();
    app.add_option("--tol", o.tol, "AAA relative tolerance")->capture_default_str();
    app.add_option("--grid", o.grid, "Points in the dense error grid")->capture_default_str();
    app.add_option("--gamma", o.gamma, "Oversampling ratio of least-squares methods")->capture_default_str();
    app.add_option("--T", o.half_width, "Fourier extension half-width")->capture_default_str();
    app.add_option("--im-tol", o.im_tol, "Bad-pole distance from the real axis")->capture_default_str();
    app.add_flag("--plot", o.plot, "Also write <out>.plot.dat");
    app.add_option("--threads", o.threads, "Worker threads, 0 = all cores")->capture_default_str();
    app.add_option("--n", o.n, "Sample count for the map fit")->capture_default_str();
    app.add_option("--box", o.box, "re0,re1,im0,im1")->expected(4)->delimiter(',')->capture_default_str();
    app.add_option("--res", o.res, "Grid points per axis")->capture_default_str();
    app.add_option("--out", o.out, "Output CSV path");

    auto* converge = app.add_subcommand("converge", "Error versus n for each method");
    auto* cmap = app.add_subcommand("cmap", "Error |f - r| over a box in the complex plane");
    converge->fallthrough();
    cmap->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (seedcheck) return eqfit::run_acceptance(std::cout) > 0 ? 1 : 0;
        if (!converge->parsed() && !cmap->parsed()) {
            std::cerr << app.help();
            return 2;
        }
        if (o.function.empty()) throw eqfit::invalid_input("--function is required");
        if (o.out.empty()) throw eqfit::invalid_input("--out is required");
        return converge->parsed() ? run_converge(o) : run_cmap(o);
    } catch (const eqfit::invalid_input& e) {
        std::cerr << "eqfit: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "eqfit: " << e.what() << '\n';
        return 1;
    }
}
