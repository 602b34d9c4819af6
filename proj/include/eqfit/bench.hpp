#ifndef EQFIT_BENCH_HPP
#define EQFIT_BENCH_HPP

// Convergence sweeps and complex-plane error maps over the test corpus,
// with CSV / plot-data emission.

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "eqfit/rational.hpp"
#include "eqfit/testlib.hpp"

namespace eqfit {

enum class MethodId { aaa, poly_cheb, poly_monomial, fourier_ext, fourier_ext_va, fourier_poly, spline, fh };

struct MethodConfig {
    MethodId id = MethodId::aaa;
    double gamma = 2.0;      // oversampling ratio (least-squares methods)
    double half_width = 2.0; // T (Fourier extension)
    double tol = 1e-13;      // AAA
    double im_tol = 1e-8;    // AAA bad-pole test
    Index mmax = 99;         // AAA degree cap
};

std::string_view method_name(MethodId id);
/// Throws invalid_input for unknown names.
MethodId parse_method(std::string_view name);
std::vector<MethodConfig> parse_method_list(std::string_view comma_separated, const MethodConfig& defaults = {});

/// Spline, polynomial LS, Fourier extension, Fourier plus polynomial, Floater-Hormann, AAA.
std::vector<MethodConfig> comparison_methods();

struct CurvePoint {
    Index n = 0;
    double error = 0.0; // +inf when the fit failed or has a pole on the grid
    Index degree = -1;  // AAA degree, basis size - 1 for LS fits, d for FH, 3 for splines
    bool is_interpolant = false;
    bool rescue = false;
};

struct ConvergenceCurve {
    std::string function;
    MethodConfig method;
    std::vector<CurvePoint> points;
};

/// One fitted approximant behind a uniform evaluator.
struct MethodFit {
    std::function<cplx(double)> eval;
    Index degree = -1;
    bool is_interpolant = false;
    bool rescue = false;
};

MethodFit fit_method(const MethodConfig& method, const Eigen::Ref<const Eigen::VectorXd>& x,
                     const Eigen::Ref<const Eigen::VectorXcd>& f);

/// n = step, 2 step, ... <= nmax, keeping only n >= 4.
std::vector<Index> n_sweep(Index nstep, Index nmax);

/// For every n and method: sample f at n equispaced points, fit, and record the
/// max error on a grid_size-point grid. A failing fit records +inf. Fits run on
/// `threads` workers (0 = hardware concurrency); output order is fixed.
std::vector<ConvergenceCurve> run_convergence(TestFunctionId function, const std::vector<MethodConfig>& methods,
                                              const std::vector<Index>& n_values, Index grid_size = 1000,
                                              unsigned threads = 0);

struct ComplexMap {
    Eigen::VectorXd re;      // grid abscissae
    Eigen::VectorXd im;      // grid ordinates
    Eigen::MatrixXd abserr;  // abserr(i, j) = |f - r| at re(j) + i im(i)
    Eigen::VectorXcd poles;
    Eigen::VectorXcd residues; // NaN where the residue is degenerate
    FitReport report;
};

/// box = {re0, re1, im0, im1}; res points per axis.
ComplexMap run_complex_map(TestFunctionId function, Index n, const std::array<double, 4>& box, Index res,
                           const FitOptions& options = {});

/// %.16e (17 significant digits), or "inf".
std::string format_error(double e);

struct CsvRow {
    std::string function;
    std::string method;
    Index n = 0;
    double error = 0.0;
    Index degree = -1;
    bool is_interpolant = false;
    bool rescue = false;
};

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceCurve>& curves);
std::vector<CsvRow> read_convergence_csv(std::istream& is);
/// Gnuplot-style blocks, one per method: "n log10(error)".
void write_plot_data(std::ostream& os, const std::vector<ConvergenceCurve>& curves);
void write_map_csv(std::ostream& os, const ComplexMap& map);
void write_poles_csv(std::ostream& os, const ComplexMap& map);

/// Writes <path> and, if requested, <path>.plot.dat. Throws std::runtime_error on I/O failure.
void emit_convergence(const std::string& path, const std::vector<ConvergenceCurve>& curves, bool plot_data);
/// Writes <path> and <path>.poles.csv.
void emit_map(const std::string& path, const ComplexMap& map);

} // namespace eqfit

#endif // EQFIT_BENCH_HPP
