#ifndef EQFIT_ERRORS_HPP
#define EQFIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eqfit {

// Input violates a documented precondition.
class invalid_input : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A computation hit a degenerate configuration (pole on a support point, singular pencil).
class degenerate_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Adaptive Chebyshev resolution did not converge within the degree cap.
class not_resolvable : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace eqfit

#endif // EQFIT_ERRORS_HPP
