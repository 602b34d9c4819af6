#ifndef EQFIT_ACCEPTANCE_HPP
#define EQFIT_ACCEPTANCE_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace eqfit {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    std::function<CriterionResult()> run;
};

const std::vector<Criterion>& acceptance_criteria();

/// Runs every criterion, printing one PASS/FAIL line each. Returns the number of failures.
int run_acceptance(std::ostream& os);

} // namespace eqfit

#endif // EQFIT_ACCEPTANCE_HPP
