#pragma once

#include <string>
#include <utility>
#include <vector>

#include "osw/rational.hpp"

namespace osw {

// max cᵀx subject to the listed constraints and x ≥ 0; all data rational.
struct LinearConstraint {
    std::vector<std::pair<int, Rat>> coeffs;  // (variable, coefficient)
    char sense = 'L';                         // 'L' ≤, 'E' =, 'G' ≥
    Rat rhs{0};
    std::string name;
};

class LinearProgram {
public:
    int add_variable(std::string name, Rat objective_coeff = Rat(0));
    void add_constraint(LinearConstraint constraint);

    int num_variables() const { return static_cast<int>(var_names_.size()); }
    const std::vector<std::string>& variable_names() const { return var_names_; }
    const std::vector<Rat>& objective() const { return objective_; }
    const std::vector<LinearConstraint>& constraints() const { return constraints_; }

    // One constraint per line, rational coefficients as "p/q".
    std::string dump() const;

private:
    std::vector<std::string> var_names_;
    std::vector<Rat> objective_;
    std::vector<LinearConstraint> constraints_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rat value{0};
    std::vector<Rat> x;  // basic optimal assignment when Optimal
};

// Exact rational two-phase primal simplex with Bland's anti-cycling rule.
LpSolution simplex_solve(const LinearProgram& lp);

}  // namespace osw
