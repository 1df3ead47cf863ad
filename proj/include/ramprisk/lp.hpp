#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "ramprisk/estimator.hpp"

namespace ramprisk::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { less_equal, equal, greater_equal };

struct Constraint {
    std::vector<double> coefficients;
    Relation relation = Relation::less_equal;
    double rhs = 0.0;
};

struct Bounds {
    double lower = 0.0;
    double upper = kInf;
};

/// Dense linear program:  maximize c^T x  subject to rows and per-variable bounds.
class LinearProgram {
public:
    explicit LinearProgram(std::size_t num_variables);

    std::size_t num_variables() const noexcept { return objective_.size(); }
    std::size_t num_constraints() const noexcept { return constraints_.size(); }

    void set_objective(std::vector<double> coefficients);
    void set_objective_coefficient(std::size_t var, double value);
    void set_bounds(std::size_t var, Bounds bounds);
    void add_constraint(Constraint row);

    const std::vector<double>& objective() const noexcept { return objective_; }
    const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
    const std::vector<Bounds>& bounds() const noexcept { return bounds_; }

private:
    std::vector<double> objective_;
    std::vector<Bounds> bounds_;
    std::vector<Constraint> constraints_;
};

enum class Status { optimal, unbounded, infeasible };

struct LpSolution {
    Status status = Status::infeasible;
    double objective_value = 0.0;
    std::vector<double> variable_values;
};

/// Two-phase dense tableau simplex with Bland's rule. Infeasible and unbounded
/// programs are reported through Status; a singular pivot or an exhausted
/// iteration budget throws SolverFailure.
LpSolution solve(const LinearProgram& program);

/// Largest absolute violation over all rows (each row scaled by its largest
/// coefficient magnitude) and all variable bounds.
double max_violation(const LinearProgram& program, const std::vector<double>& x);

/// Largest I accepted by build_dual_lp.
inline constexpr std::size_t kMaxDualSamples = 1'000'000;

/// The explicit dual program over (beta_1..beta_I free, gamma >= 0, tau_1..tau_I >= 0):
///   max (1/I) sum beta_i - gamma * radius
///   s.t. beta_i <= 1,  scale * tau_i - gamma <= 0,  beta_i - g_i * tau_i <= 0.
/// Variable layout: beta at [0, I), gamma at I, tau at [I+1, 2I+1).
LinearProgram build_dual_lp(const MarginVector& margins, double radius, double scale);

/// Solves build_dual_lp and packages the result like solve_worst_case.
/// active_breakpoint is always empty on this path.
WorstCaseSolution solve_worst_case_lp(const MarginVector& margins, double radius, double scale);

}  // namespace ramprisk::lp
