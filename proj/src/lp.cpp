#include "ramprisk/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ramprisk/errors.hpp"

namespace ramprisk::lp {

LinearProgram::LinearProgram(std::size_t num_variables)
    : objective_(num_variables, 0.0), bounds_(num_variables) {}

void LinearProgram::set_objective(std::vector<double> coefficients) {
    if (coefficients.size() != objective_.size()) {
        throw InvalidArgument("objective has the wrong number of coefficients");
    }
    for (double c : coefficients) {
        if (!std::isfinite(c)) throw InvalidArgument("objective coefficients must be finite");
    }
    objective_ = std::move(coefficients);
}

void LinearProgram::set_objective_coefficient(std::size_t var, double value) {
    if (var >= objective_.size()) throw InvalidArgument("objective index out of range");
    if (!std::isfinite(value)) throw InvalidArgument("objective coefficients must be finite");
    objective_[var] = value;
}

void LinearProgram::set_bounds(std::size_t var, Bounds bounds) {
    if (var >= bounds_.size()) throw InvalidArgument("bound index out of range");
    if (std::isnan(bounds.lower) || std::isnan(bounds.upper) || bounds.lower == kInf ||
        bounds.upper == -kInf) {
        throw InvalidArgument("invalid variable bounds");
    }
    bounds_[var] = bounds;
}

void LinearProgram::add_constraint(Constraint row) {
    if (row.coefficients.size() != objective_.size()) {
        throw InvalidArgument("constraint has the wrong number of coefficients");
    }
    for (double a : row.coefficients) {
        if (!std::isfinite(a)) throw InvalidArgument("constraint coefficients must be finite");
    }
    if (!std::isfinite(row.rhs)) throw InvalidArgument("constraint rhs must be finite");
    constraints_.push_back(std::move(row));
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-11;
constexpr double kFeasTol = 1e-9;

// How an original variable is rebuilt from the nonnegative standard-form columns.
struct VariableMap {
    enum class Kind { shifted, mirrored, split } kind = Kind::shifted;
    std::size_t column = 0;  // split: the positive part; the negative part is column + 1
    double offset = 0.0;     // shifted: lower bound; mirrored: upper bound
};

// Dense tableau over m rows and n structural+slack+artificial columns. Row i
// stores n coefficients followed by the right-hand side.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : m_(rows), n_(cols), a_(rows * (cols + 1), 0.0), cost_(cols + 1, 0.0), basis_(rows, 0) {}

    double& at(std::size_t i, std::size_t j) { return a_[i * (n_ + 1) + j]; }
    double at(std::size_t i, std::size_t j) const { return a_[i * (n_ + 1) + j]; }
    double& rhs(std::size_t i) { return at(i, n_); }
    double rhs(std::size_t i) const { return at(i, n_); }

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    std::vector<std::size_t>& basis() { return basis_; }

    // Loads reduced costs for maximizing `c` (size n) under the current basis.
    void price(const std::vector<double>& c) {
        std::fill(cost_.begin(), cost_.end(), 0.0);
        std::copy(c.begin(), c.end(), cost_.begin());
        for (std::size_t i = 0; i < m_; ++i) {
            const double cb = c[basis_[i]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j <= n_; ++j) cost_[j] -= cb * at(i, j);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        const double p = at(r, c);
        if (std::abs(p) < kPivotTol) {
            throw SolverFailure("simplex: singular pivot");
        }
        for (std::size_t j = 0; j <= n_; ++j) at(r, j) /= p;
        at(r, c) = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            const double f = at(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n_; ++j) at(i, j) -= f * at(r, j);
            at(i, c) = 0.0;
        }
        const double f = cost_[c];
        if (f != 0.0) {
            for (std::size_t j = 0; j <= n_; ++j) cost_[j] -= f * at(r, j);
            cost_[c] = 0.0;
        }
        basis_[r] = c;
        if (!std::isfinite(cost_[n_])) {
            throw SolverFailure("simplex: non-finite tableau entry");
        }
    }

    // Runs Bland's rule to optimality over columns with allowed[j] set.
    // Returns false when unbounded.
    bool optimize(const std::vector<bool>& allowed, std::size_t& iterations, std::size_t max_iterations) {
        for (;;) {
            std::size_t enter = n_;
            for (std::size_t j = 0; j < n_; ++j) {
                if (allowed[j] && cost_[j] > kCostTol) {
                    enter = j;
                    break;
                }
            }
            if (enter == n_) return true;

            std::size_t leave = m_;
            double best = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                const double coef = at(i, enter);
                if (coef <= kPivotTol) continue;
                const double ratio = rhs(i) / coef;
                if (leave == m_ || ratio < best - 1e-12) {
                    best = ratio;
                    leave = i;
                } else if (ratio <= best + 1e-12 && basis_[i] < basis_[leave]) {
                    leave = i;  // Bland: lowest basic index among ties
                }
            }
            if (leave == m_) return false;

            if (++iterations > max_iterations) {
                throw SolverFailure("simplex: iteration limit reached");
            }
            pivot(leave, enter);
        }
    }

    // Current objective value c_B^T x_B.
    double value() const { return -cost_[n_]; }

private:
    std::size_t m_;
    std::size_t n_;
    std::vector<double> a_;
    std::vector<double> cost_;
    std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution solve(const LinearProgram& program) {
    const std::size_t nvars = program.num_variables();
    const auto& bounds = program.bounds();

    // Map every original variable onto nonnegative columns.
    std::vector<VariableMap> maps(nvars);
    std::size_t structural = 0;
    for (std::size_t j = 0; j < nvars; ++j) {
        const Bounds& b = bounds[j];
        if (b.lower > b.upper) {
            return LpSolution{Status::infeasible, 0.0, {}};
        }
        if (std::isfinite(b.lower)) {
            maps[j] = {VariableMap::Kind::shifted, structural++, b.lower};
        } else if (std::isfinite(b.upper)) {
            maps[j] = {VariableMap::Kind::mirrored, structural++, b.upper};
        } else {
            maps[j] = {VariableMap::Kind::split, structural, 0.0};
            structural += 2;
        }
    }

    // Rows in standard-form columns: coefficients, relation, rhs.
    struct Row {
        std::vector<double> coef;
        Relation relation;
        double rhs;
    };
    std::vector<Row> rows;
    auto translate = [&](const std::vector<double>& coefficients, Relation rel, double rhs) {
        Row row{std::vector<double>(structural, 0.0), rel, rhs};
        for (std::size_t j = 0; j < nvars; ++j) {
            const double a = coefficients[j];
            if (a == 0.0) continue;
            const VariableMap& vm = maps[j];
            switch (vm.kind) {
                case VariableMap::Kind::shifted:
                    row.coef[vm.column] += a;
                    row.rhs -= a * vm.offset;
                    break;
                case VariableMap::Kind::mirrored:
                    row.coef[vm.column] -= a;
                    row.rhs -= a * vm.offset;
                    break;
                case VariableMap::Kind::split:
                    row.coef[vm.column] += a;
                    row.coef[vm.column + 1] -= a;
                    break;
            }
        }
        return row;
    };
    for (const Constraint& c : program.constraints()) {
        rows.push_back(translate(c.coefficients, c.relation, c.rhs));
    }
    for (std::size_t j = 0; j < nvars; ++j) {
        const Bounds& b = bounds[j];
        if (std::isfinite(b.lower) && std::isfinite(b.upper)) {
            Row row{std::vector<double>(structural, 0.0), Relation::less_equal, b.upper - b.lower};
            row.coef[maps[j].column] = 1.0;
            rows.push_back(std::move(row));
        }
    }

    // Normalize rows and make every rhs nonnegative.
    std::size_t slack_count = 0;
    std::size_t artificial_count = 0;
    for (Row& row : rows) {
        double largest = 0.0;
        for (double a : row.coef) largest = std::max(largest, std::abs(a));
        if (largest > 0.0) {
            for (double& a : row.coef) a /= largest;
            row.rhs /= largest;
        }
        if (row.rhs < 0.0) {
            for (double& a : row.coef) a = -a;
            row.rhs = -row.rhs;
            if (row.relation == Relation::less_equal) {
                row.relation = Relation::greater_equal;
            } else if (row.relation == Relation::greater_equal) {
                row.relation = Relation::less_equal;
            }
        }
        if (row.relation != Relation::equal) ++slack_count;
        if (row.relation != Relation::less_equal) ++artificial_count;
    }

    const std::size_t m = rows.size();
    const std::size_t first_slack = structural;
    const std::size_t first_artificial = structural + slack_count;
    const std::size_t n = first_artificial + artificial_count;

    Tableau tab(m, n);
    {
        std::size_t slack = first_slack;
        std::size_t art = first_artificial;
        for (std::size_t i = 0; i < m; ++i) {
            const Row& row = rows[i];
            for (std::size_t j = 0; j < structural; ++j) tab.at(i, j) = row.coef[j];
            tab.rhs(i) = row.rhs;
            switch (row.relation) {
                case Relation::less_equal:
                    tab.at(i, slack) = 1.0;
                    tab.basis()[i] = slack++;
                    break;
                case Relation::greater_equal:
                    tab.at(i, slack++) = -1.0;
                    tab.at(i, art) = 1.0;
                    tab.basis()[i] = art++;
                    break;
                case Relation::equal:
                    tab.at(i, art) = 1.0;
                    tab.basis()[i] = art++;
                    break;
            }
        }
    }

    const std::size_t max_iterations = 200 * (m + n) + 10'000;
    std::size_t iterations = 0;

    if (artificial_count > 0) {
        std::vector<double> phase1(n, 0.0);
        for (std::size_t j = first_artificial; j < n; ++j) phase1[j] = -1.0;
        tab.price(phase1);
        std::vector<bool> all(n, true);
        tab.optimize(all, iterations, max_iterations);
        if (tab.value() < -kFeasTol) {
            return LpSolution{Status::infeasible, 0.0, {}};
        }
        // Drive artificials still basic (at zero) out of the basis where possible.
        for (std::size_t i = 0; i < m; ++i) {
            if (tab.basis()[i] < first_artificial) continue;
            for (std::size_t j = 0; j < first_artificial; ++j) {
                if (std::abs(tab.at(i, j)) > kPivotTol) {
                    tab.pivot(i, j);
                    break;
                }
            }
            // A row with no eligible column is redundant; its artificial stays at zero
            // and is barred from re-entering below.
        }
    }

    std::vector<double> phase2(n, 0.0);
    for (std::size_t j = 0; j < nvars; ++j) {
        const double c = program.objective()[j];
        const VariableMap& vm = maps[j];
        switch (vm.kind) {
            case VariableMap::Kind::shifted: phase2[vm.column] += c; break;
            case VariableMap::Kind::mirrored: phase2[vm.column] -= c; break;
            case VariableMap::Kind::split:
                phase2[vm.column] += c;
                phase2[vm.column + 1] -= c;
                break;
        }
    }
    tab.price(phase2);
    std::vector<bool> allowed(n, true);
    for (std::size_t j = first_artificial; j < n; ++j) allowed[j] = false;
    if (!tab.optimize(allowed, iterations, max_iterations)) {
        return LpSolution{Status::unbounded, 0.0, {}};
    }

    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) y[tab.basis()[i]] = tab.rhs(i);

    LpSolution solution;
    solution.status = Status::optimal;
    solution.variable_values.resize(nvars);
    for (std::size_t j = 0; j < nvars; ++j) {
        const VariableMap& vm = maps[j];
        switch (vm.kind) {
            case VariableMap::Kind::shifted: solution.variable_values[j] = vm.offset + y[vm.column]; break;
            case VariableMap::Kind::mirrored: solution.variable_values[j] = vm.offset - y[vm.column]; break;
            case VariableMap::Kind::split:
                solution.variable_values[j] = y[vm.column] - y[vm.column + 1];
                break;
        }
    }
    double objective = 0.0;
    for (std::size_t j = 0; j < nvars; ++j) {
        objective += program.objective()[j] * solution.variable_values[j];
    }
    solution.objective_value = objective;
    return solution;
}

double max_violation(const LinearProgram& program, const std::vector<double>& x) {
    if (x.size() != program.num_variables()) {
        throw InvalidArgument("max_violation: wrong number of values");
    }
    double worst = 0.0;
    for (const Constraint& c : program.constraints()) {
        double largest = 0.0;
        double lhs = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            largest = std::max(largest, std::abs(c.coefficients[j]));
            lhs += c.coefficients[j] * x[j];
        }
        const double norm = largest > 0.0 ? largest : 1.0;
        double violation = 0.0;
        switch (c.relation) {
            case Relation::less_equal: violation = lhs - c.rhs; break;
            case Relation::greater_equal: violation = c.rhs - lhs; break;
            case Relation::equal: violation = std::abs(lhs - c.rhs); break;
        }
        worst = std::max(worst, violation / norm);
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        const Bounds& b = program.bounds()[j];
        worst = std::max(worst, b.lower - x[j]);
        worst = std::max(worst, x[j] - b.upper);
    }
    return worst;
}

LinearProgram build_dual_lp(const MarginVector& margins, double radius, double scale) {
    const std::size_t count = margins.size();
    if (count == 0) throw EmptyInput("build_dual_lp: no margins");
    if (count > kMaxDualSamples) {
        throw InvalidArgument("build_dual_lp: " + std::to_string(count) + " samples exceeds the limit of " +
                              std::to_string(kMaxDualSamples));
    }
    if (!std::isfinite(radius) || radius < 0.0) {
        throw InvalidArgument("build_dual_lp: radius must be finite and >= 0");
    }
    if (!std::isfinite(scale) || scale <= 0.0) {
        throw InvalidArgument("build_dual_lp: scale must be finite and > 0");
    }

    const std::size_t gamma = count;
    const auto beta = [](std::size_t i) { return i; };
    const auto tau = [count](std::size_t i) { return count + 1 + i; };

    LinearProgram program(2 * count + 1);
    const double weight = 1.0 / static_cast<double>(count);
    for (std::size_t i = 0; i < count; ++i) {
        program.set_objective_coefficient(beta(i), weight);
        program.set_bounds(beta(i), Bounds{-kInf, kInf});
        program.set_bounds(tau(i), Bounds{0.0, kInf});
    }
    program.set_objective_coefficient(gamma, -radius);
    program.set_bounds(gamma, Bounds{0.0, kInf});

    for (std::size_t i = 0; i < count; ++i) {
        Constraint cap{std::vector<double>(program.num_variables(), 0.0), Relation::less_equal, 1.0};
        cap.coefficients[beta(i)] = 1.0;
        program.add_constraint(std::move(cap));

        Constraint norm{std::vector<double>(program.num_variables(), 0.0), Relation::less_equal, 0.0};
        norm.coefficients[tau(i)] = scale;
        norm.coefficients[gamma] = -1.0;
        program.add_constraint(std::move(norm));

        Constraint margin{std::vector<double>(program.num_variables(), 0.0), Relation::less_equal, 0.0};
        margin.coefficients[beta(i)] = 1.0;
        margin.coefficients[tau(i)] = -margins[i];
        program.add_constraint(std::move(margin));
    }
    return program;
}

WorstCaseSolution solve_worst_case_lp(const MarginVector& margins, double radius, double scale) {
    const LinearProgram program = build_dual_lp(margins, radius, scale);
    const LpSolution solution = solve(program);
    if (solution.status != Status::optimal) {
        throw SolverFailure("dual program did not solve to optimality");
    }
    WorstCaseSolution out;
    out.value = std::clamp(solution.objective_value, 0.0, 1.0);
    out.gamma_star = std::max(0.0, solution.variable_values[margins.size()]);
    return out;
}

}  // namespace ramprisk::lp
