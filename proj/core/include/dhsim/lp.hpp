#pragma once

#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace dhsim::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Minimization LP over box-bounded variables with two-sided linear rows.
// A row with lo == hi is an equality. Rows can be marked "priced" so callers
// can find the constraints whose duals they care about; solve() reports
// duals for every row regardless.
class LinearProgram {
public:
    int add_variable(double lo, double hi, double cost, std::string name = {});
    int add_row(double lo, double hi, std::vector<std::pair<int, double>> coeffs,
                std::string name = {}, bool priced = false);
    int add_eq_row(double rhs, std::vector<std::pair<int, double>> coeffs, std::string name = {},
                   bool priced = false) {
        return add_row(rhs, rhs, std::move(coeffs), std::move(name), priced);
    }

    void set_cost(int var, double cost) { cost_[var] = cost; }
    void set_bounds(int var, double lo, double hi);

    int num_vars() const { return static_cast<int>(cost_.size()); }
    int num_rows() const { return static_cast<int>(rows_.size()); }

    struct Row {
        double lo, hi;
        std::vector<std::pair<int, double>> coeffs;
        std::string name;
        bool priced = false;
    };

    const std::vector<double>& costs() const { return cost_; }
    const std::vector<double>& lower() const { return lo_; }
    const std::vector<double>& upper() const { return hi_; }
    const std::vector<Row>& rows() const { return rows_; }
    const std::string& var_name(int j) const { return var_names_[j]; }

private:
    std::vector<double> cost_, lo_, hi_;
    std::vector<std::string> var_names_;
    std::vector<Row> rows_;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

const char* to_string(SolveStatus s);

struct LpSolution {
    SolveStatus status = SolveStatus::NumericalFailure;
    std::vector<double> x;
    double objective = 0.0;
    // Duals follow the convention dual_i = d(objective)/d(rhs_i): for an
    // equality "supply = demand" the dual is the cost of one extra unit of
    // demand, so it is nonnegative when all bids are.
    std::vector<double> row_dual;
    double dual_objective = 0.0;  // for strong-duality gap checks
    int iterations = 0;
};

// Feasibility tolerance (absolute, after row scaling) honored by solve().
inline constexpr double kFeasTol = 1e-6;

LpSolution solve(const LinearProgram& lp);

// Text dump in the CPLEX LP interchange format, for --dump-lp debugging.
void write_lp_format(const LinearProgram& lp, std::ostream& os);

}  // namespace dhsim::lp
