#include "dhsim/lp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dhsim::lp {

int LinearProgram::add_variable(double lo, double hi, double cost, std::string name) {
    if (lo > hi) throw std::invalid_argument("variable bounds crossed: " + name);
    cost_.push_back(cost);
    lo_.push_back(lo);
    hi_.push_back(hi);
    if (name.empty()) name = "x" + std::to_string(cost_.size() - 1);
    var_names_.push_back(std::move(name));
    return static_cast<int>(cost_.size()) - 1;
}

int LinearProgram::add_row(double lo, double hi, std::vector<std::pair<int, double>> coeffs,
                           std::string name, bool priced) {
    if (lo > hi) throw std::invalid_argument("row bounds crossed: " + name);
    for (auto& [j, a] : coeffs) {
        if (j < 0 || j >= num_vars()) throw std::invalid_argument("row references unknown variable");
        (void)a;
    }
    if (name.empty()) name = "r" + std::to_string(rows_.size());
    rows_.push_back(Row{lo, hi, std::move(coeffs), std::move(name), priced});
    return static_cast<int>(rows_.size()) - 1;
}

void LinearProgram::set_bounds(int var, double lo, double hi) {
    if (lo > hi) throw std::invalid_argument("variable bounds crossed");
    lo_[var] = lo;
    hi_[var] = hi;
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::Infeasible: return "Infeasible";
        case SolveStatus::Unbounded: return "Unbounded";
        case SolveStatus::NumericalFailure: return "NumericalFailure";
    }
    return "?";
}

namespace {

constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kPhase1Tol = 1e-7;
constexpr int kRefactorEvery = 200;
constexpr int kStallLimit = 800;

enum class VStat : unsigned char { Basic, AtLower, AtUpper, Free };

// Bounded-variable two-phase revised simplex with a dense explicit basis
// inverse. Rows are rewritten as a'x - s = 0 with the (scaled) row bounds
// carried by the slack s; infeasible starting rows get a phase-1 artificial.
class Simplex {
public:
    explicit Simplex(const LinearProgram& lp) : lp_(lp) { build(); }

    LpSolution run() {
        LpSolution sol;
        if (m_ == 0) return solve_unconstrained();

        set_phase1_costs();
        SolveStatus st = iterate(/*phase1=*/true);
        if (st != SolveStatus::Optimal) {
            sol.status = st == SolveStatus::Unbounded ? SolveStatus::NumericalFailure : st;
            sol.iterations = iters_;
            return sol;
        }
        double infeas = phase1_objective();
        if (infeas > kPhase1Tol * std::max(1.0, rhs_scale_)) {
            sol.status = SolveStatus::Infeasible;
            sol.iterations = iters_;
            return sol;
        }
        pin_artificials();

        set_phase2_costs();
        st = iterate(/*phase1=*/false);
        sol.iterations = iters_;
        if (st != SolveStatus::Optimal) {
            sol.status = st;
            return sol;
        }
        return extract();
    }

private:
    const LinearProgram& lp_;

    int n_ = 0;       // structural columns
    int m_ = 0;       // rows
    int ncols_ = 0;   // structural + slack + artificial
    int nart_ = 0;

    // Column-wise sparse matrix over all columns.
    std::vector<int> colptr_;
    std::vector<int> rowidx_;
    std::vector<double> colval_;

    std::vector<double> lo_, hi_, cost_;
    std::vector<double> xval_;          // current value of every column
    std::vector<VStat> stat_;
    std::vector<int> basic_;            // column of basis row i
    std::vector<double> binv_;          // m x m row-major
    std::vector<double> row_scale_;
    double rhs_scale_ = 1.0;
    int iters_ = 0;
    int pivots_since_refactor_ = 0;

    double& binv(int i, int j) { return binv_[static_cast<std::size_t>(i) * m_ + j]; }

    void build() {
        n_ = lp_.num_vars();
        m_ = lp_.num_rows();
        const auto& rows = lp_.rows();

        row_scale_.assign(m_, 1.0);
        for (int i = 0; i < m_; ++i) {
            double mx = 0.0;
            for (auto& [j, a] : rows[i].coeffs) mx = std::max(mx, std::abs(a));
            if (mx > 0.0) row_scale_[i] = 1.0 / mx;
        }

        // Build columns: structural, then one slack per row.
        std::vector<std::vector<std::pair<int, double>>> cols(n_ + m_);
        for (int i = 0; i < m_; ++i) {
            for (auto& [j, a] : rows[i].coeffs)
                if (a != 0.0) cols[j].push_back({i, a * row_scale_[i]});
            cols[n_ + i].push_back({i, -1.0});
        }

        lo_.assign(n_ + m_, 0.0);
        hi_.assign(n_ + m_, 0.0);
        for (int j = 0; j < n_; ++j) {
            lo_[j] = lp_.lower()[j];
            hi_[j] = lp_.upper()[j];
        }
        for (int i = 0; i < m_; ++i) {
            lo_[n_ + i] = rows[i].lo * row_scale_[i];
            hi_[n_ + i] = rows[i].hi * row_scale_[i];
            if (std::isfinite(lo_[n_ + i])) rhs_scale_ = std::max(rhs_scale_, std::abs(lo_[n_ + i]));
            if (std::isfinite(hi_[n_ + i])) rhs_scale_ = std::max(rhs_scale_, std::abs(hi_[n_ + i]));
        }

        // Nonbasic start for structurals at the bound nearest zero.
        xval_.assign(n_ + m_, 0.0);
        stat_.assign(n_ + m_, VStat::AtLower);
        for (int j = 0; j < n_; ++j) {
            if (std::isfinite(lo_[j]) && std::isfinite(hi_[j]))
                stat_[j] = std::abs(lo_[j]) <= std::abs(hi_[j]) ? VStat::AtLower : VStat::AtUpper;
            else if (std::isfinite(lo_[j]))
                stat_[j] = VStat::AtLower;
            else if (std::isfinite(hi_[j]))
                stat_[j] = VStat::AtUpper;
            else
                stat_[j] = VStat::Free;
            xval_[j] = stat_[j] == VStat::AtLower   ? lo_[j]
                       : stat_[j] == VStat::AtUpper ? hi_[j]
                                                    : 0.0;
        }

        std::vector<double> activity(m_, 0.0);
        for (int j = 0; j < n_; ++j)
            if (xval_[j] != 0.0)
                for (auto& [i, a] : cols[j]) activity[i] += a * xval_[j];

        // Slack basic where the start is feasible, artificial otherwise.
        basic_.assign(m_, -1);
        std::vector<double> art_sign(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            int s = n_ + i;
            if (activity[i] >= lo_[s] - kFeasTol && activity[i] <= hi_[s] + kFeasTol) {
                basic_[i] = s;
                stat_[s] = VStat::Basic;
                xval_[s] = activity[i];
            } else {
                double bound = std::clamp(activity[i], lo_[s], hi_[s]);
                stat_[s] = bound == lo_[s] ? VStat::AtLower : VStat::AtUpper;
                xval_[s] = bound;
                art_sign[i] = activity[i] > hi_[s] ? -1.0 : 1.0;
            }
        }

        for (int i = 0; i < m_; ++i) {
            if (art_sign[i] == 0.0) continue;
            int a = n_ + m_ + nart_;
            cols.push_back({{i, art_sign[i]}});
            lo_.push_back(0.0);
            hi_.push_back(kInf);
            double resid = activity[i] - xval_[n_ + i];  // sign*r = -(act - bound)
            xval_.push_back(std::abs(resid));
            stat_.push_back(VStat::Basic);
            basic_[i] = a;
            ++nart_;
        }
        ncols_ = n_ + m_ + nart_;

        colptr_.assign(ncols_ + 1, 0);
        for (int j = 0; j < ncols_; ++j) colptr_[j + 1] = colptr_[j] + static_cast<int>(cols[j].size());
        rowidx_.resize(colptr_[ncols_]);
        colval_.resize(colptr_[ncols_]);
        for (int j = 0; j < ncols_; ++j) {
            int p = colptr_[j];
            for (auto& [i, a] : cols[j]) {
                rowidx_[p] = i;
                colval_[p] = a;
                ++p;
            }
        }

        // Initial basis is slacks/artificials: diagonal with entries -1 or +-1.
        binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            double d = basic_[i] >= n_ + m_ ? art_sign[i] : -1.0;
            binv(i, i) = 1.0 / d;
        }
    }

    void set_phase1_costs() {
        cost_.assign(ncols_, 0.0);
        for (int k = 0; k < nart_; ++k) cost_[n_ + m_ + k] = 1.0;
    }

    void set_phase2_costs() {
        cost_.assign(ncols_, 0.0);
        for (int j = 0; j < n_; ++j) cost_[j] = lp_.costs()[j];
    }

    double phase1_objective() const {
        double s = 0.0;
        for (int k = 0; k < nart_; ++k) s += xval_[n_ + m_ + k];
        return s;
    }

    void pin_artificials() {
        for (int k = 0; k < nart_; ++k) {
            int a = n_ + m_ + k;
            if (std::abs(xval_[a]) <= kPhase1Tol * std::max(1.0, rhs_scale_)) xval_[a] = 0.0;
            lo_[a] = hi_[a] = 0.0;
            if (stat_[a] != VStat::Basic) stat_[a] = VStat::AtLower;
        }
    }

    double current_objective() const {
        double obj = 0.0;
        for (int j = 0; j < ncols_; ++j)
            if (cost_[j] != 0.0) obj += cost_[j] * xval_[j];
        return obj;
    }

    void compute_duals(std::vector<double>& y) const {
        y.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            double cb = cost_[basic_[i]];
            if (cb == 0.0) continue;
            const double* row = &binv_[static_cast<std::size_t>(i) * m_];
            for (int j = 0; j < m_; ++j) y[j] += cb * row[j];
        }
    }

    double reduced_cost(int j, const std::vector<double>& y) const {
        double d = cost_[j];
        for (int p = colptr_[j]; p < colptr_[j + 1]; ++p) d -= y[rowidx_[p]] * colval_[p];
        return d;
    }

    void ftran(int j, std::vector<double>& w) const {
        w.assign(m_, 0.0);
        for (int p = colptr_[j]; p < colptr_[j + 1]; ++p) {
            double a = colval_[p];
            int k = rowidx_[p];
            for (int i = 0; i < m_; ++i) w[i] += binv_[static_cast<std::size_t>(i) * m_ + k] * a;
        }
    }

    bool refactorize() {
        // Dense Gauss-Jordan inversion of the basis matrix.
        std::vector<double> mat(static_cast<std::size_t>(m_) * m_, 0.0);
        for (int i = 0; i < m_; ++i) {
            int j = basic_[i];
            for (int p = colptr_[j]; p < colptr_[j + 1]; ++p)
                mat[static_cast<std::size_t>(rowidx_[p]) * m_ + i] = colval_[p];
        }
        std::vector<double> inv(static_cast<std::size_t>(m_) * m_, 0.0);
        for (int i = 0; i < m_; ++i) inv[static_cast<std::size_t>(i) * m_ + i] = 1.0;
        for (int col = 0; col < m_; ++col) {
            int piv = col;
            double best = std::abs(mat[static_cast<std::size_t>(col) * m_ + col]);
            for (int i = col + 1; i < m_; ++i) {
                double v = std::abs(mat[static_cast<std::size_t>(i) * m_ + col]);
                if (v > best) {
                    best = v;
                    piv = i;
                }
            }
            if (best < 1e-12) return false;
            if (piv != col) {
                for (int j = 0; j < m_; ++j) {
                    std::swap(mat[static_cast<std::size_t>(piv) * m_ + j],
                              mat[static_cast<std::size_t>(col) * m_ + j]);
                    std::swap(inv[static_cast<std::size_t>(piv) * m_ + j],
                              inv[static_cast<std::size_t>(col) * m_ + j]);
                }
            }
            double d = mat[static_cast<std::size_t>(col) * m_ + col];
            for (int j = 0; j < m_; ++j) {
                mat[static_cast<std::size_t>(col) * m_ + j] /= d;
                inv[static_cast<std::size_t>(col) * m_ + j] /= d;
            }
            for (int i = 0; i < m_; ++i) {
                if (i == col) continue;
                double f = mat[static_cast<std::size_t>(i) * m_ + col];
                if (f == 0.0) continue;
                for (int j = 0; j < m_; ++j) {
                    mat[static_cast<std::size_t>(i) * m_ + j] -=
                        f * mat[static_cast<std::size_t>(col) * m_ + j];
                    inv[static_cast<std::size_t>(i) * m_ + j] -=
                        f * inv[static_cast<std::size_t>(col) * m_ + j];
                }
            }
        }
        binv_ = std::move(inv);
        recompute_basics();
        pivots_since_refactor_ = 0;
        return true;
    }

    void recompute_basics() {
        // x_B = B^{-1} (b - A_N x_N) with b = 0.
        std::vector<double> rhs(m_, 0.0);
        for (int j = 0; j < ncols_; ++j) {
            if (stat_[j] == VStat::Basic || xval_[j] == 0.0) continue;
            for (int p = colptr_[j]; p < colptr_[j + 1]; ++p)
                rhs[rowidx_[p]] -= colval_[p] * xval_[j];
        }
        for (int i = 0; i < m_; ++i) {
            double v = 0.0;
            const double* row = &binv_[static_cast<std::size_t>(i) * m_];
            for (int k = 0; k < m_; ++k) v += row[k] * rhs[k];
            xval_[basic_[i]] = v;
        }
    }

    SolveStatus iterate(bool phase1) {
        const int max_iters = 20000 + 60 * (m_ + ncols_);
        std::vector<double> y, w;
        bool bland = false;
        int stall = 0;
        double last_obj = current_objective();

        while (true) {
            if (++iters_ > max_iters) return SolveStatus::NumericalFailure;

            compute_duals(y);

            int q = -1;
            double best = 0.0;
            for (int j = 0; j < ncols_; ++j) {
                VStat st = stat_[j];
                if (st == VStat::Basic) continue;
                if (lo_[j] == hi_[j]) continue;  // fixed (pinned artificials)
                double d = reduced_cost(j, y);
                bool eligible = (st == VStat::AtLower && d < -kDualTol) ||
                                (st == VStat::AtUpper && d > kDualTol) ||
                                (st == VStat::Free && std::abs(d) > kDualTol);
                if (!eligible) continue;
                if (bland) {
                    q = j;
                    break;
                }
                if (std::abs(d) > best) {
                    best = std::abs(d);
                    q = j;
                }
            }
            if (q < 0) return SolveStatus::Optimal;

            double dq = reduced_cost(q, y);
            double dir = (stat_[q] == VStat::AtUpper || (stat_[q] == VStat::Free && dq > 0)) ? -1.0
                                                                                             : 1.0;
            ftran(q, w);

            // Ratio test: entering moves by t >= 0 in direction dir,
            // basics change by -dir * w.
            double t_limit = kInf;
            int leave = -1;       // basis position
            double leave_to = 0;  // bound the leaving variable lands on
            double own_range = hi_[q] - lo_[q];  // may be inf

            for (int i = 0; i < m_; ++i) {
                double delta = -dir * w[i];
                if (std::abs(delta) <= kPivotTol) continue;
                int b = basic_[i];
                double t;
                double target;
                if (delta < 0.0) {
                    if (!std::isfinite(lo_[b])) continue;
                    t = (xval_[b] - lo_[b]) / (-delta);
                    target = lo_[b];
                } else {
                    if (!std::isfinite(hi_[b])) continue;
                    t = (hi_[b] - xval_[b]) / delta;
                    target = hi_[b];
                }
                if (t < 0.0) t = 0.0;
                bool better = t < t_limit - 1e-12 ||
                              (t < t_limit + 1e-12 &&
                               (leave < 0 || (bland ? basic_[i] < basic_[leave]
                                                    : std::abs(w[i]) > std::abs(w[leave]))));
                if (better) {
                    t_limit = t;
                    leave = i;
                    leave_to = target;
                }
            }

            bool bound_flip = std::isfinite(own_range) && own_range <= t_limit;
            double t = bound_flip ? own_range : t_limit;
            if (!std::isfinite(t)) return phase1 ? SolveStatus::NumericalFailure : SolveStatus::Unbounded;

            for (int i = 0; i < m_; ++i) {
                double delta = -dir * w[i];
                if (delta != 0.0) xval_[basic_[i]] += delta * t;
            }

            if (bound_flip) {
                xval_[q] = dir > 0 ? hi_[q] : lo_[q];
                stat_[q] = dir > 0 ? VStat::AtUpper : VStat::AtLower;
            } else {
                int lv = basic_[leave];
                xval_[lv] = leave_to;
                stat_[lv] = leave_to == lo_[lv] ? VStat::AtLower : VStat::AtUpper;
                xval_[q] += dir * t;
                stat_[q] = VStat::Basic;
                basic_[leave] = q;

                // binv <- E * binv with eta column from w.
                double piv = w[leave];
                if (std::abs(piv) < kPivotTol) {
                    if (!refactorize()) return SolveStatus::NumericalFailure;
                    continue;
                }
                double* prow = &binv_[static_cast<std::size_t>(leave) * m_];
                for (int j = 0; j < m_; ++j) prow[j] /= piv;
                for (int i = 0; i < m_; ++i) {
                    if (i == leave) continue;
                    double f = w[i];
                    if (f == 0.0) continue;
                    double* row = &binv_[static_cast<std::size_t>(i) * m_];
                    for (int j = 0; j < m_; ++j) row[j] -= f * prow[j];
                }
                if (++pivots_since_refactor_ >= kRefactorEvery) {
                    if (!refactorize()) return SolveStatus::NumericalFailure;
                }
            }

            double obj = current_objective();
            if (obj < last_obj - 1e-12 * (1.0 + std::abs(last_obj))) {
                last_obj = obj;
                stall = 0;
                bland = false;
            } else if (++stall > kStallLimit) {
                bland = true;  // anti-cycling fallback
            }
        }
    }

    LpSolution solve_unconstrained() {
        LpSolution sol;
        sol.x.assign(n_, 0.0);
        for (int j = 0; j < n_; ++j) {
            double c = lp_.costs()[j];
            double v;
            if (c > 0.0)
                v = lp_.lower()[j];
            else if (c < 0.0)
                v = lp_.upper()[j];
            else
                v = std::isfinite(lp_.lower()[j]) ? lp_.lower()[j]
                                                  : std::min(lp_.upper()[j], 0.0);
            if (!std::isfinite(v)) {
                if (c == 0.0) {
                    v = 0.0;
                } else {
                    sol.status = SolveStatus::Unbounded;
                    return sol;
                }
            }
            sol.x[j] = v;
            sol.objective += c * v;
        }
        sol.dual_objective = sol.objective;
        sol.status = SolveStatus::Optimal;
        return sol;
    }

    LpSolution extract() {
        LpSolution sol;
        sol.iterations = iters_;

        if (!refactorize()) {
            sol.status = SolveStatus::NumericalFailure;
            return sol;
        }

        // Final feasibility check on scaled rows and bounds.
        std::vector<double> activity(m_, 0.0);
        for (int j = 0; j < n_; ++j) {
            if (xval_[j] == 0.0) continue;
            for (int p = colptr_[j]; p < colptr_[j + 1]; ++p)
                activity[rowidx_[p]] += colval_[p] * xval_[j];
        }
        double worst = 0.0;
        for (int i = 0; i < m_; ++i) {
            int s = n_ + i;
            worst = std::max(worst, lo_[s] - activity[i]);
            worst = std::max(worst, activity[i] - hi_[s]);
        }
        for (int j = 0; j < n_; ++j) {
            worst = std::max(worst, lo_[j] - xval_[j]);
            worst = std::max(worst, xval_[j] - hi_[j]);
        }
        if (worst > kFeasTol) {
            sol.status = SolveStatus::NumericalFailure;
            return sol;
        }

        sol.x.assign(xval_.begin(), xval_.begin() + n_);
        sol.objective = 0.0;
        for (int j = 0; j < n_; ++j) sol.objective += lp_.costs()[j] * xval_[j];

        std::vector<double> y;
        compute_duals(y);
        sol.row_dual.resize(m_);
        for (int i = 0; i < m_; ++i) sol.row_dual[i] = y[i] * row_scale_[i];

        // Dual objective: b = 0, so only nonbasic bound terms contribute.
        double dual_obj = 0.0;
        for (int j = 0; j < ncols_; ++j) {
            if (stat_[j] == VStat::Basic || stat_[j] == VStat::Free) continue;
            double d = reduced_cost(j, y);
            dual_obj += d * xval_[j];
        }
        sol.dual_objective = dual_obj;

        sol.status = SolveStatus::Optimal;
        return sol;
    }
};

}  // namespace

LpSolution solve(const LinearProgram& lp) {
    Simplex s(lp);
    return s.run();
}

void write_lp_format(const LinearProgram& lp, std::ostream& os) {
    os << "\\ dhsim LP dump\nMinimize\n obj:";
    bool any = false;
    for (int j = 0; j < lp.num_vars(); ++j) {
        double c = lp.costs()[j];
        if (c == 0.0) continue;
        char buf[64];
        std::snprintf(buf, sizeof(buf), " %+.17g ", c);
        os << buf << lp.var_name(j);
        any = true;
    }
    if (!any) os << " 0 " << lp.var_name(0);
    os << "\nSubject To\n";
    for (const auto& row : lp.rows()) {
        auto terms = [&](std::ostream& o) {
            for (auto& [j, a] : row.coeffs) {
                char buf[64];
                std::snprintf(buf, sizeof(buf), " %+.17g ", a);
                o << buf << lp.var_name(j);
            }
        };
        if (row.lo == row.hi) {
            os << " " << row.name << ":";
            terms(os);
            os << " = " << row.lo << "\n";
        } else {
            if (std::isfinite(row.lo)) {
                os << " " << row.name << "_lo:";
                terms(os);
                os << " >= " << row.lo << "\n";
            }
            if (std::isfinite(row.hi)) {
                os << " " << row.name << "_hi:";
                terms(os);
                os << " <= " << row.hi << "\n";
            }
        }
    }
    os << "Bounds\n";
    for (int j = 0; j < lp.num_vars(); ++j) {
        double lo = lp.lower()[j], hi = lp.upper()[j];
        if (!std::isfinite(lo) && !std::isfinite(hi)) {
            os << " " << lp.var_name(j) << " free\n";
        } else if (lo == hi) {
            os << " " << lp.var_name(j) << " = " << lo << "\n";
        } else {
            os << " " << (std::isfinite(lo) ? std::to_string(lo) : std::string("-inf")) << " <= "
               << lp.var_name(j) << " <= "
               << (std::isfinite(hi) ? std::to_string(hi) : std::string("+inf")) << "\n";
        }
    }
    os << "End\n";
}

}  // namespace dhsim::lp
