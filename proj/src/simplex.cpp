#include "osw/lp.hpp"

#include <sstream>
#include <stdexcept>

#include "osw/eigen_rational.hpp"

namespace osw {

int LinearProgram::add_variable(std::string name, Rat objective_coeff) {
    var_names_.push_back(std::move(name));
    objective_.push_back(std::move(objective_coeff));
    return static_cast<int>(var_names_.size()) - 1;
}

void LinearProgram::add_constraint(LinearConstraint constraint) {
    for (const auto& [v, c] : constraint.coeffs)
        if (v < 0 || v >= num_variables())
            throw std::out_of_range("constraint references unknown variable");
    constraints_.push_back(std::move(constraint));
}

std::string LinearProgram::dump() const {
    std::ostringstream out;
    out << "max";
    for (int v = 0; v < num_variables(); ++v)
        if (objective_[static_cast<std::size_t>(v)] != 0)
            out << ' ' << rat_str(objective_[static_cast<std::size_t>(v)]) << '*' << var_names_[static_cast<std::size_t>(v)];
    out << '\n';
    for (const auto& con : constraints_) {
        if (!con.name.empty()) out << con.name << ": ";
        bool first = true;
        for (const auto& [v, c] : con.coeffs) {
            if (!first) out << " + ";
            out << rat_str(c) << '*' << var_names_[static_cast<std::size_t>(v)];
            first = false;
        }
        if (first) out << '0';
        out << (con.sense == 'L' ? " <= " : con.sense == 'G' ? " >= " : " = ");
        out << rat_str(con.rhs) << '\n';
    }
    return out.str();
}

namespace {

using Mat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

struct Tableau {
    Mat t;                   // m rows of constraints plus one cost row; last column is rhs
    std::vector<int> basis;  // basic column per constraint row

    int rows() const { return static_cast<int>(t.rows()) - 1; }
    int cols() const { return static_cast<int>(t.cols()) - 1; }

    void pivot(int row, int col) {
        t.row(row) /= t(row, col);
        for (int r = 0; r < static_cast<int>(t.rows()); ++r) {
            if (r == row || t(r, col) == 0) continue;
            t.row(r) -= t(r, col) * t.row(row);
        }
        basis[static_cast<std::size_t>(row)] = col;
    }
};

enum class CoreStatus { Optimal, Unbounded };

// Runs Bland's rule on the cost row (row m): enter the smallest allowed column
// with a positive reduced cost, leave by minimum ratio with smallest basic
// column as tie-break. Columns at index >= allowed_cols never enter.
CoreStatus simplex_core(Tableau& tab, int allowed_cols) {
    const int m = tab.rows();
    for (;;) {
        int enter = -1;
        for (int c = 0; c < allowed_cols; ++c)
            if (tab.t(m, c) > 0) {
                enter = c;
                break;
            }
        if (enter < 0) return CoreStatus::Optimal;

        int leave = -1;
        Rat best_ratio(0);
        for (int r = 0; r < m; ++r) {
            if (tab.t(r, enter) <= 0) continue;
            Rat ratio = tab.t(r, tab.cols()) / tab.t(r, enter);
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && tab.basis[static_cast<std::size_t>(r)] <
                                            tab.basis[static_cast<std::size_t>(leave)])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave < 0) return CoreStatus::Unbounded;
        tab.pivot(leave, enter);
    }
}

}  // namespace

LpSolution simplex_solve(const LinearProgram& lp) {
    const int n = lp.num_variables();
    const int m = static_cast<int>(lp.constraints().size());

    // Dense constraint data with nonnegative right-hand sides.
    Mat a = Mat::Zero(m, n);
    std::vector<Rat> b(static_cast<std::size_t>(m), Rat(0));
    std::vector<char> sense(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) {
        const auto& con = lp.constraints()[static_cast<std::size_t>(r)];
        for (const auto& [v, c] : con.coeffs) a(r, v) += c;
        b[static_cast<std::size_t>(r)] = con.rhs;
        sense[static_cast<std::size_t>(r)] = con.sense;
        if (b[static_cast<std::size_t>(r)] < 0) {
            a.row(r) = -a.row(r);
            b[static_cast<std::size_t>(r)] = -b[static_cast<std::size_t>(r)];
            auto& s = sense[static_cast<std::size_t>(r)];
            s = (s == 'L') ? 'G' : (s == 'G') ? 'L' : 'E';
        }
    }

    // Column layout: structural | slack/surplus | artificial | rhs.
    int num_slack = 0, num_art = 0;
    for (char s : sense) {
        if (s != 'E') ++num_slack;
        if (s != 'L') ++num_art;
    }
    const int art_begin = n + num_slack;
    const int total = n + num_slack + num_art;

    Tableau tab;
    tab.t = Mat::Zero(m + 1, total + 1);
    tab.basis.assign(static_cast<std::size_t>(m), -1);
    int next_slack = n, next_art = art_begin;
    for (int r = 0; r < m; ++r) {
        tab.t.block(r, 0, 1, n) = a.row(r);
        tab.t(r, total) = b[static_cast<std::size_t>(r)];
        char s = sense[static_cast<std::size_t>(r)];
        if (s == 'L') {
            tab.t(r, next_slack) = 1;
            tab.basis[static_cast<std::size_t>(r)] = next_slack++;
        } else {
            if (s == 'G') tab.t(r, next_slack++) = -1;
            tab.t(r, next_art) = 1;
            tab.basis[static_cast<std::size_t>(r)] = next_art++;
        }
    }

    LpSolution sol;
    if (num_art > 0) {
        // Phase 1: maximize −Σ artificials, expressed through the current basis.
        for (int r = 0; r < m; ++r)
            if (tab.basis[static_cast<std::size_t>(r)] >= art_begin)
                tab.t.row(m) += tab.t.row(r);
        tab.t.block(m, art_begin, 1, num_art).setZero();
        simplex_core(tab, art_begin);  // artificials never re-enter
        if (tab.t(m, total) != 0) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        // Pivot any degenerate artificial out of the basis; a row with no
        // usable entry is redundant and can stay (its rhs is zero).
        for (int r = 0; r < m; ++r) {
            if (tab.basis[static_cast<std::size_t>(r)] < art_begin) continue;
            for (int c = 0; c < art_begin; ++c)
                if (tab.t(r, c) != 0) {
                    tab.pivot(r, c);
                    break;
                }
        }
        tab.t.row(m).setZero();
    }

    // Phase 2 cost row: reduced costs of the original objective.
    for (int v = 0; v < n; ++v) tab.t(m, v) = lp.objective()[static_cast<std::size_t>(v)];
    for (int r = 0; r < m; ++r) {
        int bcol = tab.basis[static_cast<std::size_t>(r)];
        if (bcol < n && tab.t(m, bcol) != 0) tab.t.row(m) -= tab.t(m, bcol) * tab.t.row(r);
    }
    if (simplex_core(tab, art_begin) == CoreStatus::Unbounded) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }

    sol.status = LpStatus::Optimal;
    sol.x.assign(static_cast<std::size_t>(n), Rat(0));
    for (int r = 0; r < m; ++r) {
        int bcol = tab.basis[static_cast<std::size_t>(r)];
        if (bcol >= 0 && bcol < n) sol.x[static_cast<std::size_t>(bcol)] = tab.t(r, total);
    }
    for (int v = 0; v < n; ++v)
        sol.value += lp.objective()[static_cast<std::size_t>(v)] * sol.x[static_cast<std::size_t>(v)];
    return sol;
}

}  // namespace osw
