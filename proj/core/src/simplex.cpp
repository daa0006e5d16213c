#include "tbpp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tbpp {

namespace {
constexpr double kFeasTol = 1e-9;
constexpr double kRcTol = 1e-6;
constexpr double kPivotTol = 1e-8;
constexpr int kBlandAfter = 50;  // degenerate pivots before least-index pricing
}  // namespace

RmpSolver::RmpSolver(int rows) : rows_(rows) {}

int RmpSolver::add_column(std::vector<int> support, double cost) {
    for (int r : support)
        if (r < 0 || r >= rows_) throw std::out_of_range("column row index out of range");
    std::sort(support.begin(), support.end());
    cols_.push_back(std::move(support));
    costs_.push_back(cost);
    active_.push_back(1);
    return static_cast<int>(cols_.size()) - 1;
}

void RmpSolver::set_active(int col, bool active) {
    if (active_[col] == static_cast<char>(active)) return;
    active_[col] = active;
    if (!active)
        for (int id : basis_)
            if (id == col) basis_valid_ = false;
}

double RmpSolver::variable_cost(int id, bool phase1) const {
    if (phase1) return is_artificial(id) ? 1.0 : 0.0;
    return id >= 0 ? costs_[id] : 0.0;
}

void RmpSolver::column_of(int id, std::vector<double>& out) const {
    out.assign(rows_, 0.0);
    if (id >= 0) {
        for (int r : cols_[id]) out[r] = 1.0;
    } else if (is_surplus(id)) {
        out[-id - 1] = -1.0;
    } else {
        out[-id - 1 - rows_] = 1.0;
    }
}

void RmpSolver::cold_start() {
    basis_.resize(rows_);
    binv_.assign(static_cast<std::size_t>(rows_) * rows_, 0.0);
    xb_.assign(rows_, 1.0);
    for (int r = 0; r < rows_; ++r) {
        basis_[r] = artificial_id(r);
        binv_[static_cast<std::size_t>(r) * rows_ + r] = 1.0;
    }
    basis_valid_ = true;
}

bool RmpSolver::refactorize() {
    // Gauss-Jordan inversion of the basis matrix with partial pivoting.
    const int n = rows_;
    std::vector<double> mat(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> col;
    for (int c = 0; c < n; ++c) {
        column_of(basis_[c], col);
        for (int r = 0; r < n; ++r) mat[static_cast<std::size_t>(r) * n + c] = col[r];
    }
    std::vector<double> inv(static_cast<std::size_t>(n) * n, 0.0);
    for (int r = 0; r < n; ++r) inv[static_cast<std::size_t>(r) * n + r] = 1.0;

    for (int c = 0; c < n; ++c) {
        int piv = -1;
        double best = kPivotTol;
        for (int r = c; r < n; ++r) {
            const double v = std::fabs(mat[static_cast<std::size_t>(r) * n + c]);
            if (v > best) { best = v; piv = r; }
        }
        if (piv < 0) return false;
        if (piv != c) {
            for (int k = 0; k < n; ++k) {
                std::swap(mat[static_cast<std::size_t>(piv) * n + k],
                          mat[static_cast<std::size_t>(c) * n + k]);
                std::swap(inv[static_cast<std::size_t>(piv) * n + k],
                          inv[static_cast<std::size_t>(c) * n + k]);
            }
        }
        const double d = mat[static_cast<std::size_t>(c) * n + c];
        for (int k = 0; k < n; ++k) {
            mat[static_cast<std::size_t>(c) * n + k] /= d;
            inv[static_cast<std::size_t>(c) * n + k] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = mat[static_cast<std::size_t>(r) * n + c];
            if (f == 0.0) continue;
            for (int k = 0; k < n; ++k) {
                mat[static_cast<std::size_t>(r) * n + k] -=
                    f * mat[static_cast<std::size_t>(c) * n + k];
                inv[static_cast<std::size_t>(r) * n + k] -=
                    f * inv[static_cast<std::size_t>(c) * n + k];
            }
        }
    }
    binv_ = std::move(inv);
    for (int r = 0; r < n; ++r) {
        double v = 0.0;
        for (int k = 0; k < n; ++k) v += binv_[static_cast<std::size_t>(r) * n + k];
        xb_[r] = v;  // rhs is all ones
    }
    return true;
}

void RmpSolver::compute_duals(bool phase1, std::vector<double>& pi) const {
    pi.assign(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
        const double c = variable_cost(basis_[i], phase1);
        if (c == 0.0) continue;
        const double* row = &binv_[static_cast<std::size_t>(i) * rows_];
        for (int r = 0; r < rows_; ++r) pi[r] += c * row[r];
    }
}

RmpSolver::PriceOut RmpSolver::price(const std::vector<double>& pi, bool phase1,
                                     bool bland) const {
    std::vector<char> basic_col(cols_.size(), 0);
    std::vector<char> basic_surplus(rows_, 0);
    for (int id : basis_) {
        if (id >= 0) basic_col[id] = 1;
        else if (is_surplus(id)) basic_surplus[-id - 1] = 1;
    }
    PriceOut out;
    // Candidate order = variable_order: structural columns, then surplus.
    for (std::size_t j = 0; j < cols_.size(); ++j) {
        if (!active_[j] || basic_col[j]) continue;
        double rc = variable_cost(static_cast<int>(j), phase1);
        for (int r : cols_[j]) rc -= pi[r];
        if (rc < -kRcTol && (out.variable == -1 || rc < out.reduced_cost)) {
            out.variable = static_cast<int>(j);
            out.reduced_cost = rc;
            if (bland) return out;  // least index wins
        }
    }
    for (int r = 0; r < rows_; ++r) {
        if (basic_surplus[r]) continue;
        const double rc = pi[r];  // cost 0 minus pi' (-e_r)
        if (rc < -kRcTol && (out.variable == -1 || rc < out.reduced_cost)) {
            out.variable = surplus_id(r);
            out.reduced_cost = rc;
            if (bland) return out;
        }
    }
    return out;
}

bool RmpSolver::pivot(int enter, long long& iterations, bool bland, int& degenerate_streak) {
    ++iterations;
    std::vector<double> a;
    column_of(enter, a);
    std::vector<double> d(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
        const double* row = &binv_[static_cast<std::size_t>(i) * rows_];
        double v = 0.0;
        for (int r = 0; r < rows_; ++r) v += row[r] * a[r];
        d[i] = v;
    }

    // Ties: least variable order under Bland (anti-cycling needs the same
    // order as pricing), largest pivot element otherwise.
    int leave = -1;
    double theta = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rows_; ++i) {
        double ratio;
        if (d[i] > kPivotTol) {
            ratio = std::max(0.0, xb_[i]) / d[i];
        } else if (d[i] < -kPivotTol && is_artificial(basis_[i]) &&
                   std::fabs(xb_[i]) <= kFeasTol) {
            ratio = 0.0;  // keep zero-level artificials from turning positive
        } else {
            continue;
        }
        if (leave < 0 || ratio < theta - 1e-12) {
            theta = ratio;
            leave = i;
        } else if (ratio < theta + 1e-12) {
            const bool take = bland ? variable_order(basis_[i]) < variable_order(basis_[leave])
                                    : std::fabs(d[i]) > std::fabs(d[leave]);
            if (take) {
                theta = std::min(theta, ratio);
                leave = i;
            }
        }
    }
    if (leave < 0) return false;  // unbounded direction: numeric failure here

    degenerate_streak = theta <= kFeasTol ? degenerate_streak + 1 : 0;

    const double piv = d[leave];
    double* prow = &binv_[static_cast<std::size_t>(leave) * rows_];
    for (int r = 0; r < rows_; ++r) prow[r] /= piv;
    const double theta_val = xb_[leave] / piv;
    for (int i = 0; i < rows_; ++i) {
        if (i == leave || d[i] == 0.0) continue;
        double* row = &binv_[static_cast<std::size_t>(i) * rows_];
        for (int r = 0; r < rows_; ++r) row[r] -= d[i] * prow[r];
        xb_[i] -= d[i] * theta_val;
    }
    xb_[leave] = theta_val;
    basis_[leave] = enter;

    if (iterations % 100 == 0) return refactorize();
    return true;
}

bool RmpSolver::run_phase(bool phase1, long long& iterations) {
    std::vector<double> pi;
    int degenerate_streak = 0;
    while (true) {
        if (iterations >= iteration_limit_) return false;
        compute_duals(phase1, pi);
        const bool bland = degenerate_streak > kBlandAfter;
        const PriceOut po = price(pi, phase1, bland);
        if (po.variable == -1) return true;
        if (!pivot(po.variable, iterations, bland, degenerate_streak)) return false;
    }
}

bool RmpSolver::drive_out_artificials(long long& iterations) {
    std::vector<double> a, d;
    for (int i = 0; i < rows_; ++i) {
        if (!is_artificial(basis_[i])) continue;
        int enter = -1;
        // Any non-basic real variable with a nonzero element in this row.
        std::vector<char> basic_col(cols_.size(), 0);
        std::vector<char> basic_surplus(rows_, 0);
        for (int id : basis_) {
            if (id >= 0) basic_col[id] = 1;
            else if (is_surplus(id)) basic_surplus[-id - 1] = 1;
        }
        auto row_coeff = [&](int id) {
            column_of(id, a);
            const double* row = &binv_[static_cast<std::size_t>(i) * rows_];
            double v = 0.0;
            for (int r = 0; r < rows_; ++r) v += row[r] * a[r];
            return v;
        };
        for (std::size_t j = 0; j < cols_.size() && enter == -1; ++j)
            if (active_[j] && !basic_col[j] && std::fabs(row_coeff(static_cast<int>(j))) > 1e-7)
                enter = static_cast<int>(j);
        for (int r = 0; r < rows_ && enter == -1; ++r)
            if (!basic_surplus[r] && std::fabs(row_coeff(surplus_id(r))) > 1e-7)
                enter = surplus_id(r);
        if (enter == -1) continue;  // dependent row; the artificial stays pinned at zero

        // Degenerate swap at this row.
        column_of(enter, a);
        d.assign(rows_, 0.0);
        for (int k = 0; k < rows_; ++k) {
            const double* row = &binv_[static_cast<std::size_t>(k) * rows_];
            double v = 0.0;
            for (int r = 0; r < rows_; ++r) v += row[r] * a[r];
            d[k] = v;
        }
        const double piv = d[i];
        double* prow = &binv_[static_cast<std::size_t>(i) * rows_];
        for (int r = 0; r < rows_; ++r) prow[r] /= piv;
        const double theta_val = xb_[i] / piv;
        for (int k = 0; k < rows_; ++k) {
            if (k == i || d[k] == 0.0) continue;
            double* row = &binv_[static_cast<std::size_t>(k) * rows_];
            for (int r = 0; r < rows_; ++r) row[r] -= d[k] * prow[r];
            xb_[k] -= d[k] * theta_val;
        }
        xb_[i] = theta_val;
        basis_[i] = enter;
        ++iterations;
    }
    return true;
}

LpSolution RmpSolver::solve() {
    LpSolution sol;
    sol.primal.assign(cols_.size(), 0.0);
    sol.duals.assign(rows_, 0.0);
    if (rows_ == 0) return sol;

    long long iterations = 0;
    bool warm = basis_valid_;
    if (warm) {
        if (!refactorize()) warm = false;
        else
            for (int i = 0; i < rows_ && warm; ++i)
                if (xb_[i] < -1e-7) warm = false;
    }
    if (!warm) cold_start();

    bool need_phase1 = false;
    for (int id : basis_)
        if (is_artificial(id)) need_phase1 = true;

    if (need_phase1) {
        if (!run_phase(true, iterations)) {
            sol.status = LpStatus::IterationLimit;
            sol.iterations = iterations;
            basis_valid_ = false;
            return sol;
        }
        double infeas = 0.0;
        for (int i = 0; i < rows_; ++i)
            if (is_artificial(basis_[i])) infeas += std::max(0.0, xb_[i]);
        if (infeas > 1e-7) {
            sol.status = LpStatus::Infeasible;
            sol.iterations = iterations;
            basis_valid_ = false;
            return sol;
        }
        drive_out_artificials(iterations);
    }

    if (!run_phase(false, iterations)) {
        sol.status = LpStatus::IterationLimit;
        sol.iterations = iterations;
        basis_valid_ = false;
        return sol;
    }
    basis_valid_ = true;

    std::vector<double> pi;
    compute_duals(false, pi);
    sol.duals = pi;
    for (int i = 0; i < rows_; ++i) {
        if (basis_[i] >= 0) sol.primal[basis_[i]] = std::max(0.0, xb_[i]);
    }
    double obj = 0.0;
    for (std::size_t j = 0; j < cols_.size(); ++j) obj += costs_[j] * sol.primal[j];
    sol.objective = obj;
    sol.status = LpStatus::Optimal;
    sol.iterations = iterations;
    return sol;
}

LpSolution solve_lp(const LinearProgram& lp, long long iteration_limit) {
    RmpSolver solver(lp.rows);
    for (std::size_t j = 0; j < lp.columns.size(); ++j)
        solver.add_column(lp.columns[j], lp.costs.empty() ? 1.0 : lp.costs[j]);
    solver.set_iteration_limit(iteration_limit);
    return solver.solve();
}

}  // namespace tbpp
