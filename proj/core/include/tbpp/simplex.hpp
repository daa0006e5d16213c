#pragma once

#include <vector>

namespace tbpp {

/// A covering LP in the shape of the restricted master problem:
///   min c' xi   s.t.   sum_{P : j in P} xi_P >= 1 (j = 1..rows),  xi >= 0.
/// Columns are 0/1 and given as sparse row-index supports.
struct LinearProgram {
    int rows = 0;
    std::vector<std::vector<int>> columns;
    std::vector<double> costs;  // empty means all-ones
};

enum class LpStatus { Optimal, Infeasible, IterationLimit };

struct LpSolution {
    std::vector<double> primal;  // per column
    std::vector<double> duals;   // per row, >= 0 at optimality
    double objective = 0.0;
    LpStatus status = LpStatus::Optimal;
    long long iterations = 0;
};

/// Revised primal simplex on the covering LP: two phases from an artificial
/// basis, Dantzig pricing with a least-index fallback on degeneracy
/// streaks, dense basis inverse with periodic refactorization. Tolerances:
/// 1e-9 feasibility, 1e-6 reduced cost.
class RmpSolver {
  public:
    explicit RmpSolver(int rows);

    int add_column(std::vector<int> support, double cost = 1.0);
    int column_count() const { return static_cast<int>(cols_.size()); }

    /// Deactivated columns are kept but priced out; deactivating a basic
    /// column invalidates the warm start.
    void set_active(int col, bool active);

    /// Re-solves from the previous basis when it is still valid, so column
    /// generation pays one basis change per added column.
    LpSolution solve();

    void set_iteration_limit(long long limit) { iteration_limit_ = limit; }

  private:
    struct PriceOut { int variable = -1; double reduced_cost = 0.0; };

    int rows_;
    std::vector<std::vector<int>> cols_;
    std::vector<double> costs_;
    std::vector<char> active_;

    std::vector<int> basis_;       // variable ids, see encode()/decode()
    std::vector<double> binv_;     // rows x rows, row-major
    std::vector<double> xb_;
    bool basis_valid_ = false;
    long long iteration_limit_ = 200000;

    // Variable ids: col index for structural, -(r+1) for the r-th surplus,
    // -(rows+r+1) for the r-th artificial.
    int surplus_id(int r) const { return -(r + 1); }
    int artificial_id(int r) const { return -(rows_ + r + 1); }
    bool is_surplus(int id) const { return id < 0 && -id - 1 < rows_; }
    bool is_artificial(int id) const { return id < 0 && -id - 1 >= rows_; }

    // Total order used by the least-index anti-cycling rule; must match the
    // scan order of price(): structural, then surplus, then artificials.
    long long variable_order(int id) const {
        if (id >= 0) return id;
        return static_cast<long long>(cols_.size()) + (-id - 1);
    }

    double variable_cost(int id, bool phase1) const;
    void column_of(int id, std::vector<double>& out) const;
    void cold_start();
    bool refactorize();
    void compute_duals(bool phase1, std::vector<double>& pi) const;
    PriceOut price(const std::vector<double>& pi, bool phase1, bool bland) const;
    bool pivot(int enter, long long& iterations, bool bland, int& degenerate_streak);
    bool run_phase(bool phase1, long long& iterations);
    bool drive_out_artificials(long long& iterations);
};

/// One-shot convenience wrapper around RmpSolver.
LpSolution solve_lp(const LinearProgram& lp, long long iteration_limit = 200000);

}  // namespace tbpp
