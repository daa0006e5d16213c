#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "tbpp/bounds.hpp"
#include "tbpp/instance.hpp"
#include "tbpp/simplex.hpp"
#include "tbpp/subsolvers.hpp"
#include "tbpp/time_steps.hpp"

namespace tbpp {

/// A feasible packing pattern: sorted item indices whose combined weight
/// fits the capacity at every step.
using Pattern = std::vector<int>;

bool pattern_feasible(const Instance& inst, const TimeStepStructure& steps, const Pattern& p);

/// Accumulated branching constraints. same_pairs merge items into
/// super-items for pricing, diff_pairs become conflicts, fixed_patterns are
/// bins fixed into the solution (their items leave the master), and
/// forbidden_patterns carry no-good cuts from right diving branches.
struct BranchState {
    std::vector<std::pair<int, int>> same_pairs;
    std::vector<std::pair<int, int>> diff_pairs;
    std::vector<Pattern> forbidden_patterns;
    std::vector<Pattern> fixed_patterns;

    BranchState with_same(int r, int s) const;
    BranchState with_diff(int r, int s) const;
    BranchState with_fixed(Pattern p) const;
    BranchState with_forbidden(Pattern p) const;
};

/// The pricing instance: merged item groups with step-dependent weights,
/// per-group profits, conflicts between groups, and no-good patterns.
struct PricingProblem {
    int capacity = 0;
    int num_steps = 0;
    std::vector<std::vector<int>> groups;  // sorted original item indices
    std::vector<double> profits;
    std::vector<std::vector<std::pair<int, int>>> step_weights;  // per group: (step, weight)
    std::vector<std::pair<int, int>> conflicts;                  // group index pairs
    std::vector<Pattern> forbidden;  // patterns over unfixed items
    bool consistent = true;          // false: contradictory branch, node infeasible
};

/// Groups/conflicts are derived from the branch by transitive closure of
/// same_pairs; items covered by fixed patterns are dropped. item_profits
/// may be empty (all zero) or size n; negatives are clamped to zero.
PricingProblem build_pricing(const Instance& inst, const TimeStepStructure& steps,
                             const BranchState& branch,
                             std::span<const double> item_profits);

struct PriceResult {
    Pattern pattern;      // a maximizer (original item indices)
    double value = 0.0;   // z_s
    bool proven = true;   // false when the node budget cut the search
    long long nodes = 0;
};

/// Exact temporal-knapsack pricing by branch-and-bound over groups in
/// non-increasing profit order. The node bound is the minimum over steps of
/// the undecided inactive profit plus a fractional knapsack on the step's
/// residual capacity.
PriceResult price(const PricingProblem& pp, const SearchBudget& budget = {});

/// Deduplicating pattern store shared across branch-and-price nodes.
class ColumnPool {
  public:
    int add(Pattern p);  // returns the id (existing one for duplicates)
    const Pattern& operator[](int id) const { return patterns_[id]; }
    int size() const { return static_cast<int>(patterns_.size()); }

  private:
    std::vector<Pattern> patterns_;
    std::map<Pattern, int> index_;
};

struct CgBudgets {
    SearchBudget pricing{2'000'000, std::nullopt};
    int max_columns = 20000;  // per master solve
    long long lp_iteration_limit = 200000;
};

/// One positive master variable: the pool pattern, its support restricted
/// to unfixed items (what the column actually covers at this node), and the
/// LP value.
struct XiEntry {
    int pool_id = -1;
    Pattern items;
    double value = 0.0;
};

struct MasterResult {
    Status status = Status::Optimal;  // Budget: value is primal-only, not a bound
    double lp_value = 0.0;            // includes one unit per fixed pattern
    std::vector<double> duals;        // per item, zero on fixed items
    std::vector<XiEntry> xi;
    long long pricing_nodes = 0;
    int columns_added = 0;
    long long lp_iterations = 0;
};

/// Column generation for the node LP: filters the pool through the branch
/// constraints, guarantees coverage with group columns, then alternates LP
/// solves and pricing until no column prices out.
MasterResult solve_master(const Instance& inst, const TimeStepStructure& steps,
                          const BranchState& branch, ColumnPool& pool,
                          const CgBudgets& budgets = {});

/// Greedy-solution bins and per-item singletons, the standard pool seed.
void seed_columns(const Instance& inst, const TimeStepStructure& steps, ColumnPool& pool);

/// ceil of the root LP value, columns seeded from greedy_best. An
/// exhausted budget yields an unproven report carrying the primal value.
BoundReport lb3(const Instance& inst, const TimeStepStructure& steps,
                ColumnPool* pool = nullptr, const CgBudgets& budgets = {});

}  // namespace tbpp
