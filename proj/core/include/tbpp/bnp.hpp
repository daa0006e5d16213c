#pragma once

#include <optional>
#include <tuple>

#include "tbpp/colgen.hpp"
#include "tbpp/heuristics.hpp"

namespace tbpp {

struct DiveConfig {
    int tokens = 1;
    SearchBudget tree_budget{10'000, std::nullopt};  // dive nodes (master solves)
};

struct SolveConfig {
    SearchBudget bpp_budget{2'000'000, std::nullopt};  // per-step packing solves in LB0
    RollingConfig rolling{30, {0, std::nullopt}};      // window_budget 0: pick by |T|
    CgBudgets cg;
    DiveConfig dive;
    SearchBudget tree_budget{20'000, std::nullopt};    // branch-and-price nodes
    SearchBudget compact_budget{50'000'000, std::nullopt};  // stand-alone compact solves
    int lift_iterations = 1;
    bool use_rolling = true;
    bool use_dive = true;
};

/// Node budget standing in for the published 10 s / 30 s wall-clock limits.
SearchBudget rolling_window_budget(int step_count);

struct PhaseTimings {
    double bounds_ms = 0.0;
    double heuristics_ms = 0.0;
    double root_ms = 0.0;
    double dive_ms = 0.0;
    double tree_ms = 0.0;
};

struct SolveReport {
    Status status = Status::Optimal;
    int best_value = 0;
    std::optional<Solution> best;
    int lower_bound = 0;
    long long nodes_explored = 0;
    long long columns_generated = 0;
    double root_lp_value = -1.0;  // negative: the root LP was never solved
    PhaseTimings timings;
    int closed_phase = 0;  // which phase proved optimality, 0 when none did

    std::optional<int> lb0_value, lb1_value, lb2_value, lb3_value;
    std::optional<int> greedy_value, rolling_value, dive_value;
};

/// First item pair (lexicographic) whose co-occurrence mass over the
/// fractional solution is fractional; nullopt when the solution is
/// integral by pairs. Returns (r, s, gamma).
std::optional<std::tuple<int, int, double>> select_branch_pair(
    const std::vector<XiEntry>& xi);

/// Exact pair-branching search, best first on node lower bounds (deeper
/// node first on ties, same-branch child before different-branch child).
SolveReport branch_and_price(const Instance& inst, const TimeStepStructure& steps,
                             const SolveConfig& config = {},
                             const Solution* incumbent = nullptr,
                             ColumnPool* shared_pool = nullptr);

/// Token-rationed depth-first dive on pattern variables: left children fix
/// the most-fractional-toward-1 pattern, right children forbid it and
/// consume a token (returned on backtrack).
std::optional<Solution> dive(const Instance& inst, const TimeStepStructure& steps,
                             const DiveConfig& config, ColumnPool& pool,
                             const BranchState& root = {}, const CgBudgets& budgets = {},
                             int prune_at = -1);

/// The staged overall algorithm: bounds + greedy/rolling, root relaxation,
/// one-token dive, then the exact pair-branching search.
SolveReport solve(const Instance& inst, const SolveConfig& config = {});

}  // namespace tbpp
