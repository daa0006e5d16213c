#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tbpp/instance.hpp"
#include "tbpp/time_steps.hpp"

namespace tbpp {

enum class Status { Optimal, Feasible, Infeasible, Budget };

const char* to_string(Status s);

/// Deterministic stand-in for wall-clock limits: tree searches count nodes
/// against max_nodes (negative = unlimited). best_known, when set, seeds the
/// incumbent value.
struct SearchBudget {
    long long max_nodes = -1;
    std::optional<int> best_known;

    bool unlimited() const { return max_nodes < 0; }
};

/// Maximum subset sum not exceeding cap, exact via bitset dynamic
/// programming over reachable sums.
int subset_sum_max(std::span<const int> weights, int cap);

struct BppResult {
    int lower = 0;   // proven lower bound on the optimum
    int upper = 0;   // best packing found
    bool proven = false;  // lower == upper == optimum
    long long nodes = 0;
};

/// Exact one-dimensional bin packing minimum by branch-and-bound.
BppResult bpp_min_bins(std::vector<int> weights, int capacity, const SearchBudget& budget = {});

/// LP-relaxation value of the 0-1 knapsack: greedy fill by profit/weight
/// with the last item split.
double fractional_knapsack_bound(std::span<const double> profits, std::span<const int> weights,
                                 int cap);

/// An item-to-bin map with per-step capacity feasibility. Bins are numbered
/// 0..bins_used-1; bin_of is -1 for unassigned items. Items flagged fixed
/// keep their bin during compact_solve.
struct CompactAssignment {
    std::vector<int> bin_of;
    std::vector<char> fixed;
    int bins_used = 0;
};

struct CompactResult {
    CompactAssignment assignment;
    int value = 0;        // bins_used of the returned assignment
    int lower_bound = 0;  // proven lower bound (== value when Optimal)
    Status status = Status::Optimal;
    long long nodes = 0;
};

/// Exact solver for the polynomial-size model: depth-first branch-and-bound
/// assigning unfixed items in start order to an open bin or one new bin.
/// Capacity is enforced at every step of `steps`; item times are not
/// consulted, so callers may pass restricted step structures.
CompactResult compact_solve(const Instance& inst, const TimeStepStructure& steps,
                            CompactAssignment initial = {}, const SearchBudget& budget = {});

/// Per-step load replay of an assignment; true iff every item has a bin and
/// no step/bin exceeds capacity.
bool assignment_feasible(const Instance& inst, const TimeStepStructure& steps,
                         const CompactAssignment& assignment);

}  // namespace tbpp
