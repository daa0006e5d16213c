#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tbpp/instance.hpp"
#include "tbpp/subsolvers.hpp"
#include "tbpp/time_steps.hpp"

namespace tbpp {

struct BoundReport {
    std::string name;
    int value = 0;
    std::optional<int> witness_step;  // the step the bound was attained at
    bool proven = true;               // false when a budget cut the proof short
    double elapsed_ms = 0.0;
};

/// max_t sum of active weights / W: the LP relaxation value of the compact
/// model.
double lp_c_value(const Instance& inst, const TimeStepStructure& steps);

/// ceil(lp_c_value), with the first maximizing step as witness. Computed by
/// a start/end sweep in O(n log n).
BoundReport lb1(const Instance& inst, const TimeStepStructure& steps);

/// Exact bin packing on one step (default: the lb1 witness).
BoundReport lb0_single(const Instance& inst, const TimeStepStructure& steps, int step = -1,
                       const SearchBudget& budget = {});

/// max over all steps of the exact bin packing optimum. With an exhausted
/// budget the value falls back to proven per-step lower bounds and the
/// report is flagged unproven.
BoundReport lb0(const Instance& inst, const TimeStepStructure& steps,
                const SearchBudget& budget = {});

enum class LiftMethod { Lift1, Lift2 };

/// Item weights raised by subset-sum residual-capacity certificates; the
/// packing optimum is unchanged.
struct LiftedInstance {
    Instance base;
    std::vector<int> lifted_weights;

    /// The base instance with the lifted weights substituted.
    Instance apply() const;
};

/// One pass per iteration, items in index order, already-lifted weights
/// used within the pass. Lift1 certifies against all overlapping items at
/// once; Lift2 per step, keeping the best step.
LiftedInstance lift(const Instance& inst, const TimeStepStructure& steps, LiftMethod method,
                    int iterations = 1);

/// lb1 on the lifted instance (single lifting iteration).
BoundReport lb2(const Instance& inst, const TimeStepStructure& steps,
                LiftMethod method = LiftMethod::Lift1);

}  // namespace tbpp
