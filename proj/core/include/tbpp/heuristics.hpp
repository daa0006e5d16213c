#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tbpp/bounds.hpp"
#include "tbpp/instance.hpp"
#include "tbpp/subsolvers.hpp"
#include "tbpp/time_steps.hpp"

namespace tbpp {

struct Solution {
    CompactAssignment assignment;
    int value = 0;
    std::string source;
};

enum class ItemOrder { Natural, ByWeightNonDecreasing };

/// First fit over time steps: each item goes into the lowest-index bin with
/// room at every step of its window, else a new bin. `fit_weights`, when
/// given, replaces the weights used in the fit tests (the assignment stays
/// valid for the original weights whenever fit_weights dominate them).
Solution first_fit(const Instance& inst, const TimeStepStructure& steps, ItemOrder order,
                   const std::vector<int>* fit_weights = nullptr);

/// Best of the four first-fit variants: two item orders, original and
/// Lift-1 lifted weights.
Solution greedy_best(const Instance& inst, const TimeStepStructure& steps);

struct RollingConfig {
    int window = 30;  // steps per iteration
    SearchBudget window_budget{2'000'000, std::nullopt};
};

/// Rolling horizon: exact sub-solves over consecutive step windows with the
/// earlier packing fixed. Empty when some window admits no completion
/// within its budget.
std::optional<Solution> rolling_horizon(const Instance& inst, const TimeStepStructure& steps,
                                        const RollingConfig& config = {});

}  // namespace tbpp
