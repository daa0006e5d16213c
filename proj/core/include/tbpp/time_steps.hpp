#pragma once

#include <vector>

#include "tbpp/instance.hpp"

namespace tbpp {

/// The renumbered non-dominated active-item sets S_1..S_|T| of an instance.
/// Capacity only has to be checked at these steps. Because time windows are
/// intervals, the steps containing a given item form a contiguous range,
/// stored as [first_step, last_step] per item.
struct TimeStepStructure {
    std::vector<std::vector<int>> steps;  // sorted item indices per step, chronological
    std::vector<long long> instants;      // the time instant each step stands for
    std::vector<int> first_step;          // per item
    std::vector<int> last_step;           // per item

    int step_count() const { return static_cast<int>(steps.size()); }

    bool active(int item, int step) const {
        return first_step[item] <= step && step <= last_step[item];
    }
};

/// Builds the non-dominated steps. An active set at some start time is
/// dominated iff it is contained in the active set at the next start time,
/// so a single forward sweep suffices.
TimeStepStructure reduce_time_steps(const Instance& inst);

/// The vector-packing view: w[j][t] = weight_j if item j is active at step
/// t, else 0.
std::vector<std::vector<int>> vpp_weights(const Instance& inst, const TimeStepStructure& steps);

}  // namespace tbpp
