#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tbpp/instance.hpp"

namespace tbpp {

/// Parameters of the random instance generator. Raw active sets
/// S_1..S_{raw_step_count} are built step by step: each set has a uniform
/// size in [a_min, a_max]; a uniform percentage in [b_min, b_max] of the
/// previous set is carried over, the remainder is filled with fresh items.
struct GeneratorParams {
    int a_min = 10;
    int a_max = 10;
    int b_min = 90;
    int b_max = 95;
    int raw_step_count = 1;
    int weight_min = 10;
    int weight_max = 100;
    int capacity = 100;
    std::uint64_t seed = 0;
};

/// The untruncated generator output: one weight per item and the raw active
/// sets. Item j is active in the contiguous raw set range
/// [first_set[j], last_set[j]] (0-based).
struct RawSchedule {
    std::vector<int> weights;
    std::vector<std::vector<int>> active_sets;
    std::vector<int> first_set;
    std::vector<int> last_set;
};

RawSchedule generate_raw_schedule(const GeneratorParams& params);

/// Keeps the items appearing in the first `target_steps` raw sets, with
/// their full time windows (start = first raw set index, end = one past the
/// last). Throws std::invalid_argument when target_steps is out of range.
Instance truncate_schedule(const RawSchedule& schedule, const GeneratorParams& params,
                           int target_steps, std::string name = "");

Instance generate_instance(const GeneratorParams& params, int target_steps,
                           std::string name = "");

/// Benchmark classes I..X (1..10) with the published size/carry-over ranges.
GeneratorParams class_params(int cls);

/// Raw horizon of the i-th instance (i >= 1) of a class: classes I-IV use
/// 2688 + 128 (i-1) raw sets, classes V-X use 768 + 128 (i-1).
int class_raw_horizon(int cls, int index);

const char* class_name(int cls);        // "I".."X"
int class_from_name(const std::string&);  // throws on unknown name

}  // namespace tbpp
