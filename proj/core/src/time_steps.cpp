#include "tbpp/time_steps.hpp"

#include <algorithm>
#include <queue>

namespace tbpp {

TimeStepStructure reduce_time_steps(const Instance& inst) {
    const int n = inst.size();
    TimeStepStructure out;
    out.first_step.assign(n, -1);
    out.last_step.assign(n, -1);
    if (n == 0) return out;

    // Min-heap of (end, item) for the currently active items.
    using Entry = std::pair<long long, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> active;

    int j = 0;
    while (j < n) {
        const long long s = inst.items[j].start;
        while (j < n && inst.items[j].start == s) {
            active.emplace(inst.items[j].end, j);
            ++j;
        }
        while (!active.empty() && active.top().first <= s) active.pop();

        // Dominated iff every active item survives past the next start time.
        if (j < n) {
            const long long next_start = inst.items[j].start;
            if (!active.empty() && active.top().first > next_start) continue;
        }

        std::vector<int> members;
        members.reserve(active.size());
        auto copy = active;
        while (!copy.empty()) {
            members.push_back(copy.top().second);
            copy.pop();
        }
        std::sort(members.begin(), members.end());
        out.steps.push_back(std::move(members));
        out.instants.push_back(s);
    }

    for (int t = 0; t < out.step_count(); ++t) {
        for (int item : out.steps[t]) {
            if (out.first_step[item] < 0) out.first_step[item] = t;
            out.last_step[item] = t;
        }
    }
    return out;
}

std::vector<std::vector<int>> vpp_weights(const Instance& inst, const TimeStepStructure& steps) {
    const int n = inst.size();
    const int T = steps.step_count();
    std::vector<std::vector<int>> w(n, std::vector<int>(T, 0));
    for (int t = 0; t < T; ++t)
        for (int j : steps.steps[t]) w[j][t] = inst.items[j].weight;
    return w;
}

}  // namespace tbpp
