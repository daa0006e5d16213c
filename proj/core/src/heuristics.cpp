#include "tbpp/heuristics.hpp"

#include <algorithm>
#include <numeric>

namespace tbpp {

Solution first_fit(const Instance& inst, const TimeStepStructure& steps, ItemOrder order,
                   const std::vector<int>* fit_weights) {
    const int n = inst.size();
    const int T = steps.step_count();

    std::vector<int> weights(n);
    for (int j = 0; j < n; ++j) weights[j] = fit_weights ? (*fit_weights)[j]
                                                         : inst.items[j].weight;

    std::vector<int> sequence(n);
    std::iota(sequence.begin(), sequence.end(), 0);
    if (order == ItemOrder::ByWeightNonDecreasing)
        std::stable_sort(sequence.begin(), sequence.end(),
                         [&](int a, int b) { return weights[a] < weights[b]; });

    Solution sol;
    sol.assignment.bin_of.assign(n, -1);
    sol.assignment.fixed.assign(n, 0);
    std::vector<std::vector<int>> loads;
    for (int j : sequence) {
        const int w = weights[j];
        int chosen = -1;
        for (std::size_t b = 0; b < loads.size() && chosen < 0; ++b) {
            bool ok = true;
            for (int t = steps.first_step[j]; t <= steps.last_step[j]; ++t)
                if (loads[b][t] + w > inst.capacity) { ok = false; break; }
            if (ok) chosen = static_cast<int>(b);
        }
        if (chosen < 0) {
            loads.emplace_back(T, 0);
            chosen = static_cast<int>(loads.size()) - 1;
        }
        for (int t = steps.first_step[j]; t <= steps.last_step[j]; ++t) loads[chosen][t] += w;
        sol.assignment.bin_of[j] = chosen;
    }
    sol.assignment.bins_used = static_cast<int>(loads.size());
    sol.value = sol.assignment.bins_used;
    sol.source = order == ItemOrder::Natural ? "first-fit-1" : "first-fit-2";
    if (fit_weights) sol.source += "-lifted";
    return sol;
}

Solution greedy_best(const Instance& inst, const TimeStepStructure& steps) {
    const std::vector<int> lifted = lift(inst, steps, LiftMethod::Lift1, 1).lifted_weights;
    Solution best = first_fit(inst, steps, ItemOrder::Natural);
    for (const Solution& cand : {first_fit(inst, steps, ItemOrder::ByWeightNonDecreasing),
                                 first_fit(inst, steps, ItemOrder::Natural, &lifted),
                                 first_fit(inst, steps, ItemOrder::ByWeightNonDecreasing,
                                           &lifted)}) {
        if (cand.value < best.value) best = cand;
    }
    best.source = "greedy(" + best.source + ")";
    return best;
}

std::optional<Solution> rolling_horizon(const Instance& inst, const TimeStepStructure& steps,
                                        const RollingConfig& config) {
    const int n = inst.size();
    const int T = steps.step_count();
    if (config.window < 1) throw std::invalid_argument("window width must be >= 1");

    Solution sol;
    sol.assignment.bin_of.assign(n, -1);
    sol.assignment.fixed.assign(n, 0);
    sol.source = "rolling";
    if (n == 0) return sol;

    int bins_used = 0;
    for (int lo = 0; lo < T; lo += config.window) {
        const int hi = std::min(lo + config.window, T);  // window steps [lo, hi)

        // Participating items and the restricted step structure.
        std::vector<int> local_items;
        for (int j = 0; j < n; ++j)
            if (steps.first_step[j] < hi && steps.last_step[j] >= lo) local_items.push_back(j);
        if (local_items.empty()) continue;

        Instance sub;
        sub.capacity = inst.capacity;
        TimeStepStructure sub_steps;
        std::vector<int> local_of(n, -1);
        for (std::size_t l = 0; l < local_items.size(); ++l) {
            const int j = local_items[l];
            local_of[j] = static_cast<int>(l);
            sub.items.push_back(inst.items[j]);
        }
        sub_steps.first_step.assign(local_items.size(), -1);
        sub_steps.last_step.assign(local_items.size(), -1);
        for (int t = lo; t < hi; ++t) {
            std::vector<int> members;
            for (int j : steps.steps[t])
                if (local_of[j] >= 0) members.push_back(local_of[j]);
            const int local_t = static_cast<int>(sub_steps.steps.size());
            for (int l : members) {
                if (sub_steps.first_step[l] < 0) sub_steps.first_step[l] = local_t;
                sub_steps.last_step[l] = local_t;
            }
            sub_steps.steps.push_back(std::move(members));
            sub_steps.instants.push_back(steps.instants[t]);
        }

        CompactAssignment initial;
        initial.bin_of.assign(local_items.size(), -1);
        initial.fixed.assign(local_items.size(), 0);
        initial.bins_used = bins_used;
        for (std::size_t l = 0; l < local_items.size(); ++l) {
            const int j = local_items[l];
            if (sol.assignment.bin_of[j] >= 0) {
                initial.bin_of[l] = sol.assignment.bin_of[j];
                initial.fixed[l] = 1;
            }
        }

        const CompactResult sub_res =
            compact_solve(sub, sub_steps, std::move(initial), config.window_budget);
        if (sub_res.status == Status::Infeasible || sub_res.assignment.bin_of.empty())
            return std::nullopt;

        for (std::size_t l = 0; l < local_items.size(); ++l)
            sol.assignment.bin_of[local_items[l]] = sub_res.assignment.bin_of[l];
        bins_used = sub_res.assignment.bins_used;
    }

    sol.assignment.bins_used = bins_used;
    sol.value = bins_used;
    return sol;
}

}  // namespace tbpp
