#include "tbpp/subsolvers.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tbpp {

const char* to_string(Status s) {
    switch (s) {
        case Status::Optimal: return "optimal";
        case Status::Feasible: return "feasible";
        case Status::Infeasible: return "infeasible";
        case Status::Budget: return "budget";
    }
    return "?";
}

int subset_sum_max(std::span<const int> weights, int cap) {
    if (cap <= 0) return 0;
    const int words = cap / 64 + 1;
    std::vector<std::uint64_t> reach(words, 0);
    reach[0] = 1;
    for (int w : weights) {
        if (w <= 0 || w > cap) continue;
        const int word_shift = w / 64;
        const int bit_shift = w % 64;
        for (int i = words - 1; i >= word_shift; --i) {
            std::uint64_t v = reach[i - word_shift] << bit_shift;
            if (bit_shift && i - word_shift - 1 >= 0)
                v |= reach[i - word_shift - 1] >> (64 - bit_shift);
            reach[i] |= v;
        }
    }
    for (int s = cap; s > 0; --s)
        if (reach[s / 64] >> (s % 64) & 1) return s;
    return 0;
}

double fractional_knapsack_bound(std::span<const double> profits, std::span<const int> weights,
                                 int cap) {
    if (cap <= 0 || profits.empty()) return 0.0;
    std::vector<int> order(profits.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return profits[a] * weights[b] > profits[b] * weights[a];
    });
    double value = 0.0;
    int rem = cap;
    for (int i : order) {
        if (profits[i] <= 0.0) break;
        if (weights[i] <= rem) {
            value += profits[i];
            rem -= weights[i];
        } else {
            value += profits[i] * rem / weights[i];
            break;
        }
    }
    return value;
}

namespace {

struct BppSearch {
    int capacity;
    std::vector<int> weights;  // non-increasing
    std::vector<int> loads;
    int best;
    std::vector<int> lb_suffix;  // ceil(suffix sum / W)
    long long nodes = 0;
    long long max_nodes;
    bool aborted = false;

    void run(std::size_t i, int bins) {
        if (i == weights.size()) {
            best = std::min(best, bins);
            return;
        }
        if (max_nodes >= 0 && nodes >= max_nodes) {
            aborted = true;
            return;
        }
        ++nodes;
        // Completion bound: open-bin free space can absorb part of the rest.
        long long free_space = 0;
        for (int b = 0; b < bins; ++b) free_space += capacity - loads[b];
        long long rest = 0;
        for (std::size_t k = i; k < weights.size(); ++k) rest += weights[k];
        const long long overflow = rest - free_space;
        int bound = bins;
        if (overflow > 0) bound += static_cast<int>((overflow + capacity - 1) / capacity);
        if (bound >= best) return;

        const int w = weights[i];
        for (int b = 0; b < bins && !aborted; ++b) {
            if (loads[b] + w > capacity) continue;
            bool seen = false;  // bins with equal load are interchangeable
            for (int b2 = 0; b2 < b; ++b2)
                if (loads[b2] == loads[b]) { seen = true; break; }
            if (seen) continue;
            loads[b] += w;
            run(i + 1, bins);
            loads[b] -= w;
            if (best <= lb_suffix[0]) return;
        }
        if (!aborted && bins + 1 < best) {
            loads[bins] = w;
            run(i + 1, bins + 1);
            loads[bins] = 0;
        }
    }
};

int first_fit_bins(const std::vector<int>& weights, int capacity) {
    std::vector<int> loads;
    for (int w : weights) {
        bool placed = false;
        for (int& l : loads)
            if (l + w <= capacity) { l += w; placed = true; break; }
        if (!placed) loads.push_back(w);
    }
    return static_cast<int>(loads.size());
}

}  // namespace

BppResult bpp_min_bins(std::vector<int> weights, int capacity, const SearchBudget& budget) {
    BppResult res;
    if (weights.empty()) {
        res.proven = true;
        return res;
    }
    for (int w : weights)
        if (w > capacity) throw std::invalid_argument("item weight exceeds capacity");

    std::sort(weights.begin(), weights.end(), std::greater<>());
    const long long total = std::accumulate(weights.begin(), weights.end(), 0LL);
    const int lb = static_cast<int>((total + capacity - 1) / capacity);
    const int ffd = first_fit_bins(weights, capacity);

    BppSearch search;
    search.capacity = capacity;
    search.weights = weights;
    search.loads.assign(weights.size(), 0);
    search.best = ffd;
    if (budget.best_known) search.best = std::min(search.best, *budget.best_known);
    search.lb_suffix.assign(1, lb);
    search.max_nodes = budget.max_nodes;
    if (search.best > lb) search.run(0, 0);

    res.upper = search.best;
    res.lower = search.aborted ? lb : search.best;
    res.proven = !search.aborted;
    res.nodes = search.nodes;
    return res;
}

namespace {

struct CompactSearch {
    const Instance* inst;
    const TimeStepStructure* steps;
    int T;
    std::vector<int> order;               // unfixed items, start order
    std::vector<std::vector<int>> loads;  // per open bin, per step
    std::vector<long long> placed;        // assigned weight per step
    std::vector<std::vector<long long>> rest;  // rest[i][t]: unplaced weight at t from order[i..]
    std::vector<int> bin_of;
    int bins_used;
    int global_lb;
    int best_value;
    std::vector<int> best_bin_of;
    int best_bins = 0;
    long long nodes = 0;
    long long max_nodes;
    bool aborted = false;

    bool fits(int item, int bin) const {
        const int w = inst->items[item].weight;
        for (int t = steps->first_step[item]; t <= steps->last_step[item]; ++t)
            if (loads[bin][t] + w > inst->capacity) return false;
        return true;
    }

    void place(int item, int bin) {
        const int w = inst->items[item].weight;
        for (int t = steps->first_step[item]; t <= steps->last_step[item]; ++t) {
            loads[bin][t] += w;
            placed[t] += w;
        }
        bin_of[item] = bin;
    }

    void remove(int item, int bin) {
        const int w = inst->items[item].weight;
        for (int t = steps->first_step[item]; t <= steps->last_step[item]; ++t) {
            loads[bin][t] -= w;
            placed[t] -= w;
        }
        bin_of[item] = -1;
    }

    // Bins with identical loads on every step the remaining items can touch
    // are interchangeable; remaining items start no earlier than item.
    bool duplicate_bin(int bin, int from_step, const std::vector<int>& tried) const {
        for (int b : tried) {
            bool equal = true;
            for (int t = from_step; t < T; ++t)
                if (loads[b][t] != loads[bin][t]) { equal = false; break; }
            if (equal) return true;
        }
        return false;
    }

    int node_bound(std::size_t i) const {
        const long long cap = inst->capacity;
        long long worst = bins_used;
        // Remaining items are active from order[i]'s first step onward.
        for (int t = steps->first_step[order[i]]; t < T; ++t) {
            const long long overflow = rest[i][t] - (bins_used * cap - placed[t]);
            if (overflow > 0) {
                const long long need = bins_used + (overflow + cap - 1) / cap;
                worst = std::max(worst, need);
            }
        }
        return static_cast<int>(worst);
    }

    void run(std::size_t i) {
        if (best_value <= global_lb) return;
        if (i == order.size()) {
            if (bins_used < best_value) {
                best_value = bins_used;
                best_bin_of = bin_of;
                best_bins = bins_used;
            }
            return;
        }
        if (max_nodes >= 0 && nodes >= max_nodes) {
            aborted = true;
            return;
        }
        ++nodes;
        if (node_bound(i) >= best_value) return;

        const int item = order[i];
        std::vector<int> tried;
        for (int b = 0; b < bins_used && !aborted; ++b) {
            if (!fits(item, b)) continue;
            if (duplicate_bin(b, steps->first_step[item], tried)) continue;
            tried.push_back(b);
            place(item, b);
            run(i + 1);
            remove(item, b);
            if (best_value <= global_lb) return;
        }
        if (!aborted && bins_used + 1 < best_value) {
            if (static_cast<int>(loads.size()) == bins_used)
                loads.emplace_back(T, 0);
            ++bins_used;
            place(item, bins_used - 1);
            run(i + 1);
            remove(item, bins_used - 1);
            --bins_used;
        }
    }

    // First-fit completion of the current partial assignment; always
    // succeeds and seeds the incumbent.
    void seed_incumbent() {
        std::vector<std::vector<int>> ff_loads = loads;
        std::vector<int> ff_bins = bin_of;
        int used = bins_used;
        for (int item : order) {
            const int w = inst->items[item].weight;
            int chosen = -1;
            for (int b = 0; b < used && chosen < 0; ++b) {
                bool ok = true;
                for (int t = steps->first_step[item]; t <= steps->last_step[item]; ++t)
                    if (ff_loads[b][t] + w > inst->capacity) { ok = false; break; }
                if (ok) chosen = b;
            }
            if (chosen < 0) {
                if (static_cast<int>(ff_loads.size()) == used) ff_loads.emplace_back(T, 0);
                chosen = used++;
            }
            for (int t = steps->first_step[item]; t <= steps->last_step[item]; ++t)
                ff_loads[chosen][t] += w;
            ff_bins[item] = chosen;
        }
        best_value = std::min(best_value, used);
        best_bin_of = ff_bins;
        best_bins = used;
    }
};

}  // namespace

CompactResult compact_solve(const Instance& inst, const TimeStepStructure& steps,
                            CompactAssignment initial, const SearchBudget& budget) {
    const int n = inst.size();
    const int T = steps.step_count();
    initial.bin_of.resize(n, -1);
    initial.fixed.resize(n, 0);

    CompactResult res;
    CompactSearch search;
    search.inst = &inst;
    search.steps = &steps;
    search.T = T;
    search.bins_used = initial.bins_used;
    search.bin_of.assign(n, -1);
    search.placed.assign(T, 0);
    search.loads.assign(initial.bins_used, std::vector<int>(T, 0));
    search.max_nodes = budget.max_nodes;

    // Replay the fixed part; an overloaded step makes the node infeasible.
    for (int j = 0; j < n; ++j) {
        if (!initial.fixed[j]) continue;
        const int b = initial.bin_of[j];
        if (b < 0 || b >= initial.bins_used) {
            res.status = Status::Infeasible;
            return res;
        }
        search.place(j, b);
    }
    for (int b = 0; b < initial.bins_used; ++b)
        for (int t = 0; t < T; ++t)
            if (search.loads[b][t] > inst.capacity) {
                res.status = Status::Infeasible;
                return res;
            }

    for (int j = 0; j < n; ++j)
        if (!initial.fixed[j]) search.order.push_back(j);

    search.rest.assign(search.order.size() + 1, std::vector<long long>(T, 0));
    for (int i = static_cast<int>(search.order.size()) - 1; i >= 0; --i) {
        const int item = search.order[i];
        search.rest[i] = search.rest[i + 1];
        for (int t = steps.first_step[item]; t <= steps.last_step[item]; ++t)
            search.rest[i][t] += inst.items[item].weight;
    }

    int lb = initial.bins_used;
    for (int t = 0; t < T; ++t) {
        const long long total = search.placed[t] + search.rest[0][t];
        lb = std::max(lb, static_cast<int>((total + inst.capacity - 1) / inst.capacity));
    }
    search.global_lb = lb;

    search.best_value = n + initial.bins_used + 1;
    if (budget.best_known) search.best_value = std::min(search.best_value, *budget.best_known);
    search.seed_incumbent();
    search.run(0);

    // A best_known hint below every found solution leaves the caller's own
    // incumbent in charge; the assignment then comes back empty.
    if (search.best_bins == search.best_value) {
        res.assignment.bin_of = search.best_bin_of;
        res.assignment.fixed = initial.fixed;
        res.assignment.bins_used = search.best_bins;
    }
    res.value = search.best_value;
    res.nodes = search.nodes;
    if (search.aborted) {
        res.status = Status::Budget;
        res.lower_bound = lb;
    } else {
        res.status = Status::Optimal;
        res.lower_bound = search.best_value;
    }
    return res;
}

bool assignment_feasible(const Instance& inst, const TimeStepStructure& steps,
                         const CompactAssignment& assignment) {
    const int n = inst.size();
    if (static_cast<int>(assignment.bin_of.size()) != n) return false;
    std::vector<std::vector<long long>> loads(assignment.bins_used,
                                              std::vector<long long>(steps.step_count(), 0));
    for (int j = 0; j < n; ++j) {
        const int b = assignment.bin_of[j];
        if (b < 0 || b >= assignment.bins_used) return false;
        for (int t = steps.first_step[j]; t <= steps.last_step[j]; ++t) {
            loads[b][t] += inst.items[j].weight;
            if (loads[b][t] > inst.capacity) return false;
        }
    }
    return true;
}

}  // namespace tbpp
