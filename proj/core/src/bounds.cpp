#include "tbpp/bounds.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace tbpp {

namespace {

class Stopwatch {
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();

  public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }
};

// Property-1 style sweep: walk the items by start time, retire ended items
// from an end-sorted list, track the running active weight.
long long max_active_weight(const Instance& inst) {
    const int n = inst.size();
    std::vector<int> by_end(n);
    std::iota(by_end.begin(), by_end.end(), 0);
    std::sort(by_end.begin(), by_end.end(), [&](int a, int b) {
        return inst.items[a].end < inst.items[b].end;
    });
    long long running = 0, best = 0;
    std::size_t retired = 0;
    for (int j = 0; j < n; ++j) {
        while (retired < by_end.size() &&
               inst.items[by_end[retired]].end <= inst.items[j].start)
            running -= inst.items[by_end[retired++]].weight;
        running += inst.items[j].weight;
        best = std::max(best, running);
    }
    return best;
}

long long step_weight(const Instance& inst, const TimeStepStructure& steps, int t) {
    long long sum = 0;
    for (int j : steps.steps[t]) sum += inst.items[j].weight;
    return sum;
}

}  // namespace

double lp_c_value(const Instance& inst, const TimeStepStructure& steps) {
    if (steps.step_count() == 0) return 0.0;
    return static_cast<double>(max_active_weight(inst)) / inst.capacity;
}

BoundReport lb1(const Instance& inst, const TimeStepStructure& steps) {
    Stopwatch clock;
    BoundReport rep;
    rep.name = "LB1";
    if (steps.step_count() == 0) {
        rep.elapsed_ms = clock.ms();
        return rep;
    }
    const long long best = max_active_weight(inst);
    rep.value = static_cast<int>((best + inst.capacity - 1) / inst.capacity);
    for (int t = 0; t < steps.step_count(); ++t)
        if (step_weight(inst, steps, t) == best) {
            rep.witness_step = t;
            break;
        }
    rep.elapsed_ms = clock.ms();
    return rep;
}

namespace {

BppResult step_bpp(const Instance& inst, const TimeStepStructure& steps, int t,
                   const SearchBudget& budget) {
    std::vector<int> weights;
    weights.reserve(steps.steps[t].size());
    for (int j : steps.steps[t]) weights.push_back(inst.items[j].weight);
    return bpp_min_bins(std::move(weights), inst.capacity, budget);
}

}  // namespace

BoundReport lb0_single(const Instance& inst, const TimeStepStructure& steps, int step,
                       const SearchBudget& budget) {
    Stopwatch clock;
    BoundReport rep;
    rep.name = "LB0(t~)";
    if (steps.step_count() == 0) {
        rep.elapsed_ms = clock.ms();
        return rep;
    }
    if (step < 0) step = lb1(inst, steps).witness_step.value_or(0);
    const BppResult bpp = step_bpp(inst, steps, step, budget);
    rep.value = bpp.lower;
    rep.witness_step = step;
    rep.proven = bpp.proven;
    rep.elapsed_ms = clock.ms();
    return rep;
}

BoundReport lb0(const Instance& inst, const TimeStepStructure& steps,
                const SearchBudget& budget) {
    Stopwatch clock;
    BoundReport rep;
    rep.name = "LB0";
    for (int t = 0; t < steps.step_count(); ++t) {
        const BppResult bpp = step_bpp(inst, steps, t, budget);
        if (!bpp.proven) rep.proven = false;
        if (bpp.lower > rep.value) {
            rep.value = bpp.lower;
            rep.witness_step = t;
        }
    }
    rep.elapsed_ms = clock.ms();
    return rep;
}

Instance LiftedInstance::apply() const {
    Instance out = base;
    for (std::size_t j = 0; j < lifted_weights.size(); ++j)
        out.items[j].weight = lifted_weights[j];
    return out;
}

LiftedInstance lift(const Instance& inst, const TimeStepStructure& steps, LiftMethod method,
                    int iterations) {
    if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    const int n = inst.size();
    LiftedInstance out;
    out.base = inst;
    std::vector<int>& w = out.lifted_weights;
    w.resize(n);
    for (int j = 0; j < n; ++j) w[j] = inst.items[j].weight;

    const int W = inst.capacity;
    std::vector<int> pool;
    for (int pass = 0; pass < iterations; ++pass) {
        for (int j = 0; j < n; ++j) {
            const int cap = W - w[j];
            if (method == LiftMethod::Lift1) {
                // gamma(j): items sharing at least one step with j.
                pool.clear();
                for (int k = 0; k < n; ++k)
                    if (k != j && steps.first_step[k] <= steps.last_step[j] &&
                        steps.last_step[k] >= steps.first_step[j])
                        pool.push_back(w[k]);
                w[j] = W - subset_sum_max(pool, cap);
            } else {
                // min_t (W - sigma(j,t)) == W - max_t sigma(j,t)
                int max_sigma = 0;
                for (int t = steps.first_step[j]; t <= steps.last_step[j]; ++t) {
                    pool.clear();
                    for (int k : steps.steps[t])
                        if (k != j) pool.push_back(w[k]);
                    max_sigma = std::max(max_sigma, subset_sum_max(pool, cap));
                    if (max_sigma == cap) break;
                }
                w[j] = W - max_sigma;
            }
        }
    }
    return out;
}

BoundReport lb2(const Instance& inst, const TimeStepStructure& steps, LiftMethod method) {
    Stopwatch clock;
    BoundReport rep = lb1(lift(inst, steps, method, 1).apply(), steps);
    rep.name = method == LiftMethod::Lift1 ? "LB2-I" : "LB2-II";
    rep.elapsed_ms = clock.ms();
    return rep;
}

}  // namespace tbpp
