#include "tbpp/generator.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>

namespace tbpp {

namespace {

// Portable bounded draw (rejection sampling on the raw engine output), so a
// seed reproduces the same instance on every standard library.
int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - lo + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / span * span;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return lo + static_cast<int>(draw % span);
}

}  // namespace

RawSchedule generate_raw_schedule(const GeneratorParams& params) {
    if (params.a_min < 1 || params.a_min > params.a_max)
        throw std::invalid_argument("invalid active-set size range");
    if (params.b_min < 0 || params.b_min > params.b_max || params.b_max > 100)
        throw std::invalid_argument("invalid carry-over percentage range");
    if (params.raw_step_count < 1) throw std::invalid_argument("raw_step_count must be >= 1");
    if (params.weight_min < 1 || params.weight_min > params.weight_max ||
        params.weight_max > params.capacity)
        throw std::invalid_argument("invalid weight range");

    std::mt19937_64 rng(params.seed);
    RawSchedule out;
    out.active_sets.resize(params.raw_step_count);

    auto new_item = [&](int t) {
        const int id = static_cast<int>(out.weights.size());
        out.weights.push_back(uniform_int(rng, params.weight_min, params.weight_max));
        out.first_set.push_back(t);
        out.last_set.push_back(t);
        return id;
    };

    std::vector<int> prev;
    for (int t = 0; t < params.raw_step_count; ++t) {
        const int size = uniform_int(rng, params.a_min, params.a_max);
        std::vector<int> cur;
        cur.reserve(size);
        if (t > 0 && !prev.empty()) {
            const int beta = uniform_int(rng, params.b_min, params.b_max);
            int carry = (beta * static_cast<int>(prev.size()) + 50) / 100;  // round to nearest
            carry = std::clamp(carry, 0, std::min(static_cast<int>(prev.size()), size));
            // Uniform selection without replacement (partial Fisher-Yates).
            std::vector<int> pool = prev;
            for (int k = 0; k < carry; ++k) {
                const int pick = uniform_int(rng, k, static_cast<int>(pool.size()) - 1);
                std::swap(pool[k], pool[pick]);
                cur.push_back(pool[k]);
                out.last_set[pool[k]] = t;
            }
        }
        while (static_cast<int>(cur.size()) < size) cur.push_back(new_item(t));
        std::sort(cur.begin(), cur.end());
        out.active_sets[t] = std::move(cur);
        prev = out.active_sets[t];
    }
    return out;
}

Instance truncate_schedule(const RawSchedule& schedule, const GeneratorParams& params,
                           int target_steps, std::string name) {
    if (target_steps < 1 || target_steps > static_cast<int>(schedule.active_sets.size()))
        throw std::invalid_argument("target_steps out of range");
    Instance inst;
    inst.capacity = params.capacity;
    inst.name = std::move(name);
    for (std::size_t j = 0; j < schedule.weights.size(); ++j) {
        if (schedule.first_set[j] >= target_steps) continue;
        inst.items.push_back({schedule.weights[j], schedule.first_set[j],
                              static_cast<long long>(schedule.last_set[j]) + 1});
    }
    // Items are created in first-appearance order, so they are already
    // sorted by start time.
    return inst;
}

Instance generate_instance(const GeneratorParams& params, int target_steps, std::string name) {
    return truncate_schedule(generate_raw_schedule(params), params, target_steps,
                             std::move(name));
}

GeneratorParams class_params(int cls) {
    GeneratorParams p;
    switch (cls) {
        case 1: p.a_min = 10; p.a_max = 10; p.b_min = 90; p.b_max = 95; break;
        case 2: p.a_min = 15; p.a_max = 15; p.b_min = 90; p.b_max = 95; break;
        case 3: p.a_min = 20; p.a_max = 20; p.b_min = 90; p.b_max = 95; break;
        case 4: p.a_min = 25; p.a_max = 25; p.b_min = 90; p.b_max = 95; break;
        case 5: p.a_min = 30; p.a_max = 30; p.b_min = 90; p.b_max = 95; break;
        case 6: p.a_min = 30; p.a_max = 30; p.b_min = 70; p.b_max = 90; break;
        case 7: p.a_min = 30; p.a_max = 30; p.b_min = 90; p.b_max = 95; break;
        case 8: p.a_min = 25; p.a_max = 35; p.b_min = 90; p.b_max = 95; break;
        case 9: p.a_min = 25; p.a_max = 35; p.b_min = 70; p.b_max = 90; break;
        case 10: p.a_min = 30; p.a_max = 40; p.b_min = 90; p.b_max = 95; break;
        default: throw std::invalid_argument("class must be 1..10");
    }
    return p;
}

int class_raw_horizon(int cls, int index) {
    if (cls < 1 || cls > 10) throw std::invalid_argument("class must be 1..10");
    if (index < 1) throw std::invalid_argument("instance index must be >= 1");
    return (cls <= 4 ? 2688 : 768) + 128 * (index - 1);
}

namespace {
constexpr const char* kClassNames[10] = {"I",  "II", "III", "IV", "V",
                                         "VI", "VII", "VIII", "IX", "X"};
}

const char* class_name(int cls) {
    if (cls < 1 || cls > 10) throw std::invalid_argument("class must be 1..10");
    return kClassNames[cls - 1];
}

int class_from_name(const std::string& name) {
    for (int c = 1; c <= 10; ++c)
        if (name == kClassNames[c - 1]) return c;
    throw std::invalid_argument("unknown class name: " + name);
}

}  // namespace tbpp
