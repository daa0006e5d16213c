#include "tbpp/bnp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <queue>

namespace tbpp {

namespace {

constexpr double kIntTol = 1e-6;

class Stopwatch {
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();

  public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }
};

bool near_integer(double v) { return std::fabs(v - std::round(v)) <= kIntTol; }

// Merge identical supports and shrink patterns whose every item is
// over-covered; at an LP optimum the shrink is a no-op, but it tidies the
// degenerate cases before pair selection and integrality tests.
std::vector<XiEntry> repair_solution(const std::vector<XiEntry>& xi) {
    std::map<Pattern, std::pair<int, double>> merged;  // support -> (pool id, value)
    for (const XiEntry& e : xi) {
        auto [it, inserted] = merged.try_emplace(e.items, std::make_pair(e.pool_id, e.value));
        if (!inserted) it->second.second += e.value;
    }
    std::map<int, double> coverage;
    for (const auto& [items, pv] : merged)
        for (int j : items) coverage[j] += pv.second;
    std::vector<XiEntry> out;
    for (auto& [items, pv] : merged) {
        double slack = pv.second;
        for (int j : items) slack = std::min(slack, coverage[j] - 1.0);
        if (slack > kIntTol) {
            for (int j : items) coverage[j] -= slack;
            pv.second -= slack;
        }
        if (pv.second > kIntTol) out.push_back({pv.first, items, pv.second});
    }
    return out;
}

bool integral_solution(const std::vector<XiEntry>& xi) {
    for (const XiEntry& e : xi)
        if (!near_integer(e.value)) return false;
    return true;
}

// Turns an integral node solution (selected patterns plus fixed bins) into
// a packing; items covered twice stay in the first bin that contains them.
Solution extract_solution(int n, const std::vector<XiEntry>& xi,
                          const std::vector<Pattern>& fixed, const char* source) {
    std::vector<Pattern> bins = fixed;
    std::vector<const Pattern*> ordered;
    for (const XiEntry& e : xi)
        if (e.value >= 0.5) ordered.push_back(&e.items);
    std::sort(ordered.begin(), ordered.end(),
              [](const Pattern* a, const Pattern* b) { return *a < *b; });
    for (const Pattern* p : ordered) bins.push_back(*p);

    Solution sol;
    sol.assignment.bin_of.assign(n, -1);
    sol.assignment.fixed.assign(n, 0);
    sol.source = source;
    int used = 0;
    for (const Pattern& bin : bins) {
        bool opened = false;
        for (int j : bin) {
            if (sol.assignment.bin_of[j] >= 0) continue;  // duplicate coverage repair
            if (!opened) {
                ++used;
                opened = true;
            }
            sol.assignment.bin_of[j] = used - 1;
        }
    }
    sol.assignment.bins_used = used;
    sol.value = used;
    return sol;
}

bool covers_all(const Solution& sol) {
    for (int b : sol.assignment.bin_of)
        if (b < 0) return false;
    return true;
}

}  // namespace

SearchBudget rolling_window_budget(int step_count) {
    return {step_count < 100 ? 2'000'000 : 6'000'000, std::nullopt};
}

std::optional<std::tuple<int, int, double>> select_branch_pair(
    const std::vector<XiEntry>& xi) {
    std::map<std::pair<int, int>, double> mass;
    for (const XiEntry& e : xi)
        for (std::size_t a = 0; a < e.items.size(); ++a)
            for (std::size_t b = a + 1; b < e.items.size(); ++b)
                mass[{e.items[a], e.items[b]}] += e.value;
    for (const auto& [pair, gamma] : mass)  // std::map iterates lexicographically
        if (!near_integer(gamma)) return std::make_tuple(pair.first, pair.second, gamma);
    return std::nullopt;
}

namespace {

struct TreeNode {
    BranchState branch;
    double lb = 0.0;
    int depth = 0;
    int child_rank = 0;  // 0: same-branch child, 1: diff-branch child
    long long seq = 0;
};

struct NodeOrder {
    bool operator()(const TreeNode& a, const TreeNode& b) const {
        if (a.lb != b.lb) return a.lb > b.lb;            // min lb first
        if (a.depth != b.depth) return a.depth < b.depth;  // deeper first
        if (a.child_rank != b.child_rank) return a.child_rank > b.child_rank;
        return a.seq > b.seq;
    }
};

// Most fractional toward one; ties prefer the larger pattern, then the
// lexicographically smaller one.
const XiEntry* most_fractional(const std::vector<XiEntry>& xi) {
    const XiEntry* best = nullptr;
    for (const XiEntry& e : xi) {
        const double frac = e.value - std::floor(e.value);
        if (frac <= kIntTol || frac >= 1.0 - kIntTol) continue;
        if (!best) { best = &e; continue; }
        const double bf = best->value - std::floor(best->value);
        if (frac > bf + 1e-12 ||
            (std::fabs(frac - bf) <= 1e-12 &&
             (e.items.size() > best->items.size() ||
              (e.items.size() == best->items.size() && e.items < best->items))))
            best = &e;
    }
    return best;
}

}  // namespace

SolveReport branch_and_price(const Instance& inst, const TimeStepStructure& steps,
                             const SolveConfig& config, const Solution* incumbent,
                             ColumnPool* shared_pool) {
    const int n = inst.size();
    Stopwatch clock;
    SolveReport rep;

    ColumnPool local;
    ColumnPool& pool = shared_pool ? *shared_pool : local;
    if (!shared_pool) seed_columns(inst, steps, pool);

    int best_value = n + 1;
    std::optional<Solution> best;
    if (incumbent) {
        best = *incumbent;
        best_value = incumbent->value;
    } else {
        Solution seed = greedy_best(inst, steps);
        best_value = seed.value;
        best = std::move(seed);
    }

    std::priority_queue<TreeNode, std::vector<TreeNode>, NodeOrder> open;
    long long seq = 0;
    open.push({BranchState{}, 0.0, 0, 0, seq++});
    bool exact = true;  // false once an unproven node had to be closed heuristically
    double dropped_lb = std::numeric_limits<double>::infinity();

    while (!open.empty()) {
        if (!config.tree_budget.unlimited() && rep.nodes_explored >= config.tree_budget.max_nodes) {
            rep.status = Status::Budget;
            break;
        }
        const TreeNode node = open.top();
        if (static_cast<int>(std::ceil(node.lb - kIntTol)) >= best_value) {
            // Best-first order: every open node is prunable.
            while (!open.empty()) open.pop();
            break;
        }
        open.pop();

        MasterResult mr = solve_master(inst, steps, node.branch, pool, config.cg);
        ++rep.nodes_explored;
        rep.columns_generated += mr.columns_added;
        if (node.depth == 0) rep.root_lp_value = mr.lp_value;
        if (mr.status == Status::Infeasible) continue;

        const bool proven = mr.status == Status::Optimal;
        const double node_lb = proven ? std::max(node.lb, mr.lp_value) : node.lb;
        if (static_cast<int>(std::ceil(node_lb - kIntTol)) >= best_value) continue;

        const std::vector<XiEntry> repaired = repair_solution(mr.xi);
        if (integral_solution(repaired)) {
            Solution cand =
                extract_solution(n, repaired, node.branch.fixed_patterns, "branch-and-price");
            if (covers_all(cand) && cand.value < best_value) {
                best_value = cand.value;
                best = std::move(cand);
            }
            if (!proven) {
                // An unproven node LP cannot certify the subtree; remember
                // its inherited bound and give up on exactness.
                exact = false;
                dropped_lb = std::min(dropped_lb, node_lb);
            }
            continue;
        }

        auto pair = select_branch_pair(repaired);
        if (pair) {
            auto [r, s, gamma] = *pair;
            (void)gamma;
            open.push({node.branch.with_same(r, s), node_lb, node.depth + 1, 0, seq++});
            open.push({node.branch.with_diff(r, s), node_lb, node.depth + 1, 1, seq++});
        } else {
            // Fractional but integral-by-pairs: fall back to fixing/forbidding
            // a single pattern, which keeps the search complete.
            const XiEntry* pick = most_fractional(repaired);
            if (!pick) {
                exact = false;
                dropped_lb = std::min(dropped_lb, node_lb);
                continue;
            }
            open.push({node.branch.with_fixed(pick->items), node_lb, node.depth + 1, 0, seq++});
            open.push(
                {node.branch.with_forbidden(pick->items), node_lb, node.depth + 1, 1, seq++});
        }
    }

    if (open.empty() && exact) {
        rep.status = Status::Optimal;
        rep.lower_bound = best_value;
    } else {
        rep.status = Status::Budget;
        double lb = static_cast<double>(best_value);
        if (!open.empty()) lb = std::min(lb, open.top().lb);  // min-heap top = global bound
        lb = std::min(lb, dropped_lb);
        rep.lower_bound = static_cast<int>(std::ceil(lb - kIntTol));
    }
    rep.best_value = best_value;
    rep.best = std::move(best);
    rep.timings.tree_ms = clock.ms();
    return rep;
}

namespace {

struct DiveSearch {
    const Instance* inst;
    const TimeStepStructure* steps;
    ColumnPool* pool;
    const CgBudgets* budgets;
    long long max_nodes;
    long long nodes = 0;
    int best_value;
    std::optional<Solution> best;

    void run(const BranchState& branch, int tokens) {
        if (max_nodes >= 0 && nodes >= max_nodes) return;
        ++nodes;
        MasterResult mr = solve_master(*inst, *steps, branch, *pool, *budgets);
        if (mr.status == Status::Infeasible) return;
        if (mr.status == Status::Optimal &&
            static_cast<int>(std::ceil(mr.lp_value - kIntTol)) >= best_value)
            return;

        const std::vector<XiEntry> repaired = repair_solution(mr.xi);
        if (integral_solution(repaired)) {
            Solution cand =
                extract_solution(inst->size(), repaired, branch.fixed_patterns, "dive");
            if (covers_all(cand) && cand.value < best_value) {
                best_value = cand.value;
                best = std::move(cand);
            }
            return;
        }
        const XiEntry* pick = most_fractional(repaired);
        if (!pick) return;
        const Pattern chosen = pick->items;
        run(branch.with_fixed(chosen), tokens);
        if (tokens > 0) run(branch.with_forbidden(chosen), tokens - 1);
    }
};

}  // namespace

std::optional<Solution> dive(const Instance& inst, const TimeStepStructure& steps,
                             const DiveConfig& config, ColumnPool& pool,
                             const BranchState& root, const CgBudgets& budgets,
                             int prune_at) {
    DiveSearch search;
    search.inst = &inst;
    search.steps = &steps;
    search.pool = &pool;
    search.budgets = &budgets;
    search.max_nodes = config.tree_budget.max_nodes;
    search.best_value = prune_at >= 0 ? prune_at : inst.size() + 1;
    search.run(root, config.tokens);
    return search.best;
}

SolveReport solve(const Instance& inst, const SolveConfig& config) {
    const int n = inst.size();
    SolveReport rep;
    const TimeStepStructure steps = reduce_time_steps(inst);

    // Phase 1: bound ladder and fast heuristics.
    Stopwatch bounds_clock;
    const BoundReport r0 = lb0(inst, steps, config.bpp_budget);
    const BoundReport r1 = lb1(inst, steps);
    const BoundReport r2 = lb2(inst, steps, LiftMethod::Lift1);
    rep.lb0_value = r0.value;
    rep.lb1_value = r1.value;
    rep.lb2_value = r2.value;
    int lower = std::max({r0.value, r1.value, r2.value});
    rep.timings.bounds_ms = bounds_clock.ms();

    Stopwatch heur_clock;
    Solution ub = greedy_best(inst, steps);
    rep.greedy_value = ub.value;
    if (config.use_rolling && n > 0) {
        RollingConfig rolling = config.rolling;
        if (rolling.window_budget.max_nodes == 0)
            rolling.window_budget = rolling_window_budget(steps.step_count());
        if (auto rolled = rolling_horizon(inst, steps, rolling)) {
            rep.rolling_value = rolled->value;
            if (rolled->value < ub.value) ub = std::move(*rolled);
        }
    }
    rep.timings.heuristics_ms = heur_clock.ms();

    auto finish = [&](int phase, Status status, int lb) {
        rep.status = status;
        rep.best_value = ub.value;
        rep.best = ub;
        rep.lower_bound = lb;
        rep.closed_phase = status == Status::Optimal ? phase : 0;
        return rep;
    };

    if (ub.value == lower) return finish(1, Status::Optimal, lower);

    // Phase 2: root relaxation of the exponential model.
    Stopwatch root_clock;
    ColumnPool pool;
    seed_columns(inst, steps, pool);
    const MasterResult root = solve_master(inst, steps, {}, pool, config.cg);
    rep.timings.root_ms = root_clock.ms();
    rep.root_lp_value = root.lp_value;
    rep.columns_generated += root.columns_added;
    const int lb3_value = static_cast<int>(std::ceil(root.lp_value - kIntTol));
    rep.lb3_value = lb3_value;
    if (root.status == Status::Optimal) {
        lower = std::max(lower, lb3_value);
        if (ub.value == lower) return finish(2, Status::Optimal, lower);
    }

    // Phase 3: one-token dive from the root columns.
    if (config.use_dive) {
        Stopwatch dive_clock;
        if (auto dived = dive(inst, steps, config.dive, pool, {}, config.cg, ub.value)) {
            rep.dive_value = dived->value;
            if (dived->value < ub.value) ub = std::move(*dived);
        }
        rep.timings.dive_ms = dive_clock.ms();
        if (ub.value == lower) return finish(3, Status::Optimal, lower);
    }

    // Phase 4: exact search with pair branching.
    SolveReport tree = branch_and_price(inst, steps, config, &ub, &pool);
    rep.nodes_explored = tree.nodes_explored;
    rep.columns_generated += tree.columns_generated;
    rep.timings.tree_ms = tree.timings.tree_ms;
    if (tree.best && tree.best->value < ub.value) ub = *tree.best;
    lower = std::max(lower, tree.lower_bound);
    if (tree.status == Status::Optimal) return finish(4, Status::Optimal, lower);
    return finish(4, Status::Budget, lower);
}

}  // namespace tbpp
