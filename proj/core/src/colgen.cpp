#include "tbpp/colgen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>

#include "tbpp/heuristics.hpp"

namespace tbpp {

namespace {
constexpr double kEps = 1e-6;
}

bool pattern_feasible(const Instance& inst, const TimeStepStructure& steps, const Pattern& p) {
    std::vector<long long> load(steps.step_count(), 0);
    for (int j : p) {
        for (int t = steps.first_step[j]; t <= steps.last_step[j]; ++t) {
            load[t] += inst.items[j].weight;
            if (load[t] > inst.capacity) return false;
        }
    }
    return true;
}

BranchState BranchState::with_same(int r, int s) const {
    BranchState out = *this;
    out.same_pairs.emplace_back(r, s);
    return out;
}

BranchState BranchState::with_diff(int r, int s) const {
    BranchState out = *this;
    out.diff_pairs.emplace_back(r, s);
    return out;
}

BranchState BranchState::with_fixed(Pattern p) const {
    BranchState out = *this;
    out.fixed_patterns.push_back(std::move(p));
    return out;
}

BranchState BranchState::with_forbidden(Pattern p) const {
    BranchState out = *this;
    out.forbidden_patterns.push_back(std::move(p));
    return out;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Shared view of a branch state: fixed items, merged groups over the rest,
// and conflicts lifted to group representatives.
struct NodeStructure {
    std::vector<char> fixed;
    std::vector<int> group_of;              // item -> group index, -1 for fixed
    std::vector<std::vector<int>> groups;   // sorted members
    std::vector<std::pair<int, int>> conflicts;  // group index pairs, deduped
    bool consistent = true;
};

NodeStructure analyze_branch(int n, const BranchState& branch) {
    NodeStructure out;
    out.fixed.assign(n, 0);
    for (const Pattern& p : branch.fixed_patterns)
        for (int j : p) out.fixed[j] = 1;

    UnionFind uf(n);
    for (auto [r, s] : branch.same_pairs) uf.unite(r, s);

    // A group partially covered by fixed patterns cannot be completed.
    std::vector<int> root_fixed(n, -1);
    for (int j = 0; j < n; ++j) {
        const int r = uf.find(j);
        if (root_fixed[r] == -1) root_fixed[r] = out.fixed[j];
        else if (root_fixed[r] != out.fixed[j]) out.consistent = false;
    }

    out.group_of.assign(n, -1);
    std::vector<int> group_of_root(n, -1);
    for (int j = 0; j < n; ++j) {
        if (out.fixed[j]) continue;
        const int r = uf.find(j);
        if (group_of_root[r] < 0) {
            group_of_root[r] = static_cast<int>(out.groups.size());
            out.groups.emplace_back();
        }
        out.group_of[j] = group_of_root[r];
        out.groups[group_of_root[r]].push_back(j);
    }

    std::vector<std::pair<int, int>> conf;
    for (auto [r, s] : branch.diff_pairs) {
        const int gr = out.group_of[r];
        const int gs = out.group_of[s];
        if (gr < 0 || gs < 0) continue;  // an endpoint is fixed, moot for pricing
        if (gr == gs) {
            out.consistent = false;
            continue;
        }
        conf.emplace_back(std::min(gr, gs), std::max(gr, gs));
    }
    std::sort(conf.begin(), conf.end());
    conf.erase(std::unique(conf.begin(), conf.end()), conf.end());
    out.conflicts = std::move(conf);
    return out;
}

}  // namespace

PricingProblem build_pricing(const Instance& inst, const TimeStepStructure& steps,
                             const BranchState& branch,
                             std::span<const double> item_profits) {
    const int n = inst.size();
    NodeStructure node = analyze_branch(n, branch);

    PricingProblem pp;
    pp.capacity = inst.capacity;
    pp.num_steps = steps.step_count();
    pp.consistent = node.consistent;
    pp.groups = node.groups;
    pp.conflicts = node.conflicts;

    pp.profits.assign(pp.groups.size(), 0.0);
    pp.step_weights.resize(pp.groups.size());
    for (std::size_t g = 0; g < pp.groups.size(); ++g) {
        std::map<int, int> acc;
        for (int j : pp.groups[g]) {
            if (!item_profits.empty()) pp.profits[g] += std::max(0.0, item_profits[j]);
            for (int t = steps.first_step[j]; t <= steps.last_step[j]; ++t)
                acc[t] += inst.items[j].weight;
        }
        for (auto [t, w] : acc) {
            if (w > inst.capacity) pp.consistent = false;  // the merge alone overflows
            pp.step_weights[g].emplace_back(t, w);
        }
    }

    for (const Pattern& p : branch.forbidden_patterns) {
        bool touches_fixed = false;
        for (int j : p)
            if (node.fixed[j]) { touches_fixed = true; break; }
        if (!touches_fixed && !p.empty()) pp.forbidden.push_back(p);
    }
    return pp;
}

namespace {

// Branch-and-bound state for the temporal knapsack pricing.
struct PriceSearch {
    const PricingProblem* pp;
    std::vector<int> order;          // candidate groups, profit non-increasing
    std::vector<int> residual;       // per step
    std::vector<std::vector<int>> conflicting;  // per group: conflicting groups
    // Per step: candidate (group, weight) sorted by profit/weight ratio.
    std::vector<std::vector<std::pair<int, int>>> step_lists;
    std::vector<char> selected;
    std::vector<int> locked;         // conflict locks per group
    double undecided_sum = 0.0;      // profit mass of candidates not yet decided
    std::vector<char> undecided;
    double current = 0.0;
    double best = 0.0;
    std::vector<int> best_groups;
    long long nodes = 0;
    long long max_nodes = -1;
    bool aborted = false;

    void run(std::size_t i) {
        if (max_nodes >= 0 && nodes >= max_nodes) {
            aborted = true;
            return;
        }
        ++nodes;
        if (node_bound() <= best + 1e-9) return;
        if (i == order.size()) {
            finish_leaf();
            return;
        }
        const int g = order[i];
        if (locked[g] == 0 && fits(g)) {
            include(g);
            run(i + 1);
            exclude(g);
            if (aborted) return;
        }
        // A locked group is already stripped from the undecided mass.
        const bool was_undecided = undecided[g];
        if (was_undecided) {
            undecided[g] = 0;
            undecided_sum -= pp->profits[g];
        }
        run(i + 1);
        if (was_undecided) {
            undecided[g] = 1;
            undecided_sum += pp->profits[g];
        }
    }

    bool fits(int g) const {
        for (auto [t, w] : pp->step_weights[g])
            if (w > residual[t]) return false;
        return true;
    }

    void include(int g) {
        selected[g] = 1;
        undecided[g] = 0;
        undecided_sum -= pp->profits[g];
        current += pp->profits[g];
        for (auto [t, w] : pp->step_weights[g]) residual[t] -= w;
        for (int h : conflicting[g]) {
            if (locked[h]++ == 0 && undecided[h]) {
                undecided[h] = 0;
                undecided_sum -= pp->profits[h];
                locked_was_undecided.push_back(h);
            } else {
                locked_was_undecided.push_back(-1);
            }
        }
    }

    void exclude(int g) {
        for (auto it = conflicting[g].rbegin(); it != conflicting[g].rend(); ++it) {
            const int flag = locked_was_undecided.back();
            locked_was_undecided.pop_back();
            --locked[*it];
            if (flag >= 0) {
                undecided[flag] = 1;
                undecided_sum += pp->profits[flag];
            }
        }
        for (auto [t, w] : pp->step_weights[g]) residual[t] += w;
        current -= pp->profits[g];
        undecided[g] = 1;
        undecided_sum += pp->profits[g];
        selected[g] = 0;
    }

    std::vector<int> locked_was_undecided;

    double node_bound() const {
        double bound = current + undecided_sum;
        for (int t = 0; t < pp->num_steps; ++t) {
            if (bound <= best + 1e-9) return bound;
            const auto& list = step_lists[t];
            if (list.empty()) continue;
            double active_sum = 0.0, knap = 0.0;
            int rem = residual[t];
            for (auto [g, w] : list) {
                if (!undecided[g]) continue;
                active_sum += pp->profits[g];
                if (rem <= 0) continue;
                if (w <= rem) {
                    knap += pp->profits[g];
                    rem -= w;
                } else {
                    knap += pp->profits[g] * rem / w;
                    rem = 0;
                }
            }
            bound = std::min(bound, current + undecided_sum - active_sum + knap);
        }
        return bound;
    }

    void finish_leaf() {
        if (current <= best + 1e-9) return;
        std::vector<int> sel;
        for (std::size_t g = 0; g < selected.size(); ++g)
            if (selected[g]) sel.push_back(static_cast<int>(g));
        // No-good cuts block exact matches only.
        if (!pp->forbidden.empty()) {
            Pattern items = expand(sel);
            for (const Pattern& f : pp->forbidden)
                if (items == f) return;
        }
        best = current;
        best_groups = sel;
    }

    Pattern expand(const std::vector<int>& groups) const {
        Pattern items;
        for (int g : groups)
            items.insert(items.end(), pp->groups[g].begin(), pp->groups[g].end());
        std::sort(items.begin(), items.end());
        return items;
    }
};

}  // namespace

PriceResult price(const PricingProblem& pp, const SearchBudget& budget) {
    PriceResult res;
    if (!pp.consistent) return res;

    PriceSearch search;
    search.pp = &pp;
    search.max_nodes = budget.max_nodes;
    const int G = static_cast<int>(pp.groups.size());
    search.selected.assign(G, 0);
    search.locked.assign(G, 0);
    search.undecided.assign(G, 0);
    search.residual.assign(pp.num_steps, pp.capacity);
    search.conflicting.assign(G, {});
    for (auto [a, b] : pp.conflicts) {
        search.conflicting[a].push_back(b);
        search.conflicting[b].push_back(a);
    }

    for (int g = 0; g < G; ++g)
        if (pp.profits[g] > 1e-12) search.order.push_back(g);
    std::sort(search.order.begin(), search.order.end(), [&](int a, int b) {
        if (pp.profits[a] != pp.profits[b]) return pp.profits[a] > pp.profits[b];
        return pp.groups[a] < pp.groups[b];
    });
    for (int g : search.order) {
        search.undecided[g] = 1;
        search.undecided_sum += pp.profits[g];
    }
    search.step_lists.assign(pp.num_steps, {});
    for (int g : search.order)
        for (auto [t, w] : pp.step_weights[g]) search.step_lists[t].emplace_back(g, w);
    for (auto& list : search.step_lists)
        std::sort(list.begin(), list.end(), [&](const auto& a, const auto& b) {
            const double lhs = pp.profits[a.first] * b.second;
            const double rhs = pp.profits[b.first] * a.second;
            if (lhs != rhs) return lhs > rhs;
            return a.first < b.first;
        });

    search.run(0);

    res.value = search.best;
    res.pattern = search.expand(search.best_groups);
    res.proven = !search.aborted;
    res.nodes = search.nodes;
    return res;
}

int ColumnPool::add(Pattern p) {
    std::sort(p.begin(), p.end());
    auto [it, inserted] = index_.try_emplace(p, static_cast<int>(patterns_.size()));
    if (inserted) patterns_.push_back(std::move(p));
    return it->second;
}

namespace {

// Restriction of a pool pattern to unfixed items; empty when incompatible
// with the branch (split group, conflict, or forbidden match).
std::optional<Pattern> project_column(const Pattern& pattern, const NodeStructure& node,
                                      const std::vector<Pattern>& forbidden) {
    Pattern support;
    std::vector<int> touched;
    for (int j : pattern) {
        if (node.fixed[j]) continue;
        support.push_back(j);
        touched.push_back(node.group_of[j]);
    }
    if (support.empty()) return std::nullopt;
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

    // Whole groups only.
    std::size_t expected = 0;
    for (int g : touched) expected += node.groups[g].size();
    if (expected != support.size()) return std::nullopt;

    // No conflicting group pair.
    for (auto [a, b] : node.conflicts)
        if (std::binary_search(touched.begin(), touched.end(), a) &&
            std::binary_search(touched.begin(), touched.end(), b))
            return std::nullopt;

    for (const Pattern& f : forbidden)
        if (support == f) return std::nullopt;
    return support;
}

}  // namespace

MasterResult solve_master(const Instance& inst, const TimeStepStructure& steps,
                          const BranchState& branch, ColumnPool& pool,
                          const CgBudgets& budgets) {
    const int n = inst.size();
    MasterResult res;
    res.duals.assign(n, 0.0);

    NodeStructure node = analyze_branch(n, branch);
    if (!node.consistent) {
        res.status = Status::Infeasible;
        return res;
    }
    // Merged groups must be feasible stand-alone patterns.
    for (const auto& g : node.groups)
        if (!pattern_feasible(inst, steps, g)) {
            res.status = Status::Infeasible;
            return res;
        }

    std::vector<Pattern> forbidden;
    for (const Pattern& p : branch.forbidden_patterns) {
        bool touches_fixed = false;
        for (int j : p)
            if (node.fixed[j]) { touches_fixed = true; break; }
        if (!touches_fixed && !p.empty()) forbidden.push_back(p);
    }

    // Row space: unfixed items.
    std::vector<int> row_of(n, -1);
    std::vector<int> item_of_row;
    for (int j = 0; j < n; ++j)
        if (!node.fixed[j]) {
            row_of[j] = static_cast<int>(item_of_row.size());
            item_of_row.push_back(j);
        }
    const int rows = static_cast<int>(item_of_row.size());
    const int fixed_count = static_cast<int>(branch.fixed_patterns.size());

    RmpSolver solver(rows);
    solver.set_iteration_limit(budgets.lp_iteration_limit);
    std::map<Pattern, int> support_seen;          // projected support -> solver column
    std::vector<int> solver_pool_id;              // solver column -> pool id
    std::vector<Pattern> solver_support;          // solver column -> projected support

    auto add_solver_column = [&](const Pattern& support, int pool_id) {
        auto [it, inserted] = support_seen.try_emplace(support, -1);
        if (!inserted) return false;
        std::vector<int> rows_of;
        rows_of.reserve(support.size());
        for (int j : support) rows_of.push_back(row_of[j]);
        it->second = solver.add_column(std::move(rows_of));
        solver_pool_id.push_back(pool_id);
        solver_support.push_back(support);
        return true;
    };

    for (int id = 0; id < pool.size(); ++id) {
        auto support = project_column(pool[id], node, forbidden);
        if (support) add_solver_column(*support, id);
    }

    // Guarantee coverage with one column per group.
    std::vector<char> covered(node.groups.size(), 0);
    for (const Pattern& support : solver_support)
        for (int j : support)
            if (node.group_of[j] >= 0) covered[node.group_of[j]] = 1;
    for (std::size_t g = 0; g < node.groups.size(); ++g) {
        if (covered[g]) continue;
        Pattern base = node.groups[g];
        if (std::find(forbidden.begin(), forbidden.end(), base) == forbidden.end()) {
            add_solver_column(base, pool.add(base));
            continue;
        }
        // The bare group is forbidden; extend it by some compatible group.
        bool added = false;
        for (std::size_t h = 0; h < node.groups.size() && !added; ++h) {
            if (h == g) continue;
            const std::pair<int, int> key{std::min<int>(g, h), std::max<int>(g, h)};
            if (std::find(node.conflicts.begin(), node.conflicts.end(), key) !=
                node.conflicts.end())
                continue;
            Pattern ext = base;
            ext.insert(ext.end(), node.groups[h].begin(), node.groups[h].end());
            std::sort(ext.begin(), ext.end());
            if (!pattern_feasible(inst, steps, ext)) continue;
            if (std::find(forbidden.begin(), forbidden.end(), ext) != forbidden.end())
                continue;
            add_solver_column(ext, pool.add(ext));
            added = true;
        }
        if (!added) {
            res.status = Status::Infeasible;
            return res;
        }
    }

    std::vector<double> item_profits(n, 0.0);
    bool proven = false;
    LpSolution lp;
    while (true) {
        lp = solver.solve();
        res.lp_iterations += lp.iterations;
        if (lp.status != LpStatus::Optimal) {
            res.status = lp.status == LpStatus::Infeasible ? Status::Infeasible
                                                           : Status::Budget;
            if (lp.status == LpStatus::Infeasible) return res;
            break;
        }
        for (int r = 0; r < rows; ++r)
            item_profits[item_of_row[r]] = std::max(0.0, lp.duals[r]);

        PricingProblem pp = build_pricing(inst, steps, branch, item_profits);
        const PriceResult pr = price(pp, budgets.pricing);
        res.pricing_nodes += pr.nodes;
        if (pr.value > 1.0 + kEps) {
            const int pool_id = pool.add(pr.pattern);
            if (!add_solver_column(pr.pattern, pool_id)) {
                // Numerical stall: the column is already present.
                res.status = Status::Budget;
                break;
            }
            ++res.columns_added;
            if (res.columns_added >= budgets.max_columns) {
                res.status = Status::Budget;
                break;
            }
            continue;
        }
        proven = pr.proven;
        res.status = proven ? Status::Optimal : Status::Budget;
        break;
    }

    res.lp_value = lp.objective + fixed_count;
    for (std::size_t c = 0; c < solver_support.size(); ++c) {
        if (c < lp.primal.size() && lp.primal[c] > 1e-9) {
            XiEntry e;
            e.pool_id = solver_pool_id[c];
            e.items = solver_support[c];
            e.value = lp.primal[c];
            res.xi.push_back(std::move(e));
        }
    }
    return res;
}

void seed_columns(const Instance& inst, const TimeStepStructure& steps, ColumnPool& pool) {
    const Solution seed = greedy_best(inst, steps);
    std::vector<Pattern> bins(seed.assignment.bins_used);
    for (int j = 0; j < inst.size(); ++j)
        if (seed.assignment.bin_of[j] >= 0) bins[seed.assignment.bin_of[j]].push_back(j);
    for (Pattern& p : bins)
        if (!p.empty()) pool.add(std::move(p));
    for (int j = 0; j < inst.size(); ++j) pool.add({j});
}

BoundReport lb3(const Instance& inst, const TimeStepStructure& steps, ColumnPool* pool,
                const CgBudgets& budgets) {
    const auto start = std::chrono::steady_clock::now();
    BoundReport rep;
    rep.name = "LB3";

    ColumnPool local;
    ColumnPool& columns = pool ? *pool : local;
    seed_columns(inst, steps, columns);
    const MasterResult mr = solve_master(inst, steps, {}, columns, budgets);
    rep.value = static_cast<int>(std::ceil(mr.lp_value - kEps));
    rep.proven = mr.status == Status::Optimal;
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return rep;
}

}  // namespace tbpp
