#include "tbpp/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tbpp {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    const int len = std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf, buf + len);
}

std::string opt_int(const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = line.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

std::optional<int> parse_opt_int(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::stoi(s);
}

double parse_double(const std::string& s) { return s.empty() ? 0.0 : std::stod(s); }

Status parse_status(const std::string& s) {
    if (s == "optimal") return Status::Optimal;
    if (s == "feasible") return Status::Feasible;
    if (s == "infeasible") return Status::Infeasible;
    if (s == "budget") return Status::Budget;
    throw std::runtime_error("unknown status: " + s);
}

}  // namespace

const char* const kRunCsvHeader =
    "instance,class,T,n,method,status,value,lower_bound,root_lp,nodes,columns,"
    "lb0,lb1,lb2,lb3,ub_greedy,ub_rolling,ub_dive,"
    "bounds_ms,heuristics_ms,root_ms,dive_ms,tree_ms,time_ms";

std::string to_csv_row(const RunRecord& r) {
    std::ostringstream out;
    out << r.instance << ',' << r.cls << ',' << r.steps << ',' << r.items << ',' << r.method
        << ',' << to_string(r.status) << ',' << opt_int(r.value) << ','
        << opt_int(r.lower_bound) << ',' << (r.root_lp ? fmt_double(*r.root_lp) : "") << ','
        << r.nodes << ',' << r.columns << ',' << opt_int(r.lb0) << ',' << opt_int(r.lb1) << ','
        << opt_int(r.lb2) << ',' << opt_int(r.lb3) << ',' << opt_int(r.ub_greedy) << ','
        << opt_int(r.ub_rolling) << ',' << opt_int(r.ub_dive) << ',' << fmt_double(r.bounds_ms)
        << ',' << fmt_double(r.heuristics_ms) << ',' << fmt_double(r.root_ms) << ','
        << fmt_double(r.dive_ms) << ',' << fmt_double(r.tree_ms) << ','
        << fmt_double(r.time_ms);
    return out.str();
}

std::vector<RunRecord> read_run_csv(std::istream& in) {
    std::vector<RunRecord> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first && line.rfind("instance,", 0) == 0) {
            first = false;
            continue;
        }
        first = false;
        const auto f = split(line, ',');
        if (f.size() != 24) throw std::runtime_error("malformed result row: " + line);
        RunRecord r;
        r.instance = f[0];
        r.cls = f[1];
        r.steps = std::stoi(f[2]);
        r.items = std::stoi(f[3]);
        r.method = f[4];
        r.status = parse_status(f[5]);
        r.value = parse_opt_int(f[6]);
        r.lower_bound = parse_opt_int(f[7]);
        if (!f[8].empty()) r.root_lp = parse_double(f[8]);
        r.nodes = std::stoll(f[9]);
        r.columns = std::stoll(f[10]);
        r.lb0 = parse_opt_int(f[11]);
        r.lb1 = parse_opt_int(f[12]);
        r.lb2 = parse_opt_int(f[13]);
        r.lb3 = parse_opt_int(f[14]);
        r.ub_greedy = parse_opt_int(f[15]);
        r.ub_rolling = parse_opt_int(f[16]);
        r.ub_dive = parse_opt_int(f[17]);
        r.bounds_ms = parse_double(f[18]);
        r.heuristics_ms = parse_double(f[19]);
        r.root_ms = parse_double(f[20]);
        r.dive_ms = parse_double(f[21]);
        r.tree_ms = parse_double(f[22]);
        r.time_ms = parse_double(f[23]);
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

void fill_identity(RunRecord& rec, const Instance& inst, const TimeStepStructure& steps) {
    rec.instance = inst.name.empty() ? "unnamed" : inst.name;
    rec.items = inst.size();
    rec.steps = steps.step_count();
    const auto parts = split(rec.instance, '_');
    if (parts.size() == 3) {
        try {
            class_from_name(parts[0]);
            rec.cls = parts[0];
        } catch (const std::invalid_argument&) {
        }
    }
}

}  // namespace

RunRecord run_method(const Instance& inst, const std::string& method,
                     const SolveConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const TimeStepStructure steps = reduce_time_steps(inst);
    RunRecord rec;
    fill_identity(rec, inst, steps);
    rec.method = method;

    if (method == "lb1") {
        const BoundReport r = lb1(inst, steps);
        rec.lb1 = rec.value = rec.lower_bound = r.value;
    } else if (method == "lb0") {
        const BoundReport r = lb0(inst, steps, config.bpp_budget);
        rec.lb0 = rec.value = rec.lower_bound = r.value;
        if (!r.proven) rec.status = Status::Budget;
    } else if (method == "lb2") {
        const BoundReport r = lb2(inst, steps, LiftMethod::Lift1);
        rec.lb2 = rec.value = rec.lower_bound = r.value;
    } else if (method == "lb3") {
        ColumnPool pool;
        const BoundReport r = lb3(inst, steps, &pool, config.cg);
        rec.lb3 = rec.value = rec.lower_bound = r.value;
        if (!r.proven) rec.status = Status::Budget;
    } else if (method == "greedy") {
        const Solution s = greedy_best(inst, steps);
        rec.value = rec.ub_greedy = s.value;
        rec.status = Status::Feasible;
    } else if (method == "rolling") {
        RollingConfig rolling = config.rolling;
        if (rolling.window_budget.max_nodes == 0)
            rolling.window_budget = rolling_window_budget(steps.step_count());
        if (auto s = rolling_horizon(inst, steps, rolling)) {
            rec.value = rec.ub_rolling = s->value;
            rec.status = Status::Feasible;
        } else {
            rec.status = Status::Budget;
        }
    } else if (method == "dive") {
        ColumnPool pool;
        const BoundReport r = lb3(inst, steps, &pool, config.cg);
        rec.lb3 = r.value;
        if (r.proven) rec.lower_bound = r.value;
        if (auto s = dive(inst, steps, config.dive, pool, {}, config.cg)) {
            rec.value = rec.ub_dive = s->value;
            rec.status = Status::Feasible;
        } else {
            rec.status = Status::Budget;
        }
    } else if (method == "compact") {
        const CompactResult r = compact_solve(inst, steps, {}, config.compact_budget);
        rec.status = r.status;
        rec.value = r.value;
        rec.lower_bound = r.lower_bound;
        rec.nodes = r.nodes;
    } else if (method == "bnp") {
        const SolveReport r = branch_and_price(inst, steps, config);
        rec.status = r.status;
        rec.value = r.best_value;
        rec.lower_bound = r.lower_bound;
        rec.nodes = r.nodes_explored;
        rec.columns = r.columns_generated;
        if (r.root_lp_value >= 0.0) rec.root_lp = r.root_lp_value;
        rec.tree_ms = r.timings.tree_ms;
    } else if (method == "auto") {
        const SolveReport r = solve(inst, config);
        rec.status = r.status;
        rec.value = r.best_value;
        rec.lower_bound = r.lower_bound;
        rec.nodes = r.nodes_explored;
        rec.columns = r.columns_generated;
        if (r.root_lp_value >= 0.0) rec.root_lp = r.root_lp_value;
        rec.lb0 = r.lb0_value;
        rec.lb1 = r.lb1_value;
        rec.lb2 = r.lb2_value;
        rec.lb3 = r.lb3_value;
        rec.ub_greedy = r.greedy_value;
        rec.ub_rolling = r.rolling_value;
        rec.ub_dive = r.dive_value;
        rec.bounds_ms = r.timings.bounds_ms;
        rec.heuristics_ms = r.timings.heuristics_ms;
        rec.root_ms = r.timings.root_ms;
        rec.dive_ms = r.timings.dive_ms;
        rec.tree_ms = r.timings.tree_ms;
    } else {
        throw std::invalid_argument("unknown method: " + method);
    }

    rec.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            start)
                      .count();
    return rec;
}

std::string summarize(const RunRecord& rec) {
    std::ostringstream out;
    if (rec.method == "lb0" || rec.method == "lb1" || rec.method == "lb2" ||
        rec.method == "lb3") {
        std::string label = rec.method;
        std::transform(label.begin(), label.end(), label.begin(), ::toupper);
        out << label << " = " << (rec.value ? std::to_string(*rec.value) : "?");
        if (rec.status == Status::Budget) out << " (unproven)";
        return out.str();
    }
    switch (rec.status) {
        case Status::Optimal:
            out << "optimal " << *rec.value;
            break;
        case Status::Feasible:
            out << "feasible " << *rec.value << " bins";
            break;
        case Status::Infeasible:
            out << "infeasible";
            break;
        case Status::Budget:
            out << "budget exhausted";
            if (rec.value) out << ": best " << *rec.value;
            if (rec.lower_bound) out << ", lower bound " << *rec.lower_bound;
            break;
    }
    return out.str();
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

GeneratorParams benchmark_params(int cls, int index, std::uint64_t base_seed) {
    GeneratorParams p = class_params(cls);
    p.raw_step_count = class_raw_horizon(cls, index);
    p.seed = splitmix64(base_seed * 1000003ULL + static_cast<std::uint64_t>(cls) * 101ULL +
                        static_cast<std::uint64_t>(index));
    return p;
}

Instance benchmark_instance(int cls, int index, int target_steps, std::uint64_t base_seed) {
    return generate_instance(benchmark_params(cls, index, base_seed), target_steps,
                             benchmark_name(cls, index, target_steps));
}

std::string benchmark_name(int cls, int index, int target_steps) {
    return std::string(class_name(cls)) + "_" + std::to_string(index) + "_" +
           std::to_string(target_steps);
}

std::vector<ProfilePoint> performance_profile(const std::vector<RunRecord>& records,
                                              bool by_nodes) {
    std::map<std::string, std::map<std::string, const RunRecord*>> by_method;
    std::set<std::string> instances;
    for (const RunRecord& r : records) {
        by_method[r.method][r.instance] = &r;
        instances.insert(r.instance);
    }
    if (by_method.size() < 2)
        throw std::runtime_error("performance profile needs at least two methods");

    std::string asymmetry;
    for (const auto& [method, runs] : by_method)
        for (const std::string& key : instances)
            if (!runs.count(key)) asymmetry += " " + method + ":" + key;
    if (!asymmetry.empty())
        throw std::runtime_error("instance sets differ between methods; missing:" + asymmetry);

    auto basis = [&](const RunRecord& r) {
        return by_nodes ? std::max(1.0, static_cast<double>(r.nodes))
                        : std::max(1e-6, r.time_ms);
    };

    const double total = static_cast<double>(instances.size());
    std::vector<ProfilePoint> points;
    for (const auto& [method, runs] : by_method) {
        std::vector<double> taus;
        for (const std::string& key : instances) {
            const RunRecord* mine = runs.at(key);
            if (mine->status != Status::Optimal) continue;
            double best = basis(*mine);
            for (const auto& [other, other_runs] : by_method) {
                const RunRecord* r = other_runs.at(key);
                if (r->status == Status::Optimal) best = std::min(best, basis(*r));
            }
            taus.push_back(basis(*mine) / best);
        }
        std::sort(taus.begin(), taus.end());
        for (std::size_t k = 0; k < taus.size(); ++k)
            points.push_back({method, taus[k], static_cast<double>(k + 1) / total});
    }
    return points;
}

std::string profile_csv(const std::vector<ProfilePoint>& points) {
    std::ostringstream out;
    out << "method,tau,fraction\n";
    for (const ProfilePoint& p : points)
        out << p.method << ',' << fmt_double(p.tau) << ',' << fmt_double(p.fraction) << '\n';
    return out.str();
}

}  // namespace tbpp
