#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tbpp/bnp.hpp"
#include "tbpp/generator.hpp"

namespace tbpp {

/// One benchmark run, one CSV row. Fields a method does not produce stay
/// empty in the CSV.
struct RunRecord {
    std::string instance;
    std::string cls;  // "I".."X" when the name encodes it
    int steps = 0;    // reduced step count
    int items = 0;
    std::string method;
    Status status = Status::Optimal;
    std::optional<int> value;
    std::optional<int> lower_bound;
    std::optional<double> root_lp;
    long long nodes = 0;
    long long columns = 0;
    std::optional<int> lb0, lb1, lb2, lb3;
    std::optional<int> ub_greedy, ub_rolling, ub_dive;
    double bounds_ms = 0.0, heuristics_ms = 0.0, root_ms = 0.0, dive_ms = 0.0, tree_ms = 0.0;
    double time_ms = 0.0;
};

extern const char* const kRunCsvHeader;
std::string to_csv_row(const RunRecord& rec);
std::vector<RunRecord> read_run_csv(std::istream& in);

/// Dispatches one method name (lb0, lb1, lb2, lb3, greedy, rolling, dive,
/// compact, bnp, auto) on an instance.
RunRecord run_method(const Instance& inst, const std::string& method,
                     const SolveConfig& config);

/// Human-oriented one-liner for a finished run.
std::string summarize(const RunRecord& rec);

/// Deterministic benchmark instances: Table-style class parameters, raw
/// horizon from the class formula, a per-(class, index) seed derived from
/// base_seed.
GeneratorParams benchmark_params(int cls, int index, std::uint64_t base_seed);
Instance benchmark_instance(int cls, int index, int target_steps, std::uint64_t base_seed);
std::string benchmark_name(int cls, int index, int target_steps);

struct ProfilePoint {
    std::string method;
    double tau = 1.0;
    double fraction = 0.0;
};

/// Normalized-time profile: per instance, tau is the run's cost over the
/// fastest solved run; each method's curve is the fraction of instances it
/// solved within tau times the best. Unsolved runs contribute no point.
/// Throws when the methods do not cover a common instance set.
std::vector<ProfilePoint> performance_profile(const std::vector<RunRecord>& records,
                                              bool by_nodes = false);

std::string profile_csv(const std::vector<ProfilePoint>& points);

}  // namespace tbpp
