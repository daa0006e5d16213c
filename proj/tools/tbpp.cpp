#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "tbpp/harness.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<int> parse_classes(const std::string& spec) {
    std::vector<int> out;
    if (spec == "all") {
        for (int c = 1; c <= 10; ++c) out.push_back(c);
        return out;
    }
    std::stringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) out.push_back(tbpp::class_from_name(token));
    return out;
}

int worker_cap() {
    if (const char* env = std::getenv("TBPP_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

void append_csv(const std::string& path, const std::vector<tbpp::RunRecord>& records) {
    const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    if (fresh) out << tbpp::kRunCsvHeader << "\n";
    for (const tbpp::RunRecord& r : records) out << tbpp::to_csv_row(r) << "\n";
}

tbpp::SolveConfig make_config(int delta, int tokens, long long node_budget) {
    tbpp::SolveConfig config;
    config.rolling.window = delta;
    config.dive.tokens = tokens;
    if (node_budget > 0) {
        config.tree_budget.max_nodes = node_budget;
        config.compact_budget.max_nodes = node_budget;
    }
    return config;
}

int cmd_generate(const std::string& classes, std::uint64_t seed, std::vector<int> steps,
                 int count, const std::string& out_dir) {
    fs::create_directories(out_dir);
    int written = 0;
    for (int cls : parse_classes(classes)) {
        for (int i = 1; i <= count; ++i) {
            const tbpp::GeneratorParams params = tbpp::benchmark_params(cls, i, seed);
            const tbpp::RawSchedule schedule = tbpp::generate_raw_schedule(params);
            for (int target : steps) {
                const std::string name = tbpp::benchmark_name(cls, i, target);
                tbpp::Instance inst =
                    tbpp::truncate_schedule(schedule, params, target, name);
                const fs::path path = fs::path(out_dir) / (name + ".tbpp");
                try {
                    tbpp::write_instance_file(inst, path);
                } catch (const std::exception& e) {
                    std::cerr << "error: " << e.what() << "\n";
                    return 1;
                }
                ++written;
            }
        }
    }
    std::cout << "wrote " << written << " instances to " << out_dir << "\n";
    return 0;
}

int cmd_solve(const std::string& path, const std::string& method, int delta, int tokens,
              long long node_budget, const std::string& out_csv) {
    tbpp::Instance inst;
    try {
        inst = tbpp::read_instance_file(path);
        inst.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << path << ": " << e.what() << "\n";
        return 1;
    }
    const tbpp::RunRecord rec =
        tbpp::run_method(inst, method, make_config(delta, tokens, node_budget));
    std::cout << rec.instance << ": " << tbpp::summarize(rec) << "\n";
    if (!out_csv.empty()) append_csv(out_csv, {rec});
    return rec.status == tbpp::Status::Budget ? 2 : 0;
}

int cmd_bench(const std::string& classes, std::vector<int> steps, int count,
              std::uint64_t seed, const std::string& methods_spec, int delta, int tokens,
              long long node_budget, const std::string& out_csv, int jobs) {
    std::vector<std::string> methods;
    {
        std::stringstream ss(methods_spec);
        std::string token;
        while (std::getline(ss, token, ',')) methods.push_back(token);
    }

    struct Job {
        tbpp::Instance inst;
        std::string method;
    };
    std::vector<Job> queue;
    for (int cls : parse_classes(classes))
        for (int i = 1; i <= count; ++i)
            for (int target : steps) {
                tbpp::Instance inst = tbpp::benchmark_instance(cls, i, target, seed);
                for (const std::string& m : methods) queue.push_back({inst, m});
            }

    const tbpp::SolveConfig config = make_config(delta, tokens, node_budget);
    std::vector<tbpp::RunRecord> results(queue.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t k = next.fetch_add(1);
            if (k >= queue.size()) break;
            results[k] = tbpp::run_method(queue[k].inst, queue[k].method, config);
            std::lock_guard<std::mutex> lock(log_mutex);
            std::cout << results[k].instance << " " << results[k].method << ": "
                      << tbpp::summarize(results[k]) << "\n";
        }
    };
    const int threads = std::min<int>(std::min<int>(jobs, worker_cap()),
                                      static_cast<int>(queue.size()) > 0
                                          ? static_cast<int>(queue.size())
                                          : 1);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    append_csv(out_csv, results);
    std::cout << "wrote " << results.size() << " rows to " << out_csv << "\n";
    return 0;
}

int cmd_profile(const std::vector<std::string>& files, const std::string& key,
                const std::string& out_csv) {
    std::vector<tbpp::RunRecord> records;
    for (const std::string& f : files) {
        std::ifstream in(f);
        if (!in) {
            std::cerr << "error: cannot open " << f << "\n";
            return 1;
        }
        auto part = tbpp::read_run_csv(in);
        records.insert(records.end(), part.begin(), part.end());
    }
    std::vector<tbpp::ProfilePoint> points;
    try {
        points = tbpp::performance_profile(records, key == "nodes");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    const std::string csv = tbpp::profile_csv(points);
    if (out_csv.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_csv);
        out << csv;
        std::cout << "wrote profile to " << out_csv << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temporal bin packing solver suite"};
    app.require_subcommand(1);

    // generate
    std::string gen_classes = "all", gen_out = "instances";
    std::uint64_t gen_seed = 1;
    std::vector<int> gen_steps = {5, 10};
    int gen_count = 10;
    auto* gen = app.add_subcommand("generate", "Write benchmark instance files");
    gen->add_option("--class", gen_classes, "Class name I..X or 'all'");
    gen->add_option("--seed", gen_seed, "Base seed");
    gen->add_option("--steps", gen_steps, "Target step counts")->delimiter(',');
    gen->add_option("--count", gen_count, "Instances per class");
    gen->add_option("--out", gen_out, "Output directory")->required();

    // solve
    std::string solve_path, solve_method = "auto", solve_out;
    int solve_delta = 30, solve_tokens = 1;
    long long solve_budget = 0;
    auto* solve = app.add_subcommand("solve", "Run one method on one instance");
    solve->add_option("instance", solve_path, "Instance file")->required();
    solve->add_option("--method", solve_method,
                      "lb0|lb1|lb2|lb3|greedy|rolling|dive|compact|bnp|auto");
    solve->add_option("--delta", solve_delta, "Rolling horizon window");
    solve->add_option("--tokens", solve_tokens, "Diving tokens");
    solve->add_option("--node-budget", solve_budget, "Search node budget (0: default)");
    solve->add_option("--out", solve_out, "Append the run record to this CSV");

    // bench
    std::string bench_classes = "all", bench_methods = "compact,bnp", bench_out = "results.csv";
    std::vector<int> bench_steps = {5, 10};
    int bench_count = 3, bench_jobs = 1, bench_delta = 30, bench_tokens = 1;
    std::uint64_t bench_seed = 1;
    long long bench_budget = 0;
    auto* bench = app.add_subcommand("bench", "Generate and solve a benchmark suite");
    bench->add_option("--classes", bench_classes, "Comma list of classes or 'all'");
    bench->add_option("--steps", bench_steps, "Target step counts")->delimiter(',');
    bench->add_option("--count", bench_count, "Seeded instances per class");
    bench->add_option("--seed", bench_seed, "Base seed");
    bench->add_option("--methods", bench_methods, "Comma list of methods");
    bench->add_option("--delta", bench_delta, "Rolling horizon window");
    bench->add_option("--tokens", bench_tokens, "Diving tokens");
    bench->add_option("--node-budget", bench_budget, "Search node budget (0: default)");
    bench->add_option("--out", bench_out, "Results CSV path");
    bench->add_option("--jobs", bench_jobs, "Worker threads (capped by TBPP_THREADS)");

    // profile
    std::vector<std::string> profile_files;
    std::string profile_key = "time", profile_out;
    auto* profile = app.add_subcommand("profile", "Performance profile from result CSVs");
    profile->add_option("files", profile_files, "Result CSV files")->required();
    profile->add_option("--key", profile_key, "time|nodes");
    profile->add_option("--out", profile_out, "Profile CSV path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_generate(gen_classes, gen_seed, gen_steps, gen_count, gen_out);
        if (solve->parsed())
            return cmd_solve(solve_path, solve_method, solve_delta, solve_tokens, solve_budget,
                             solve_out);
        if (bench->parsed())
            return cmd_bench(bench_classes, bench_steps, bench_count, bench_seed, bench_methods,
                             bench_delta, bench_tokens, bench_budget, bench_out, bench_jobs);
        if (profile->parsed())
            return cmd_profile(profile_files, profile_key, profile_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
