#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace tbpp {

/// An item occupies `weight` units of bin capacity over the half-open
/// time window [start, end).
struct Item {
    int weight = 0;
    long long start = 0;
    long long end = 0;
};

/// A temporal bin packing instance: items with time windows and a single
/// bin capacity. Items are kept sorted by non-decreasing start time.
struct Instance {
    std::vector<Item> items;
    int capacity = 0;
    std::string name;

    int size() const { return static_cast<int>(items.size()); }

    void sort_by_start();

    /// Throws std::invalid_argument on the first violated invariant
    /// (weight range, window orientation, sort order).
    void validate() const;
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Text format: first data line "n W", then n lines "w s t".
// '#' starts a comment line, blank lines are skipped.
Instance read_instance(std::istream& in, std::string name = "");
Instance read_instance_file(const std::filesystem::path& path);
void write_instance(const Instance& inst, std::ostream& out);
std::string write_instance(const Instance& inst);
void write_instance_file(const Instance& inst, const std::filesystem::path& path);

}  // namespace tbpp
