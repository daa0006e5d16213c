#include "tbpp/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tbpp {

void Instance::sort_by_start() {
    std::stable_sort(items.begin(), items.end(),
                     [](const Item& a, const Item& b) { return a.start < b.start; });
}

void Instance::validate() const {
    if (capacity < 1 && !items.empty())
        throw std::invalid_argument("capacity must be positive");
    long long prev_start = 0;
    bool first = true;
    for (std::size_t j = 0; j < items.size(); ++j) {
        const Item& it = items[j];
        const std::string tag = "item " + std::to_string(j + 1) + ": ";
        if (it.weight < 1) throw std::invalid_argument(tag + "weight must be >= 1");
        if (it.weight > capacity) throw std::invalid_argument(tag + "weight exceeds capacity");
        if (it.start < 0) throw std::invalid_argument(tag + "start must be >= 0");
        if (it.start >= it.end) throw std::invalid_argument(tag + "start must precede end");
        if (!first && it.start < prev_start)
            throw std::invalid_argument(tag + "items not sorted by start time");
        prev_start = it.start;
        first = false;
    }
}

namespace {

bool data_line(const std::string& line, std::istringstream& fields) {
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') return false;
    fields.clear();
    fields.str(line);
    return true;
}

}  // namespace

Instance read_instance(std::istream& in, std::string name) {
    Instance inst;
    inst.name = std::move(name);
    std::string line;
    std::istringstream fields;
    int lineno = 0;

    long long n = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!data_line(line, fields)) continue;
        long long cap = 0;
        if (!(fields >> n >> cap) || n < 0 || cap < 1)
            throw ParseError(lineno, "expected header \"n W\" with n >= 0, W >= 1");
        inst.capacity = static_cast<int>(cap);
        break;
    }
    if (n < 0) throw ParseError(lineno, "missing header line \"n W\"");

    long long parsed = 0;
    while (parsed < n && std::getline(in, line)) {
        ++lineno;
        if (!data_line(line, fields)) continue;
        long long w = 0, s = 0, t = 0;
        if (!(fields >> w >> s >> t))
            throw ParseError(lineno, "expected item line \"w s t\"");
        if (w < 1) throw ParseError(lineno, "item weight must be >= 1");
        if (w > inst.capacity) throw ParseError(lineno, "item weight exceeds capacity");
        if (s < 0) throw ParseError(lineno, "start time must be >= 0");
        if (s >= t) throw ParseError(lineno, "start time must precede end time");
        inst.items.push_back({static_cast<int>(w), s, t});
        ++parsed;
    }
    if (parsed < n)
        throw ParseError(lineno, "expected " + std::to_string(n) + " items, found " +
                                     std::to_string(parsed));
    inst.sort_by_start();
    return inst;
}

Instance read_instance_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path.string());
    Instance inst = read_instance(in, path.stem().string());
    return inst;
}

void write_instance(const Instance& inst, std::ostream& out) {
    if (!inst.name.empty()) out << "# " << inst.name << "\n";
    out << inst.items.size() << " " << inst.capacity << "\n";
    for (const Item& it : inst.items)
        out << it.weight << " " << it.start << " " << it.end << "\n";
}

std::string write_instance(const Instance& inst) {
    std::ostringstream out;
    write_instance(inst, out);
    return out.str();
}

void write_instance_file(const Instance& inst, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file: " + path.string());
    write_instance(inst, out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace tbpp
