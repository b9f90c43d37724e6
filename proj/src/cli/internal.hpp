#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace entcost::cli {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    // A row with a single string cell and `warning` set is emitted as a comment.
    struct Row {
        std::vector<Cell> cells;
        bool warning = false;
    };
    std::vector<Row> rows;

    void add(std::vector<Cell> cells);
    void warn(std::string message);
};

std::string format_double(double v);
void write_csv(const Table &t, std::ostream &os);
void write_json(const Table &t, std::ostream &os);

// "a,b,c" or "lo:hi:n" (n evenly spaced points, both ends included).
std::vector<double> parse_grid(const std::string &text, const std::string &name);

struct VerifyOptions {
    int fermion_modes = 4;
    int instances = 5;
    int cutoff = 40;
    std::uint64_t seed = 1;
    bool inject_wick_parity_fault = false;
};
// One row per check: check, margin, tolerance, passed.
Table run_verify(const VerifyOptions &options, bool &all_passed);

}  // namespace entcost::cli
