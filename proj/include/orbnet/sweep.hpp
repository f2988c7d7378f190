#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace orbnet {

// One CSV cell. Empty means "undefined" (e.g. lambda when nu = 0).
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;
using Row = std::vector<Cell>;

std::string to_string(const Cell& cell);  // shortest round-trip form for doubles

struct SweepResult {
    std::string experiment;
    std::vector<std::string> axes;      // parameter columns, first in every row
    std::vector<std::string> outcomes;  // outcome columns
    std::vector<Row> rows;              // sorted by the parameter cells
    std::vector<std::pair<std::string, std::string>> provenance;

    std::vector<std::string> columns() const;
    void sort_rows();
    // Column lookup; throws DomainError for an unknown name.
    std::size_t column(const std::string& name) const;
    const Cell& at(std::size_t row, const std::string& name) const { return rows.at(row).at(column(name)); }

    friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

// Numeric view of a cell; throws DomainError for empty or text cells.
double as_double(const Cell& cell);
std::int64_t as_int(const Cell& cell);

// A sweep is a list of parameter tuples and a pure function from a tuple to
// its outcome cells.
struct SweepPlan {
    std::string experiment;
    std::vector<std::string> axes;
    std::vector<std::string> outcomes;
    std::vector<std::pair<std::string, std::string>> provenance;
    std::vector<Row> tasks;
    std::function<Row(const Row& params)> evaluate;
};

struct RunOptions {
    unsigned jobs = 1;
    // When set, finished rows are flushed there every checkpoint_every rows
    // and a matching file found at start is resumed from. Removed on success.
    std::optional<std::filesystem::path> checkpoint;
    std::size_t checkpoint_every = 64;
};

// Evaluates every task; output is independent of jobs and of resumption.
SweepResult run_sweep(const SweepPlan& plan, const RunOptions& options = {});

// Version string stamped into provenance.
const char* version_string();

}  // namespace orbnet
