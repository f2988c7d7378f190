#include "orbnet/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <map>

#include "orbnet/errors.hpp"
#include "orbnet/formats.hpp"
#include "orbnet/parallel.hpp"

namespace orbnet {

unsigned default_jobs() {
    if (const char* env = std::getenv("ORBNET_JOBS")) {
        unsigned v = 0;
        const std::string_view s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc{} && ptr == s.data() + s.size() && v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

const char* version_string() { return "orbnet 0.1.0"; }

std::string to_string(const Cell& cell) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const {
            char buf[64];
            auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
            return std::string(buf, ptr);
        }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, cell);
}

double as_double(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
    if (const auto* d = std::get_if<double>(&cell)) return *d;
    throw DomainError("cell '" + to_string(cell) + "' is not numeric");
}

std::int64_t as_int(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
    throw DomainError("cell '" + to_string(cell) + "' is not an integer");
}

std::vector<std::string> SweepResult::columns() const {
    std::vector<std::string> out = axes;
    out.insert(out.end(), outcomes.begin(), outcomes.end());
    return out;
}

void SweepResult::sort_rows() {
    const std::size_t k = axes.size();
    std::stable_sort(rows.begin(), rows.end(), [k](const Row& a, const Row& b) {
        return std::lexicographical_compare(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k), b.begin(),
                                            b.begin() + static_cast<std::ptrdiff_t>(k));
    });
}

std::size_t SweepResult::column(const std::string& name) const {
    const auto cols = columns();
    const auto it = std::find(cols.begin(), cols.end(), name);
    if (it == cols.end()) throw DomainError("no column '" + name + "' in " + experiment);
    return static_cast<std::size_t>(it - cols.begin());
}

namespace {

// Parameter tuples compared by their text form, which survives a CSV round trip.
std::string key_of(const Row& params, std::size_t k) {
    std::string key;
    for (std::size_t i = 0; i < k; ++i) {
        key += csv_escape(params[i]);
        key += '\x1f';
    }
    return key;
}

SweepResult skeleton(const SweepPlan& plan) {
    SweepResult r;
    r.experiment = plan.experiment;
    r.axes = plan.axes;
    r.outcomes = plan.outcomes;
    r.provenance = plan.provenance;
    return r;
}

}  // namespace

SweepResult run_sweep(const SweepPlan& plan, const RunOptions& options) {
    const std::size_t k = plan.axes.size();
    for (const Row& t : plan.tasks)
        if (t.size() != k) throw DomainError("sweep task has wrong number of parameters");

    std::map<std::string, Row> done;
    if (options.checkpoint && std::filesystem::exists(*options.checkpoint)) {
        SweepResult partial;
        bool usable = true;
        try {
            partial = read_sweep_csv(*options.checkpoint);
        } catch (const Error&) {
            usable = false;
        }
        const SweepResult expect = skeleton(plan);
        if (usable && partial.experiment == expect.experiment && partial.axes == expect.axes &&
            partial.outcomes == expect.outcomes && partial.provenance == expect.provenance) {
            for (auto& row : partial.rows) done.emplace(key_of(row, k), std::move(row));
        }
    }

    std::vector<std::size_t> pending;
    std::vector<Row> rows(plan.tasks.size());
    for (std::size_t i = 0; i < plan.tasks.size(); ++i) {
        if (const auto it = done.find(key_of(plan.tasks[i], k)); it != done.end()) {
            rows[i] = it->second;
        } else {
            pending.push_back(i);
        }
    }

    auto evaluate = [&](std::size_t task) {
        Row outcome = plan.evaluate(plan.tasks[task]);
        if (outcome.size() != plan.outcomes.size()) throw DomainError("sweep outcome has wrong number of cells");
        Row row = plan.tasks[task];
        row.insert(row.end(), std::make_move_iterator(outcome.begin()), std::make_move_iterator(outcome.end()));
        rows[task] = std::move(row);
    };
    auto collect = [&] {
        SweepResult r = skeleton(plan);
        for (const Row& row : rows)
            if (!row.empty()) r.rows.push_back(row);  // unfinished tasks are still empty
        r.sort_rows();
        return r;
    };

    const std::size_t chunk = options.checkpoint ? std::max<std::size_t>(1, options.checkpoint_every) : pending.size();
    for (std::size_t start = 0; start < pending.size(); start += chunk) {
        const std::size_t count = std::min(chunk, pending.size() - start);
        parallel_for(count, options.jobs, [&](std::size_t i) { evaluate(pending[start + i]); });
        if (options.checkpoint && start + count < pending.size()) write_sweep_csv(collect(), *options.checkpoint);
    }
    SweepResult result = collect();
    if (options.checkpoint) std::filesystem::remove(*options.checkpoint);
    return result;
}

}  // namespace orbnet
