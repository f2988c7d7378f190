#include "orbnet/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "orbnet/baselines.hpp"
#include "orbnet/experiments.hpp"
#include "orbnet/formats.hpp"
#include "orbnet/orbital.hpp"
#include "orbnet/parallel.hpp"
#include "orbnet/rng.hpp"

namespace orbnet::cli {
namespace {

using json = nlohmann::ordered_json;

// A flag value that does not parse; reported with exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class F>
auto as_usage(const std::string& flag, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError& e) {
        throw UsageError(flag + ": " + e.what());
    } catch (const DomainError& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

std::uint64_t parse_u64(std::string_view s, const std::string& flag) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw UsageError(flag + ": '" + std::string(s) + "' is not a non-negative integer");
    return v;
}

double parse_real(std::string_view s, const std::string& flag) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw UsageError(flag + ": '" + std::string(s) + "' is not a number");
    return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto end = std::min(s.find(sep, start), s.size());
        std::string part(s.substr(start, end - start));
        part.erase(0, part.find_first_not_of(" \t"));
        part.erase(part.find_last_not_of(" \t") + 1);
        if (!part.empty()) out.push_back(part);
        start = end + 1;
    }
    return out;
}

// "131", "2,4,9", "2..100", "10..1000:10" and comma-separated mixtures.
std::vector<std::uint32_t> parse_int_list(const std::string& text, const std::string& flag) {
    std::vector<std::uint32_t> out;
    for (const auto& part : split(text, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string::npos) {
            out.push_back(static_cast<std::uint32_t>(parse_u64(part, flag)));
            continue;
        }
        std::string hi_text = part.substr(dots + 2);
        std::uint64_t step = 1;
        if (const auto colon = hi_text.find(':'); colon != std::string::npos) {
            step = parse_u64(std::string_view(hi_text).substr(colon + 1), flag);
            hi_text.resize(colon);
        }
        const auto lo = parse_u64(std::string_view(part).substr(0, dots), flag);
        const auto hi = parse_u64(hi_text, flag);
        if (step == 0 || hi < lo) throw UsageError(flag + ": bad range '" + part + "'");
        for (std::uint64_t v = lo; v <= hi; v += step) out.push_back(static_cast<std::uint32_t>(v));
    }
    if (out.empty()) throw UsageError(flag + ": empty list");
    return out;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_real(part, flag));
    if (out.empty()) throw UsageError(flag + ": empty list");
    return out;
}

std::vector<Residue> parse_shifts(const std::string& text) {
    std::vector<Residue> out;
    for (const auto& part : split(text, ',')) out.push_back(parse_u64(part, "--shifts"));
    if (out.empty()) throw UsageError("--shifts: empty list");
    return out;
}

// Options shared by everything that computes StatsRecords.
struct StatsFlags {
    std::string scope = "all";
    std::string lambda_from = "global";
    std::string low_degree = "zero";
    bool no_topology = false;

    void attach(CLI::App* app) {
        app->add_option("--scope", scope, "Vertices entering mu")->check(CLI::IsMember({"all", "largest"}));
        app->add_option("--lambda-from", lambda_from, "Clustering used for lambda")
            ->check(CLI::IsMember({"global", "mean"}));
        app->add_option("--low-degree", low_degree, "Degree<2 vertices in nu_mean")
            ->check(CLI::IsMember({"zero", "exclude"}));
        app->add_flag("--no-topology", no_topology, "Skip cliques, chi, curvature and dimension");
    }

    StatsOptions options() const {
        StatsOptions o;
        o.scope = scope == "all" ? PathLengthScope::AllVertices : PathLengthScope::LargestComponent;
        o.lambda_from = lambda_from == "global" ? ClusteringConvention::Global : ClusteringConvention::MeanLocal;
        o.low_degree = low_degree == "zero" ? LowDegreePolicy::CountAsZero : LowDegreePolicy::Exclude;
        o.topology = !no_topology;
        return o;
    }
};

Graph graph_from_flags(std::uint64_t n, const std::string& maps) {
    if (n == 0) throw UsageError("--n must be positive");
    const Modulus m(n);
    const auto specs = as_usage("--maps", [&] { return parse_map_list(maps, m); });
    return build_orbital_graph(m, specs);
}

template <class F>
void write_text(const std::string& path, std::ostream& out, F&& body) {
    if (path.empty() || path == "-") {
        body(out);
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    body(file);
    if (!file) throw IoError("write to '" + path + "' failed");
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    write_text(path.string(), std::cout, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
}

// --- reproduce -------------------------------------------------------------------

struct Figure {
    std::string file;
    std::uint64_t n;
    std::string maps;
};

void reproduce_graphs(const std::vector<Figure>& figures, const std::filesystem::path& dir,
                      const StatsOptions& opts, std::ostream& out) {
    for (const auto& f : figures) {
        const Graph g = graph_from_flags(f.n, f.maps);
        write_json_file(dir / (f.file + ".json"), stats_to_json(compute_stats(g, opts)));
        save_edge_list(g, dir / (f.file + ".edges"));
        export_dot(g, dir / (f.file + ".dot"));
        out << (dir / (f.file + ".json")).string() << '\n';
    }
}

const std::vector<std::string> kBaselineModels = {"er(1001,0.0098)", "ws(1001,8,0.2)", "ba(1001,4)", "perm(1001,2)"};

SweepPlan baseline_plan(std::uint64_t seeds, std::uint64_t seed0) {
    SweepPlan plan;
    plan.experiment = "baselines";
    plan.axes = {"model", "seed"};
    plan.outcomes = stats_columns();
    plan.provenance = {{"version", version_string()}, {"seed", std::to_string(seed0)}};
    for (const auto& m : kBaselineModels)
        for (std::uint64_t i = 0; i < seeds; ++i)
            plan.tasks.push_back({m, static_cast<std::int64_t>(seed0 + i)});  // rerun with baseline --seed
    plan.evaluate = [](const Row& params) -> Row {
        StatsOptions o;
        o.topology = false;
        const BaselineSpec spec{parse_baseline_model(std::get<std::string>(params[0])),
                                static_cast<std::uint64_t>(as_int(params[1]))};
        return stats_cells(compute_stats(generate_baseline(spec), o));
    };
    return plan;
}

// Per-model means of a baseline sweep.
SweepResult baseline_summary(const SweepResult& runs) {
    SweepResult s;
    s.experiment = "baselines_summary";
    s.axes = {"model"};
    const std::vector<std::string> metrics = {"avg_degree", "mu", "nu_mean", "nu_global", "lambda", "diameter"};
    for (const auto& m : metrics) s.outcomes.push_back("mean_" + m);
    s.outcomes.push_back("seeds");
    s.outcomes.push_back("lambda_undefined");
    s.provenance = runs.provenance;
    for (const auto& model : kBaselineModels) {
        std::vector<double> sum(metrics.size(), 0);
        std::vector<std::int64_t> count(metrics.size(), 0);
        std::int64_t seeds = 0;
        for (std::size_t r = 0; r < runs.rows.size(); ++r) {
            if (std::get<std::string>(runs.at(r, "model")) != model) continue;
            ++seeds;
            for (std::size_t k = 0; k < metrics.size(); ++k) {
                const Cell& c = runs.at(r, metrics[k]);
                if (std::holds_alternative<std::monostate>(c)) continue;
                sum[k] += as_double(c);
                ++count[k];
            }
        }
        Row row = {model};
        for (std::size_t k = 0; k < metrics.size(); ++k)
            row.push_back(count[k] ? Cell{sum[k] / static_cast<double>(count[k])} : Cell{});
        row.push_back(seeds);
        row.push_back(seeds - count[4]);
        s.rows.push_back(std::move(row));
    }
    s.sort_rows();
    return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Orbital networks: arithmetic graphs on Z_n, their metrics and experiments", "orbnet"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version_string());

    StatsFlags stats_flags;
    unsigned jobs = default_jobs();

    // generate
    auto* gen = app.add_subcommand("generate", "Build an orbital network and write its edge list");
    std::uint64_t gen_n = 0;
    std::string gen_maps, gen_out, gen_dot;
    gen->add_option("--n", gen_n, "Modulus")->required();
    gen->add_option("--maps", gen_maps, "Map list, e.g. \"x^2+1;x^2+2\"")->required();
    gen->add_option("--out", gen_out, "Edge list path (default stdout)");
    gen->add_option("--dot", gen_dot, "Also write a DOT file");

    // stats
    auto* st = app.add_subcommand("stats", "Statistics of a graph as JSON");
    std::string st_in, st_maps;
    std::uint64_t st_n = 0;
    auto* st_in_opt = st->add_option("--in", st_in, "Edge list file");
    auto* st_n_opt = st->add_option("--n", st_n, "Modulus");
    auto* st_maps_opt = st->add_option("--maps", st_maps, "Map list");
    st_in_opt->excludes(st_n_opt)->excludes(st_maps_opt);
    st_n_opt->needs(st_maps_opt);
    st_maps_opt->needs(st_n_opt);
    stats_flags.attach(st);

    // sweep
    auto* sw = app.add_subcommand("sweep", "Run a named experiment and write CSV");
    std::string sw_name, sw_out, sw_n, sw_alpha, sw_family = "perm";
    unsigned sw_d = 2;
    std::uint64_t sw_seed = 0, sw_samples = 100, sw_pmax = 0, sw_checkpoint_every = 64;
    bool sw_exhaustive = false, sw_ordered = false, sw_composite = false;
    sw->add_option("--experiment", sw_name, "Experiment name")
        ->required()
        ->check(CLI::IsMember({"connectivity", "min_diameter", "lcc", "clustering_decay", "average_degree",
                               "squaring", "alpha", "collatz", "baselines"}));
    sw->add_option("--out", sw_out, "CSV path (default stdout)");
    sw->add_option("--n", sw_n, "Moduli: 131 | 2,4,9 | 2..100[:step]");
    sw->add_option("--d", sw_d, "Generator count");
    sw->add_option("--p-max", sw_pmax, "connectivity: largest prime");
    sw->add_option("--alpha", sw_alpha, "alpha: exponents, comma separated");
    sw->add_option("--samples", sw_samples, "Samples per row (lcc, clustering_decay) or seeds (baselines)");
    sw->add_option("--family", sw_family, "lcc family")->check(CLI::IsMember({"perm", "quadratic"}));
    sw->add_flag("--exhaustive", sw_exhaustive, "lcc: enumerate every quadratic tuple");
    sw->add_flag("--ordered", sw_ordered, "connectivity: ordered tuples with repetition");
    sw->add_flag("--composite", sw_composite, "connectivity: allow composite moduli");
    sw->add_option("--seed", sw_seed, "Seed");
    sw->add_option("--checkpoint-every", sw_checkpoint_every, "Rows between checkpoints of <out>.partial");
    sw->add_option("--jobs", jobs, "Worker threads (default ORBNET_JOBS or all cores)");

    // baseline
    auto* bl = app.add_subcommand("baseline", "Generate a random comparison graph; prints its statistics");
    std::string bl_spec, bl_out;
    std::uint64_t bl_seed = 0;
    bl->add_option("--spec", bl_spec, "er(n,p) | ws(n,k,p) | ba(n,k) | perm(n,d)")->required();
    bl->add_option("--seed", bl_seed, "Seed");
    bl->add_option("--out", bl_out, "Also write the edge list");
    stats_flags.attach(bl);

    // matrix
    auto* mx = app.add_subcommand("matrix", "Component counts A_ab for {x^2+a, x^2+b}");
    std::uint32_t mx_n = 0, mx_limit = kDefaultMatrixLimit;
    std::string mx_out;
    mx->add_option("--n", mx_n, "Modulus")->required();
    mx->add_option("--out", mx_out, "CSV path (default stdout)");
    mx->add_option("--limit", mx_limit, "Largest n accepted");
    mx->add_option("--jobs", jobs, "Worker threads");

    // check
    auto* ck = app.add_subcommand("check", "Verify a parity proposition for one shift tuple");
    int ck_prop = 1;
    std::uint32_t ck_n = 0;
    std::string ck_shifts;
    std::uint64_t ck_budget = kDefaultIsoBudget;
    ck->add_option("--proposition", ck_prop, "1: even shifts (symmetry), 2: odd shifts (bipartite)")
        ->required()
        ->check(CLI::IsMember({1, 2}));
    ck->add_option("--n", ck_n, "Even modulus")->required();
    ck->add_option("--shifts", ck_shifts, "Shifts, comma separated")->required();
    ck->add_option("--budget", ck_budget, "Isomorphism search node budget");

    // reproduce
    auto* rp = app.add_subcommand("reproduce", "Regenerate the data behind a figure");
    std::string rp_fig, rp_out;
    std::uint64_t rp_seeds = 50, rp_samples = 100, rp_seed = 0;
    rp->add_option("--figure", rp_fig, "Figure")->required()->check(CLI::IsMember({"fig1", "fig2", "fig7", "fig8"}));
    rp->add_option("--out", rp_out, "Output directory")->required();
    rp->add_option("--seeds", rp_seeds, "fig7: seeds per model");
    rp->add_option("--samples", rp_samples, "fig8: permutation samples per n");
    rp->add_option("--seed", rp_seed, "Seed");
    rp->add_option("--jobs", jobs, "Worker threads");
    stats_flags.attach(rp);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }
    if (jobs == 0) jobs = 1;

    try {
        if (gen->parsed()) {
            const Graph g = graph_from_flags(gen_n, gen_maps);
            if (gen_out.empty()) {
                write_edge_list(g, out);
            } else {
                save_edge_list(g, gen_out);
            }
            if (!gen_dot.empty()) export_dot(g, gen_dot);
        } else if (st->parsed()) {
            Graph g;
            if (!st_in.empty()) {
                const auto loaded = load_edge_list(st_in);
                if (loaded.info.self_loops || loaded.info.duplicates)
                    err << "warning: dropped " << loaded.info.self_loops << " self-loops and " << loaded.info.duplicates
                        << " duplicate edges\n";
                if (!loaded.info.original_ids.empty()) err << "warning: sparse vertex ids were compacted\n";
                g = loaded.graph;
            } else if (st_n_opt->count()) {
                g = graph_from_flags(st_n, st_maps);
            } else {
                throw UsageError("stats needs --in or --n with --maps");
            }
            out << stats_to_json(compute_stats(g, stats_flags.options())).dump(2) << '\n';
        } else if (sw->parsed()) {
            SweepPlan plan;
            auto need_n = [&] {
                if (sw_n.empty()) throw UsageError("--n is required for " + sw_name);
                return parse_int_list(sw_n, "--n");
            };
            if (sw_name == "connectivity") {
                if (sw_pmax == 0) throw UsageError("--p-max is required for connectivity");
                std::vector<std::uint32_t> ps;
                for (std::uint64_t p = std::max<std::uint64_t>(2, sw_d); p <= sw_pmax; ++p)
                    if (sw_composite || is_prime(p)) ps.push_back(static_cast<std::uint32_t>(p));
                plan = connectivity_plan(ps, sw_d,
                                         {sw_ordered ? TupleSpace::OrderedWithRepetition : TupleSpace::UnorderedDistinct,
                                          sw_composite});
            } else if (sw_name == "min_diameter") {
                plan = min_diameter_plan(need_n(), sw_d);
            } else if (sw_name == "lcc") {
                LccOptions o;
                o.family = sw_family == "perm" ? LccFamily::RandomPermutations : LccFamily::QuadraticShifts;
                o.d = sw_d;
                o.samples = sw_samples;
                o.seed = sw_seed;
                o.exhaustive = sw_exhaustive;
                plan = lcc_plan(need_n(), o);
            } else if (sw_name == "clustering_decay") {
                plan = clustering_decay_plan(sw_d, need_n(), sw_samples, sw_seed);
            } else if (sw_name == "average_degree") {
                plan = average_degree_plan(need_n());
            } else if (sw_name == "squaring") {
                plan = squaring_plan(need_n());
            } else if (sw_name == "alpha") {
                const auto ns = need_n();
                if (ns.size() != 1) throw UsageError("alpha takes a single --n");
                if (sw_alpha.empty()) throw UsageError("--alpha is required for alpha");
                plan = alpha_plan(ns[0], parse_real_list(sw_alpha, "--alpha"), sw_d);
            } else if (sw_name == "collatz") {
                const auto ns = need_n();
                plan = collatz_plan(*std::max_element(ns.begin(), ns.end()));
            } else if (sw_name == "baselines") {
                plan = baseline_plan(sw_samples, sw_seed);
            }
            RunOptions ro;
            ro.jobs = jobs;
            ro.checkpoint_every = sw_checkpoint_every;
            if (!sw_out.empty()) ro.checkpoint = sw_out + ".partial";
            const SweepResult result = run_sweep(plan, ro);
            if (sw_name == "collatz")
                for (std::size_t i = 0; i < result.rows.size(); ++i)
                    if (as_int(result.at(i, "connected")) != 1)
                        err << "COUNTEREXAMPLE: n = " << to_string(result.at(i, "n")) << " has "
                            << to_string(result.at(i, "components")) << " components\n";
            if (sw_out.empty()) {
                write_sweep_csv(result, out);
            } else {
                write_sweep_csv(result, std::filesystem::path(sw_out));
            }
        } else if (bl->parsed()) {
            const auto model = as_usage("--spec", [&] { return parse_baseline_model(bl_spec); });
            const Graph g = generate_baseline({model, bl_seed});
            if (!bl_out.empty()) save_edge_list(g, bl_out);
            out << stats_to_json(compute_stats(g, stats_flags.options())).dump(2) << '\n';
        } else if (mx->parsed()) {
            const auto result = matrix_sweep(component_matrix(mx_n, mx_limit, jobs));
            if (mx_out.empty()) {
                write_sweep_csv(result, out);
            } else {
                write_sweep_csv(result, std::filesystem::path(mx_out));
            }
        } else if (ck->parsed()) {
            const auto shifts = parse_shifts(ck_shifts);
            json j;
            j["proposition"] = ck_prop;
            j["n"] = ck_n;
            j["shifts"] = shifts;
            if (ck_prop == 1) {
                const auto v = as_usage("--shifts", [&] { return check_symmetry_proposition(ck_n, shifts, ck_budget); });
                j["classes_disconnected"] = v.classes_disconnected;
                j["even_components"] = v.even_components;
                j["odd_components"] = v.odd_components;
                j["shift"] = v.shift ? json(*v.shift) : json(nullptr);
                j["commutes"] = v.commutes;
                j["isomorphic"] = to_string(v.isomorphic);
                j["method"] = v.method;
                j["holds"] = v.holds();
            } else {
                const auto v = as_usage("--shifts", [&] { return check_bipartite_proposition(ck_n, shifts); });
                j["bipartite"] = v.bipartite;
                j["parity_partition"] = v.parity_partition;
                j["triangles"] = v.triangles;
                j["nu_global"] = v.nu_global;
                j["part0_size"] = v.part0.size();
                j["part1_size"] = v.part1.size();
                j["holds"] = v.holds();
            }
            out << j.dump(2) << '\n';
        } else if (rp->parsed()) {
            const std::filesystem::path dir(rp_out);
            std::filesystem::create_directories(dir);
            const StatsOptions opts = stats_flags.options();
            if (rp_fig == "fig1") {
                reproduce_graphs({{"fig1_single", 1001, "x^2+226"}, {"fig1_pair", 2000, "x^2+1;x^2+2"}}, dir, opts, out);
            } else if (rp_fig == "fig2") {
                reproduce_graphs(
                    {{"fig2_three", 2000, "x^2+1;x^2+31;x^2+51"}, {"fig2_exponential", 2002, "2^x+11;3^x+5"}}, dir,
                    opts, out);
            } else if (rp_fig == "fig7") {
                const auto runs = run_sweep(baseline_plan(rp_seeds, rp_seed), {jobs, std::nullopt, 64});
                write_sweep_csv(runs, dir / "fig7_baselines.csv");
                write_sweep_csv(baseline_summary(runs), dir / "fig7_summary.csv");
                // Metric panels: the permutation model across n.
                SweepPlan panels;
                panels.experiment = "fig7_panels";
                panels.axes = {"n"};
                panels.outcomes = stats_columns();
                panels.provenance = {{"version", version_string()}, {"model", "perm(n,2)"},
                                     {"seed", std::to_string(rp_seed)}};
                for (std::int64_t n : {10, 20, 50, 100, 200, 500, 1000}) panels.tasks.push_back({n});
                panels.evaluate = [seed = rp_seed](const Row& p) -> Row {
                    StatsOptions o;
                    o.topology = false;
                    const auto n = static_cast<std::uint32_t>(as_int(p[0]));
                    return stats_cells(compute_stats(generate_baseline({RandomPermutations{n, 2}, seed}), o));
                };
                write_sweep_csv(run_sweep(panels, {jobs, std::nullopt, 64}), dir / "fig7_panels.csv");
                out << (dir / "fig7_baselines.csv").string() << '\n'
                    << (dir / "fig7_summary.csv").string() << '\n'
                    << (dir / "fig7_panels.csv").string() << '\n';
            } else if (rp_fig == "fig8") {
                LccOptions o;
                o.family = LccFamily::RandomPermutations;
                o.d = 2;
                o.samples = rp_samples;
                o.seed = rp_seed;
                const std::vector<std::uint32_t> ns = {10, 20, 50, 100, 200, 500, 1000};
                write_sweep_csv(run_sweep(lcc_plan(ns, o), {jobs, std::nullopt, 64}), dir / "fig8_lambda.csv");
                out << (dir / "fig8_lambda.csv").string() << '\n';
            }
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return kDomainError;
    }
    return kOk;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace orbnet::cli
