#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "orbnet/cli.hpp"
#include "orbnet/formats.hpp"

using namespace orbnet;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name) : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("stats on the two-map figure graph") {
    const auto r = run_cli({"stats", "--n", "2000", "--maps", "x^2+1;x^2+2", "--no-topology"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(j["diameter"] == 9);
    CHECK(j["edges"] == 3998);
}

TEST_CASE("sweep min_diameter row") {
    const auto r = run_cli({"sweep", "--experiment", "min_diameter", "--d", "2", "--n", "131"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    const auto csv = read_sweep_csv(in);
    REQUIRE(csv.rows.size() == 1);
    CHECK(as_int(csv.at(0, "diameter")) == 7);
}

TEST_CASE("generate on a single vertex") {
    const auto r = run_cli({"generate", "--n", "1", "--maps", "x^2+0"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    const auto g = read_edge_list(in).graph;
    CHECK(g.vertex_count() == 1);
    CHECK(g.edge_count() == 0);
}

TEST_CASE("exit codes") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({"generate", "--n", "5"}).code == 2);
    CHECK(run_cli({"generate", "--n", "5", "--maps", "x^3"}).code == 2);
    CHECK(run_cli({"sweep", "--experiment", "nope"}).code == 2);
    CHECK(run_cli({"sweep", "--experiment", "min_diameter", "--n", "1..x"}).code == 2);
    CHECK(run_cli({"check", "--proposition", "1", "--n", "21", "--shifts", "2"}).code == 2);
    CHECK(run_cli({"stats", "--in", "/nonexistent.edges"}).code == 1);
    CHECK(run_cli({"matrix", "--n", "2000"}).code == 1);  // over the size limit
    CHECK(run_cli({"sweep", "--experiment", "connectivity", "--p-max", "5", "--d", "4"}).code == 1);
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({"--version"}).code == 0);
}

TEST_CASE("generate, stats --in and DOT") {
    TempDir dir("orbnet_cli_gen");
    const auto edges = (dir.path / "g.edges").string();
    const auto dot = (dir.path / "g.dot").string();
    REQUIRE(run_cli({"generate", "--n", "57", "--maps", "x^2+30", "--out", edges, "--dot", dot}).code == 0);
    const auto from_file = run_cli({"stats", "--in", edges});
    const auto from_maps = run_cli({"stats", "--n", "57", "--maps", "x^2+30"});
    REQUIRE(from_file.code == 0);
    CHECK(from_file.out == from_maps.out);
    CHECK(nlohmann::ordered_json::parse(from_file.out)["cliques"][2] == 2);
    CHECK(slurp(dot).rfind("graph G {", 0) == 0);
}

TEST_CASE("jobs never change output bytes") {
    TempDir dir("orbnet_cli_jobs");
    const auto a = (dir.path / "a.csv").string();
    const auto b = (dir.path / "b.csv").string();
    REQUIRE(run_cli({"sweep", "--experiment", "lcc", "--n", "50,80", "--samples", "12", "--seed", "3", "--jobs",
                     "1", "--out", a})
                .code == 0);
    REQUIRE(run_cli({"sweep", "--experiment", "lcc", "--n", "50,80", "--samples", "12", "--seed", "3", "--jobs",
                     "4", "--out", b})
                .code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(std::filesystem::exists(a + ".partial"));

    const auto m1 = run_cli({"matrix", "--n", "30", "--jobs", "1"});
    const auto m4 = run_cli({"matrix", "--n", "30", "--jobs", "3"});
    CHECK(m1.code == 0);
    CHECK(m1.out == m4.out);
}

TEST_CASE("baseline and check") {
    const auto a = run_cli({"baseline", "--spec", "ws(200,4,0.1)", "--seed", "7", "--no-topology"});
    const auto b = run_cli({"baseline", "--spec", "ws(200,4,0.1)", "--seed", "7", "--no-topology"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(run_cli({"baseline", "--spec", "zz(1)"}).code == 2);

    const auto c = run_cli({"check", "--proposition", "1", "--n", "22", "--shifts", "2,6,16"});
    REQUIRE(c.code == 0);
    CHECK(nlohmann::ordered_json::parse(c.out)["holds"] == true);
    const auto d = run_cli({"check", "--proposition", "2", "--n", "24", "--shifts", "1,3,7"});
    REQUIRE(d.code == 0);
    CHECK(nlohmann::ordered_json::parse(d.out)["triangles"] == 0);
}

TEST_CASE("reproduce fig1") {
    TempDir dir("orbnet_cli_fig1");
    const auto r = run_cli({"reproduce", "--figure", "fig1", "--out", dir.path.string()});
    REQUIRE(r.code == 0);
    const auto pair = nlohmann::ordered_json::parse(slurp(dir.path / "fig1_pair.json"));
    CHECK(pair["diameter"] == 9);
    const auto single = nlohmann::ordered_json::parse(slurp(dir.path / "fig1_single.json"));
    CHECK(single["diameter"] == 14);
    CHECK(single["lambda"].is_null());
    CHECK(std::filesystem::exists(dir.path / "fig1_pair.edges"));
}

TEST_CASE("collatz sweep to stdout") {
    const auto r = run_cli({"sweep", "--experiment", "collatz", "--n", "50"});
    REQUIRE(r.code == 0);
    CHECK(r.err.empty());
    std::istringstream in(r.out);
    CHECK(read_sweep_csv(in).rows.size() == 49);
}
