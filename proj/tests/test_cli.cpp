// Copyright (c) trojansim contributors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end tests that spawn the command-line binary named by the
// TROJANSIM_BIN environment variable (set by the build system).

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* binary()
{
    const char* bin = std::getenv("TROJANSIM_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "TROJANSIM_BIN must point at the CLI binary");
    return bin;
}

fs::path work_dir()
{
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() /
                     ("trojansim-cli-" + std::to_string(::getpid()));
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CliResult
{
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs `<prefix> <binary> <args>` through the shell with captured streams.
CliResult run_cli(const std::string& args, const std::string& env_prefix = "")
{
    static int counter  = 0;
    const fs::path base = work_dir() / ("io-" + std::to_string(counter++));
    const fs::path out  = base.string() + ".out";
    const fs::path err  = base.string() + ".err";
    const std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") +
                            std::string(binary()) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    CliResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out       = slurp(out);
    res.err       = slurp(err);
    return res;
}

fs::path triangle_file()
{
    static const fs::path path = [] {
        const fs::path p = work_dir() / "triangle.txt";
        std::ofstream f(p);
        f << "# three mutual friends\n0 1\n1 2\n0 2\n";
        return p;
    }();
    return path;
}

// A small synthetic graph shared by the run/simulate/model tests, produced
// by the binary itself.
fs::path synthetic_file()
{
    static const fs::path path = [] {
        const fs::path p = work_dir() / "synthetic.txt";
        const CliResult r = run_cli("generate-graph --nodes 100 --attach 3 --triad 0.5 "
                                    "--seed 7 --out " + p.string());
        REQUIRE_MESSAGE(r.exit_code == 0, r.err);
        return p;
    }();
    return path;
}

std::vector<double> csv_column(const fs::path& path, int field)
{
    std::ifstream in(path);
    std::string line;
    std::getline(in, line); // header
    std::vector<double> vals;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string cell;
        for (int i = 0; i <= field; ++i)
            std::getline(row, cell, ',');
        vals.push_back(std::stod(cell));
    }
    return vals;
}

} // namespace

TEST_CASE("graph-stats reports exact values for a triangle")
{
    const CliResult r = run_cli("graph-stats " + triangle_file().string());
    REQUIRE_MESSAGE(r.exit_code == 0, r.err);
    const json stats = json::parse(r.out);
    CHECK(stats["node_count"] == 3);
    CHECK(stats["edge_count"] == 3);
    CHECK(stats["avg_clustering"].get<double>() == doctest::Approx(1.0));
    CHECK(stats["avg_shortest_path"].get<double>() == doctest::Approx(1.0));
    CHECK(stats["diameter"] == 1);
    CHECK(stats["connected"] == true);
}

TEST_CASE("graph-stats on a missing file is a usage error")
{
    const CliResult r = run_cli("graph-stats /no/such/file.txt");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("no such file") != std::string::npos);
}

TEST_CASE("malformed edge lists exit with a parse diagnostic")
{
    const fs::path bad = work_dir() / "bad.txt";
    std::ofstream(bad) << "0 1\nfoo bar\n";
    const CliResult r = run_cli("graph-stats " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("run produces the documented files and a summary line")
{
    const fs::path out = work_dir() / "run-out";
    const CliResult r  = run_cli("run --preset exp1a --graph " + synthetic_file().string() +
                                 " --runs 4 --horizon 10 --out " + out.string());
    REQUIRE_MESSAGE(r.exit_code == 0, r.err);
    CHECK(r.out.find("infected-curve r=") != std::string::npos);
    const fs::path dir = out / "exp1a";
    for (const char* name : {"model.csv", "sim_avg.csv", "comparison.json", "spec.json",
                             "runs.json", "sim_run_0.csv", "sim_run_3.csv"})
        CHECK_MESSAGE(fs::exists(dir / name), name);

    const json cmp = json::parse(slurp(dir / "comparison.json"));
    CHECK(cmp["id"] == "exp1a");
    CHECK(cmp["runs"] == 4);
    CHECK(cmp["horizon"] == 10);
    CHECK(cmp["curves"].contains("infected"));

    const json spec = json::parse(slurp(dir / "spec.json"));
    CHECK(spec["params"]["p"].get<double>() == doctest::Approx(0.5));

    const json runs = json::parse(slurp(dir / "runs.json"));
    REQUIRE(runs.size() == 4);
    CHECK(runs[0].contains("infiltrator"));
    CHECK(runs[0].contains("stop_step"));
}

TEST_CASE("dedicated flags and dotted overrides reshape the preset")
{
    const fs::path out = work_dir() / "override-out";
    const CliResult r  = run_cli("run --preset exp1a --graph " + synthetic_file().string() +
                                 " --runs 3 --horizon 8 --set model.p=0 --out " + out.string());
    REQUIRE_MESSAGE(r.exit_code == 0, r.err);
    // p = 0: the infiltrator stays the only infected node in every replicate
    const auto infected = csv_column(out / "exp1a" / "model.csv", 2);
    REQUIRE(infected.size() == 9);
    for (double v : infected)
        CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("unknown override keys are rejected with the offending name")
{
    const CliResult r = run_cli("run --preset exp1a --graph " + synthetic_file().string() +
                                " --set model.zeta=1 --out " + (work_dir() / "x").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("model.zeta") != std::string::npos);
}

TEST_CASE("preset and config file are mutually exclusive")
{
    const fs::path cfg = work_dir() / "cfg.json";
    std::ofstream(cfg) << R"({"id": "custom", "model.p": 0.5})";
    const CliResult r = run_cli("run --preset exp1a --config " + cfg.string() + " --graph " +
                                synthetic_file().string());
    CHECK(r.exit_code == 2);
}

TEST_CASE("config files mirror the --set schema as nested objects")
{
    const fs::path cfg = work_dir() / "good-cfg.json";
    std::ofstream(cfg) << R"({
        "id": "from-config",
        "model": {"p": 0.4},
        "tau": {"kind": "fixed", "fixed": 2},
        "schedule": {"kind": "linear", "c0": 0.01, "t_max": 20},
        "runs": 2,
        "horizon": 6
    })";
    const fs::path out = work_dir() / "config-out";
    const CliResult r  = run_cli("run --config " + cfg.string() + " --graph " +
                                 synthetic_file().string() + " --out " + out.string());
    REQUIRE_MESSAGE(r.exit_code == 0, r.err);
    const json spec = json::parse(slurp(out / "from-config" / "spec.json"));
    CHECK(spec["params"]["p"].get<double>() == doctest::Approx(0.4));
    CHECK(spec["schedule"]["kind"] == "linear");
    CHECK(spec["runs"] == 2);

    const fs::path bad = work_dir() / "bad-cfg.json";
    std::ofstream(bad) << R"({"model": {"frobnicate": 1}})";
    const CliResult rb = run_cli("run --config " + bad.string() + " --graph " +
                                 synthetic_file().string());
    CHECK(rb.exit_code == 2);
    CHECK(rb.err.find("model.frobnicate") != std::string::npos);

    const fs::path flat = work_dir() / "flat-cfg.json";
    std::ofstream(flat) << R"({"model.p": 0.4})";
    const CliResult rf = run_cli("run --config " + flat.string() + " --graph " +
                                 synthetic_file().string());
    CHECK(rf.exit_code == 2);
    CHECK(rf.err.find("model.p") != std::string::npos);
}

TEST_CASE("identical seeds give byte-identical outputs")
{
    const fs::path out_a = work_dir() / "det-a";
    const fs::path out_b = work_dir() / "det-b";
    const std::string tail = " --graph " + synthetic_file().string() +
                             " --runs 3 --horizon 10 --seed 12345 --out ";
    REQUIRE(run_cli("run --preset exp3-0.2" + tail + out_a.string()).exit_code == 0);
    REQUIRE(run_cli("run --preset exp3-0.2" + tail + out_b.string()).exit_code == 0);
    for (const char* name : {"model.csv", "sim_avg.csv", "runs.json"})
        CHECK(slurp(out_a / "exp3-0.2" / name) == slurp(out_b / "exp3-0.2" / name));

    const fs::path out_c = work_dir() / "det-c";
    REQUIRE(run_cli("run --preset exp3-0.2 --graph " + synthetic_file().string() +
                    " --runs 3 --horizon 10 --seed 54321 --out " + out_c.string())
                .exit_code == 0);
    CHECK(slurp(out_a / "exp3-0.2" / "sim_avg.csv") !=
          slurp(out_c / "exp3-0.2" / "sim_avg.csv"));
}

TEST_CASE("TROJANSIM_OUT provides the default output directory")
{
    const fs::path out = work_dir() / "env-out";
    const CliResult r  = run_cli("run --preset exp1a --graph " + synthetic_file().string() +
                                 " --runs 2 --horizon 5",
                                 "TROJANSIM_OUT=" + out.string());
    REQUIRE_MESSAGE(r.exit_code == 0, r.err);
    CHECK(fs::exists(out / "exp1a" / "model.csv"));
}

TEST_CASE("simulate honors stop-rule flags")
{
    const fs::path out = work_dir() / "sim-out";
    // p = 0 with immediate arming: every run goes quiet right away and stops
    // after the default four-step window
    const CliResult r = run_cli("simulate --preset exp1a --graph " +
                                synthetic_file().string() +
                                " --runs 3 --horizon 20 --set model.p=0"
                                " --stop-arm-fraction 0 --out " + out.string());
    REQUIRE_MESSAGE(r.exit_code == 0, r.err);
    const json runs = json::parse(slurp(out / "exp1a" / "runs.json"));
    REQUIRE(runs.size() == 3);
    for (const auto& run : runs) {
        CHECK(run["stopped_early"] == true);
        CHECK(run["stop_step"] == 4);
    }
}

TEST_CASE("model --dump emits per-node probability lines")
{
    const fs::path out  = work_dir() / "model-out";
    const fs::path dump = work_dir() / "dump.jsonl";
    const CliResult r   = run_cli("model --preset exp1a --graph " + synthetic_file().string() +
                                  " --runs 2 --horizon 3 --dump " + dump.string() +
                                  " --out " + out.string());
    REQUIRE_MESSAGE(r.exit_code == 0, r.err);
    CHECK(fs::exists(out / "exp1a" / "model.csv"));

    std::ifstream in(dump);
    std::string line;
    std::size_t lines = 0;
    double mass_check = -1.0;
    while (std::getline(in, line)) {
        const json row = json::parse(line);
        if (lines == 0)
            mass_check = row["sus"].get<double>() + row["inf"].get<double>() +
                         row["rec"].get<double>() + row["imm"].get<double>();
        ++lines;
    }
    CHECK(lines == 100 * 3); // one line per node per step
    CHECK(mass_check == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("compare reports per-curve agreement and truncates with a warning")
{
    const fs::path out = work_dir() / "cmp-src";
    REQUIRE(run_cli("model --preset exp1a --graph " + synthetic_file().string() +
                    " --runs 2 --horizon 8 --out " + out.string())
                .exit_code == 0);
    const fs::path series = out / "exp1a" / "model.csv";

    const CliResult same = run_cli("compare " + series.string() + " " + series.string());
    REQUIRE_MESSAGE(same.exit_code == 0, same.err);
    const json cmp = json::parse(same.out);
    CHECK(cmp["infected"]["r"].get<double>() == doctest::Approx(1.0));
    CHECK(cmp["infected"]["max_abs_pct"].get<double>() == doctest::Approx(0.0));

    const fs::path out2 = work_dir() / "cmp-short";
    REQUIRE(run_cli("model --preset exp1a --graph " + synthetic_file().string() +
                    " --runs 2 --horizon 5 --out " + out2.string())
                .exit_code == 0);
    const CliResult trunc =
        run_cli("compare " + series.string() + " " + (out2 / "exp1a" / "model.csv").string());
    CHECK(trunc.exit_code == 0);
    CHECK(trunc.err.find("truncating") != std::string::npos);

    const fs::path junk = work_dir() / "junk.csv";
    std::ofstream(junk) << "this,is,not,a,series\n1,2,3,4,5\n";
    const CliResult bad = run_cli("compare " + series.string() + " " + junk.string());
    CHECK(bad.exit_code == 2);
}

TEST_CASE("sweep tabulates one row per value")
{
    const CliResult r = run_cli("sweep --preset exp1a --graph " + synthetic_file().string() +
                                " --runs 2 --horizon 6 --param p --values 0 0.5 1.0");
    REQUIRE_MESSAGE(r.exit_code == 0, r.err);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header.find("peak_infected") != std::string::npos);
    int rows = 0;
    for (std::string line; std::getline(lines, line);)
        rows += !line.empty();
    CHECK(rows == 3);

    const CliResult rj = run_cli("sweep --preset exp1a --graph " + synthetic_file().string() +
                                 " --runs 2 --horizon 6 --param p --values 0 1 --json");
    REQUIRE(rj.exit_code == 0);
    const json table = json::parse(rj.out);
    REQUIRE(table.size() == 2);
    CHECK(table[0]["value"].get<double>() == doctest::Approx(0.0));
    CHECK(table[0]["peak_infected"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("generate-graph writes a loadable deterministic edge list")
{
    const fs::path a = work_dir() / "gen-a.txt";
    const fs::path b = work_dir() / "gen-b.txt";
    REQUIRE(run_cli("generate-graph --nodes 60 --attach 2 --triad 0.4 --seed 5 --out " +
                    a.string())
                .exit_code == 0);
    REQUIRE(run_cli("generate-graph --nodes 60 --attach 2 --triad 0.4 --seed 5 --out " +
                    b.string())
                .exit_code == 0);
    CHECK(slurp(a) == slurp(b));

    const CliResult stats = run_cli("graph-stats " + a.string());
    REQUIRE(stats.exit_code == 0);
    const json s = json::parse(stats.out);
    CHECK(s["node_count"] == 60);
    CHECK(s["edge_count"] == 2 * (60 - 2) + 1);
    CHECK(s["connected"] == true);

    const CliResult bad = run_cli("generate-graph --nodes 2 --attach 5 --triad 0.4 "
                                  "--seed 5 --out " + (work_dir() / "bad-gen.txt").string());
    CHECK(bad.exit_code == 2);
}

TEST_CASE("bad usage exits with code 2 and run failures with 1")
{
    CHECK(run_cli("no-such-command").exit_code != 0);
    CHECK(run_cli("run --preset no-such-preset --graph " + synthetic_file().string())
              .exit_code == 2);
    CHECK(run_cli("run --graph " + synthetic_file().string() + " --mode bogus --out " +
                  (work_dir() / "y").string())
              .exit_code == 2);
    // no preset, no config, no graph: nothing to run on
    const CliResult r = run_cli("run --out " + (work_dir() / "z").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("no graph") != std::string::npos);
}

TEST_CASE("help is exit code 0 and lists the subcommands")
{
    const CliResult r = run_cli("--help");
    CHECK(r.exit_code == 0);
    for (const char* sub : {"graph-stats", "run", "simulate", "model", "compare", "sweep",
                            "generate-graph"})
        CHECK(r.out.find(sub) != std::string::npos);
}
