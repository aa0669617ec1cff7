#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>
#include <sys/wait.h>

using json = nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string out_path = "cli_out_" + std::to_string(counter) + ".txt";
    const std::string err_path = "cli_err_" + std::to_string(counter) + ".txt";
    ++counter;
    const std::string cmd =
        std::string(QWALK_BIN) + " " + args + " >" + out_path + " 2>" + err_path;
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

const std::string kMelbourne = std::string(QWALK_REPO_DIR) + "/configs/melbourne.map";

}  // namespace

TEST_CASE("hitting-time csv matches the frozen hypercube trace") {
    const RunResult r = run_cli("hitting-time --graph hypercube --size 16 --marked 1011");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("iteration,marked_probability,top_state,top_probability\n", 0) == 0);
    CHECK(r.out.find("\n3,0.916706") != std::string::npos);
    CHECK(r.out.find(",1011,") != std::string::npos);
    CHECK(r.out.find("# hitting_time=3 peak=0.916706") != std::string::npos);
    CHECK(r.out.find("theoretical_scale=4") != std::string::npos);
    // header + rows 0..5 + summary
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 8);
}

TEST_CASE("hitting-time json exposes the peak row") {
    const RunResult r =
        run_cli("hitting-time --graph bipartite --size 8 --marked 011 --format json");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["hitting_time"] == 2);
    CHECK(std::abs(j["peak_probability"].get<double>() - 0.9453125) < 1e-9);
    CHECK(j["rows"].size() == j["max_iters"].get<std::size_t>() + 1);
    CHECK(j["rows"][2]["top_state"] == "011");
}

TEST_CASE("walk reports per-step node distributions") {
    const RunResult r = run_cli("walk --graph hypercube --size 16 --iterations 1");
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row0, row1;
    std::getline(lines, header);
    std::getline(lines, row0);
    std::getline(lines, row1);
    CHECK(header.rfind("step,0000,0001,", 0) == 0);
    CHECK(row0.rfind("0,1,0,0,", 0) == 0);
    // one step from the origin spreads over its four neighbors
    CHECK(std::count(row1.begin(), row1.end(), ',') == 16);
    CHECK(row1.find("0.2499999") != std::string::npos);

    const RunResult u =
        run_cli("walk --graph lattice --size 16 --iterations 2 --initial uniform --format json");
    REQUIRE(u.code == 0);
    const json j = json::parse(u.out);
    CHECK(j["distributions"].size() == 3);
    CHECK(j["nodes"].size() == 16);
    double total = 0.0;
    for (const auto& p : j["distributions"][2]) total += p.get<double>();
    CHECK(std::abs(total - 1.0) < 1e-9);
}

TEST_CASE("search json counts agree with the text histogram") {
    const std::string base = "search --graph hypercube --size 16 --marked 1011 --seed 7";
    const RunResult j = run_cli(base + " --format json");
    REQUIRE(j.code == 0);
    const json record = json::parse(j.out);
    CHECK(record["iterations"] == 3);
    CHECK(record["hitting_time"] == 3);
    const std::uint64_t marked = record["marked_count"].get<std::uint64_t>();
    CHECK(marked >= 880);
    CHECK(marked <= 990);
    CHECK(record["counts"]["1011"].get<std::uint64_t>() == marked);

    const RunResult t = run_cli(base);
    REQUIRE(t.code == 0);
    CHECK(t.out.find("marked count: " + std::to_string(marked) + " / 1024") !=
          std::string::npos);
    CHECK(t.out.find("1011 " + std::to_string(marked) + " |####") != std::string::npos);

    const RunResult c = run_cli(base + " --format csv");
    REQUIRE(c.code == 0);
    CHECK(c.out.rfind("state,count\n", 0) == 0);
    CHECK(c.out.find("1011," + std::to_string(marked) + "\n") != std::string::npos);
}

TEST_CASE("grover reproduces the three-iteration success probability") {
    const RunResult r = run_cli("grover --size 16 --marked 0110 --format json");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["iterations"] == 3);
    CHECK(j["trace"].size() == 4);
    CHECK(std::abs(j["trace"].back().get<double>() - 0.961318969727) < 1e-9);
}

TEST_CASE("classical reports exact and sampled hitting times") {
    const RunResult r = run_cli(
        "classical --graph complete --size 16 --marked 1011 --shots 20000 --format json");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["periodic"] == false);
    CHECK(j["mixing_time"] == 1);
    CHECK(std::abs(j["hitting_unmarked"].get<double>() - 16.0) < 1e-9);
    CHECK(std::abs(j["hitting_uniform"].get<double>() - 15.0) < 1e-9);
    CHECK(std::abs(j["hitting_mc"].get<double>() - 16.0) < 0.8);

    const RunResult b = run_cli("classical --graph bipartite --size 8 --format json");
    REQUIRE(b.code == 0);
    const json bj = json::parse(b.out);
    CHECK(bj["periodic"] == true);
    CHECK(bj["mixing_time"].is_null());

    const RunResult c = run_cli("classical --graph complete --size 16");
    REQUIRE(c.code == 0);
    CHECK(c.out.rfind("state,stationary\n0000,0.0625\n", 0) == 0);
    CHECK(c.out.find("# periodic=false mixing_time=1") != std::string::npos);
}

TEST_CASE("noise csv row carries the model and the degraded probability") {
    const std::string base =
        "noise --graph hypercube --size 16 --marked 1011 --shots 512 --seed 3 --format csv";
    const RunResult r = run_cli(base);
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("p1,p2,p_ro,marked_probability,shots\n0.002,0.02,0.03,", 0) == 0);
    CHECK(r.out.find("# ideal_marked_probability=0.916706") != std::string::npos);

    const RunResult zero = run_cli(
        "noise --graph hypercube --size 16 --marked 1011 --shots 1024 --seed 1 "
        "--noise 0,0,0 --format json");
    REQUIRE(zero.code == 0);
    const json j = json::parse(zero.out);
    CHECK(j["marked_probability"].get<double>() > 0.88);
    CHECK(std::abs(j["ideal_marked_probability"].get<double>() - 0.916706323624) < 1e-9);
}

TEST_CASE("noise --transpiled routes through the device first") {
    const RunResult r = run_cli(
        "noise --graph bipartite --size 8 --marked 011 --shots 256 --seed 3 --transpiled "
        "--coupling-map " + kMelbourne + " --format json");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["transpiled"] == true);
    CHECK(j["marked_probability"].get<double>() < 0.7);  // noisy, longer circuit

    const RunResult missing =
        run_cli("noise --graph bipartite --size 8 --marked 011 --transpiled");
    CHECK(missing.code == 2);
    CHECK(missing.err.find("--coupling-map") != std::string::npos);
}

TEST_CASE("transpile verifies the routed walk circuit") {
    const RunResult r = run_cli("transpile --graph bipartite --size 8 --coupling-map " +
                                kMelbourne + " --format json");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["verified"] == true);
    CHECK(j["device_qubits"] == 15);
    const int swaps = j["swaps"].get<int>();
    CHECK(swaps >= 0);
    CHECK(j["routed_metrics"]["two_qubit_gates"].get<int>() ==
          j["input_metrics"]["two_qubit_gates"].get<int>() + 3 * swaps);
    CHECK(j["routed_metrics"]["swap_gates"].get<int>() == swaps);

    const RunResult c = run_cli("transpile --graph hypercube --size 16 --circuit walk "
                                "--layout identity --coupling-map " + kMelbourne);
    REQUIRE(c.code == 0);
    CHECK(json::parse(c.out)["layout"] == "identity");
}

TEST_CASE("transpile --dump-circuit writes a loadable program") {
    const std::string dump = "cli_dump_circuit.txt";
    const RunResult r = run_cli("transpile --graph hypercube --size 16 --coupling-map " +
                                kMelbourne + " --dump-circuit " + dump + " --format csv");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("metric,value\n", 0) == 0);
    CHECK(r.out.find("verified,true") != std::string::npos);
    const std::string text = slurp(dump);
    CHECK(text.find("qubits 15") != std::string::npos);
    CHECK(text.find("; +") != std::string::npos);  // at least one controlled gate
    std::remove(dump.c_str());
}

TEST_CASE("repeated runs are byte-identical") {
    const std::string cmds[] = {
        "search --graph complete --size 16 --marked 1011,1111 --seed 11 --format json",
        "noise --graph hypercube --size 16 --marked 1011 --shots 512 --seed 9 --format csv",
        "hitting-time --graph lattice --size 16 --marked 1011",
    };
    for (const std::string& cmd : cmds) {
        const RunResult a = run_cli(cmd);
        const RunResult b = run_cli(cmd);
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("--out writes exactly the stdout bytes") {
    const std::string path = "cli_out_file.txt";
    const RunResult direct = run_cli("search --graph hypercube --size 16 --marked 1011 --seed 5");
    const RunResult filed = run_cli(
        "search --graph hypercube --size 16 --marked 1011 --seed 5 --out " + path);
    REQUIRE(direct.code == 0);
    REQUIRE(filed.code == 0);
    CHECK(filed.out.empty());
    CHECK(slurp(path) == direct.out);
    std::remove(path.c_str());
}

TEST_CASE("config file supplies defaults and flags override") {
    const std::string cfg = "cli_config.txt";
    {
        std::ofstream f(cfg);
        f << "graph=hypercube\n"
          << "size=16\n"
          << "marked=1011\n"
          << "shots=512\n"
          << "# trailing comment\n"
          << "seed=7\n";
    }
    const RunResult from_config = run_cli("search --config " + cfg + " --format json");
    const RunResult from_flags = run_cli(
        "search --graph hypercube --size 16 --marked 1011 --shots 512 --seed 7 --format json");
    REQUIRE(from_config.code == 0);
    CHECK(from_config.out == from_flags.out);

    const RunResult overridden =
        run_cli("search --config " + cfg + " --shots 256 --format json");
    REQUIRE(overridden.code == 0);
    CHECK(json::parse(overridden.out)["shots"] == 256);

    {
        std::ofstream f(cfg);
        f << "graph=hypercube\nturbo=yes\n";
    }
    const RunResult bad = run_cli("search --config " + cfg + " --marked 1011");
    CHECK(bad.code == 2);
    CHECK(bad.err.find("unknown key 'turbo'") != std::string::npos);
    std::remove(cfg.c_str());
}

TEST_CASE("bad arguments exit nonzero with a diagnostic") {
    CHECK(run_cli("").code != 0);
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("search --graph hypercube --size 16").code != 0);  // no --marked
    const RunResult label = run_cli("search --graph hypercube --size 16 --marked 10111");
    CHECK(label.code == 2);
    CHECK(label.err.find("error") != std::string::npos);
    CHECK(run_cli("walk --graph hypercube --size 12").code == 2);
    CHECK(run_cli("walk --graph moebius --size 16").code == 2);
    CHECK(run_cli("grover --size 12 --marked 1011").code == 2);
    CHECK(run_cli("search --graph hypercube --size 16 --marked 1011 --format yaml").code != 0);
    CHECK(run_cli("noise --graph hypercube --size 16 --marked 1011 --noise 0.5").code == 2);
    CHECK(run_cli("noise --graph hypercube --size 16 --marked 1011 --noise 0.5,2,0").code == 2);
}
