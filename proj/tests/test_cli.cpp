#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const char* kCli = DTT_CLI_PATH;

int run(const std::string& args) {
    std::string cmd = std::string(kCli) + " " + args + " >cli_stdout.txt 2>cli_stderr.txt";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    os << text;
}

const char* kToyConfig = R"({
  "target": {"name": "gaussian",
             "covariance": [[1.0, 0.5], [0.5, 1.0]],
             "lower": [-4, -4], "upper": [4, 4]},
  "reference": {"kind": "uniform"},
  "basis": {"family": "piecewise_linear", "n": 16},
  "cross": {"R0": 6, "MaxIt": 3},
  "out": "cli_toy.dirt"
})";

struct Cleanup {
    ~Cleanup() {
        for (const char* f :
             {"cli_cfg.json", "cli_toy.dirt", "cli_s1.csv", "cli_s2.csv",
              "cli_bad.json", "cli_stdout.txt", "cli_stderr.txt"})
            std::remove(f);
    }
} cleanup;

}  // namespace

TEST_CASE("build / sample / diagnose / info round-trip") {
    write_file("cli_cfg.json", kToyConfig);
    REQUIRE(run("build --config cli_cfg.json") == 0);
    std::string report = slurp("cli_stdout.txt");
    CHECK(report.find("\"num_layers\": 1") != std::string::npos);
    CHECK(report.find("n_evals") != std::string::npos);

    REQUIRE(run("sample cli_toy.dirt --mode is -N 500 --seed 3 --out cli_s1.csv") == 0);
    std::string diag = slurp("cli_stdout.txt");
    CHECK(diag.find("\"ess\"") != std::string::npos);
    CHECK(diag.find("\"z_bar\"") != std::string::npos);
    std::string csv = slurp("cli_s1.csv");
    CHECK(csv.substr(0, csv.find('\n')) == "x1,x2,log_weight");
    // header + 500 rows
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 501);

    CHECK(run("sample cli_toy.dirt --mode mcmc -N 100 --seed 3 --out cli_s2.csv") == 0);
    std::string mcsv = slurp("cli_s2.csv");
    CHECK(mcsv.substr(0, mcsv.find('\n')) == "x1,x2,accepted");

    CHECK(run("diagnose cli_toy.dirt --quad-order 40") == 0);
    std::string dj = slurp("cli_stdout.txt");
    CHECK(dj.find("hellinger_bound") != std::string::npos);

    CHECK(run("info cli_toy.dirt") == 0);
    CHECK(slurp("cli_stdout.txt").find("\"dim\": 2") != std::string::npos);
}

TEST_CASE("same seed reproduces byte-identical samples") {
    write_file("cli_cfg.json", kToyConfig);
    REQUIRE(run("build --config cli_cfg.json") == 0);
    REQUIRE(run("sample cli_toy.dirt --mode is -N 200 --seed 9 --out cli_s1.csv") == 0);
    REQUIRE(run("sample cli_toy.dirt --mode is -N 200 --seed 9 --out cli_s2.csv") == 0);
    CHECK(slurp("cli_s1.csv") == slurp("cli_s2.csv"));
    REQUIRE(run("sample cli_toy.dirt --mode is -N 200 --seed 10 --out cli_s2.csv") == 0);
    CHECK(slurp("cli_s1.csv") != slurp("cli_s2.csv"));
}

TEST_CASE("config errors exit with code 2") {
    write_file("cli_bad.json", R"({"target": {"name": "gaussian",
      "covariance": [[1]], "lower": [-1], "upper": [1]}, "no_such_key": 1})");
    CHECK(run("build --config cli_bad.json") == 2);
    CHECK(slurp("cli_stderr.txt").find("no_such_key") != std::string::npos);

    write_file("cli_bad.json", "{ not json");
    CHECK(run("build --config cli_bad.json") == 2);

    CHECK(run("build --config does_not_exist.json") == 2);
}

TEST_CASE("sampler argument errors exit with code 2") {
    write_file("cli_cfg.json", kToyConfig);
    REQUIRE(run("build --config cli_cfg.json") == 0);
    CHECK(run("sample cli_toy.dirt --mode is -N 0 --out cli_s1.csv") == 2);
    CHECK(run("sample cli_toy.dirt --mode bogus -N 10 --out cli_s1.csv") == 2);
    CHECK(run("sample no_such.dirt --mode is -N 10 --out cli_s1.csv") != 0);
    CHECK(run("bogus-subcommand") != 0);
}

TEST_CASE("dimension cap on diagnose") {
    // a 4-dimensional DIRT cannot be diagnosed by quadrature
    write_file("cli_cfg.json", R"({
      "target": {"name": "gaussian",
                 "covariance": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],
                 "lower": [-3,-3,-3,-3], "upper": [3,3,3,3]},
      "schedule": {"betas": [1.0]},
      "basis": {"family": "piecewise_linear", "n": 6},
      "cross": {"R0": 3, "MaxIt": 1},
      "out": "cli_toy.dirt"})");
    REQUIRE(run("build --config cli_cfg.json") == 0);
    CHECK(run("diagnose cli_toy.dirt") == 2);
    CHECK(slurp("cli_stderr.txt").find("dimension cap") != std::string::npos);
}
