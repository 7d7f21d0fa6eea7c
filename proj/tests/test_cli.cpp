#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef KRAICHNAN_CLI_PATH
#define KRAICHNAN_CLI_PATH "kraichnan"
#endif

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string tmp = std::string("/tmp/kraichnan_cli_out_") +
                            std::to_string(::getpid()) + ".txt";
    const std::string cmd =
        std::string(KRAICHNAN_CLI_PATH) + " " + args + " > " + tmp + " 2>&1";
    const int raw = std::system(cmd.c_str());
    std::ifstream is(tmp);
    std::stringstream ss;
    ss << is.rdbuf();
    std::remove(tmp.c_str());
    return {WEXITSTATUS(raw), ss.str()};
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

// pull the value of column `col` from the csv row whose first column is key
double csv_lookup(const std::string& text, const std::string& key, int col) {
    for (const auto& line : lines_of(text)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind(key + ",", 0) == 0) {
            std::stringstream ss(line);
            std::string cell;
            for (int c = 0; c <= col; ++c) std::getline(ss, cell, ',');
            return std::stod(cell);
        }
    }
    FAIL("row with key " + key + " not found");
    return 0.0;
}

} // namespace

TEST_CASE("solve emits CSV with the expected H(1)") {
    const auto r = run_cli(
        "solve --kernel '{\"family\":\"constant\",\"C\":1}' --T 2 --h 0.001");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("# kernel=", 0) == 0);
    CHECK(r.out.find("# artifact_version=1") != std::string::npos);
    CHECK(r.out.find("# config=") != std::string::npos);
    CHECK(r.out.find("t,G,H") != std::string::npos);
    const double H1 = csv_lookup(r.out, "1", 2);
    CHECK(std::abs(H1 - 1.5906) < 1e-3);
}

TEST_CASE("reruns with identical config are byte-identical") {
    const std::string args =
        "series --kernel '{\"family\":\"exponential\",\"c\":1,\"delta\":1}' "
        "--t 0 --s 0.5 --nmax 4 --seed 7 --mc-samples 2000";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("n,B_n,stderr") != std::string::npos);
}

TEST_CASE("lambdac reports a converged root for the exponential family") {
    const auto r = run_cli(
        "lambdac --kernel '{\"family\":\"exponential\",\"c\":1,\"delta\":0.5}'");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\"method\": \"bessel-zero\"") != std::string::npos);
    const auto pos = r.out.find("\"residual\":");
    REQUIRE(pos != std::string::npos);
    const double residual = std::stod(r.out.substr(pos + 11));
    CHECK(residual < 1e-8);
    CHECK(r.out.find("\"lambda_c\":") != std::string::npos);
}

TEST_CASE("fit subcommand emits the asymptotics report") {
    const auto r = run_cli(
        "fit --kernel '{\"family\":\"constant\",\"C\":1}' --T 30 --h 0.01");
    REQUIRE(r.code == 0);
    for (const char* field : {"\"lambda_hat\"", "\"p_hat\"", "\"lnA_hat\"", "\"rms\"",
                              "\"spread\""})
        CHECK(r.out.find(field) != std::string::npos);
}

TEST_CASE("mc subcommand writes the trace table and respects --out") {
    const std::string path = "/tmp/kraichnan_mc_test.csv";
    const auto r = run_cli(
        "mc --kernel '{\"family\":\"constant\",\"C\":1}' --N 16 --S 4 --T 0.5 "
        "--h 0.05 --seed 3 --out " + path);
    REQUIRE(r.code == 0);
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    std::remove(path.c_str());
    CHECK(ss.str().find("s,mean,trace_stderr") != std::string::npos);
    CHECK(csv_lookup(ss.str(), "0", 1) == 1.0);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("nosuchcommand").code == 2);
    CHECK(run_cli("solve --T 1 --h 0.1").code == 2); // missing --kernel
    CHECK(run_cli("solve --kernel '{\"family\":\"bogus\"}' --T 1 --h 0.1").code == 2);
    CHECK(run_cli("solve --kernel '{\"family\":\"constant\",\"C\":1}' --T 1 --h 0.1 "
                  "--unknown-flag 3").code == 2);
    // seed is mandatory for Monte Carlo series orders
    CHECK(run_cli("series --kernel '{\"family\":\"constant\",\"C\":1}' --t 0 --s 0.5 "
                  "--nmax 4").code == 2);
    // non-stationary kernel in the stationary solver is API misuse
    CHECK(run_cli("solve --kernel '{\"family\":\"ratio_flat\",\"C\":1,\"a\":1}' "
                  "--T 1 --h 0.1").code == 2);
}

TEST_CASE("domain errors exit 3") {
    CHECK(run_cli("solve --kernel '{\"family\":\"constant\",\"C\":1}' --T 1 --h -0.1")
              .code == 3);
    CHECK(run_cli("solve --kernel '{\"family\":\"constant\",\"C\":1}' --T -1 --h 0.1")
              .code == 3);
    CHECK(run_cli("lambdac --kernel "
                  "'{\"family\":\"exponential\",\"c\":100,\"delta\":0.001}'")
              .code == 0); // asymptotic branch covers large z
    CHECK(run_cli("mc --kernel '{\"family\":\"constant\",\"C\":1}' --N 1 --S 2 --T 0.5 "
                  "--h 0.1 --seed 1").code == 3);
}

TEST_CASE("solve2d emits the triangular field") {
    const auto r = run_cli(
        "solve2d --kernel '{\"family\":\"ratio_flat\",\"C\":1,\"a\":1}' --t0 1 --T 1.5 "
        "--h 0.05");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("s,t,G,H") != std::string::npos);
    // diagonal rows H(t,t) = 1
    CHECK(r.out.find("1.5,1.5,1,1") != std::string::npos);
}

TEST_CASE("laplace subcommand evaluates the transform on a grid") {
    const auto r = run_cli(
        "laplace --kernel '{\"family\":\"constant\",\"C\":0}' --lambda 2 4 --T 20 --h 0.005");
    REQUIRE(r.code == 0);
    CHECK(std::abs(csv_lookup(r.out, "2", 1) - 0.5) < 1e-5);
    CHECK(std::abs(csv_lookup(r.out, "4", 1) - 0.25) < 1e-5);
}

TEST_CASE("flatcheck emits the rate table") {
    const auto r = run_cli(
        "flatcheck --kernel '{\"family\":\"ratio_flat\",\"C\":1,\"a\":1}' --t 5 10 "
        "--gap 6 --h 0.05");
    REQUIRE(r.code == 0);
    const double s5 = csv_lookup(r.out, "5", 1);
    const double s10 = csv_lookup(r.out, "10", 1);
    CHECK(s5 < s10);
    CHECK(s10 < 2.0);
}

TEST_CASE("validate subcommand runs the invariant suites") {
    const auto r = run_cli("validate");
    CHECK(r.code == 0);
    CHECK(r.out.find("all module invariants hold") != std::string::npos);
}

TEST_CASE("help exits 0") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("solve --help").code == 0);
}
