#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include <sys/wait.h>

using nlohmann::json;

namespace {

const std::string cli = LATPROP_CLI_PATH;
const std::string spec_dir = LATPROP_SPEC_DIR;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run(const std::string& args) {
    const std::string out_path = "cli_test_stdout.txt";
    const std::string err_path = "cli_test_stderr.txt";
    const int status = std::system((cli + " " + args + " > " + out_path + " 2> " + err_path).c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

} // namespace

TEST_CASE("bessel subcommand cross-checks itself") {
    const RunResult r = run("--json bessel --nu 4 --t 3");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep["pass"] == true);
    CHECK(std::abs(rep["value"].get<double>() - 0.13203418392461221) < 1e-12);
}

TEST_CASE("kernel subcommand with block and spectrum dumps") {
    const RunResult r =
        run("--json kernel --graph c3q --d 2 --t 1.5 --offset \"1,0\" --p 0 --q 2 --block "
            "--dump-spectrum");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep["offset"] == json::array({1, 0}));
    CHECK(rep["block"]["re"].size() == 3);
    CHECK(rep["block"]["nu"] == json::array({1, 0}));
    CHECK(rep["spectrum"]["eigenvalues"].size() == 3);
    const double abs_value = rep["abs"].get<double>();
    CHECK(abs_value > 0.0);
    CHECK(abs_value <= 1.0);
}

TEST_CASE("verify passes on a spec file path") {
    const RunResult r = run("--json verify --graph " + spec_dir + "/p2.json --d 1 --t 2");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep["pass"] == true);
    CHECK(rep["oracle_max_error"].get<double>() < 1e-8);
    CHECK(rep["quadrature_max_error"].get<double>() < 1e-11);
    CHECK(rep["L"] == 29);
}

TEST_CASE("no-dispersion reports the 2-path floor") {
    const RunResult r = run("--json no-dispersion --graph p2 --t-max 100");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep["pass"] == true);
    CHECK(rep["min_inf_norm"].get<double>() >= 0.7071);
    CHECK(rep["bound"].get<double>() == doctest::Approx(0.70710678118654746));
}

TEST_CASE("scan + fit pipeline recovers the decay exponent") {
    const std::string csv = "cli_test_series.csv";
    const RunResult scan =
        run("scan --graph p2 --d 1 --t-min 10 --t-max 500 --points 48 --out " + csv);
    REQUIRE(scan.exit_code == 0);
    {
        std::ifstream in(csv);
        std::string header;
        std::getline(in, header);
        CHECK(header == "t,sup_norm,envelope,bound");
    }
    const RunResult fit = run("fit --in " + csv + " --t-min 10");
    REQUIRE(fit.exit_code == 0);
    const json rep = json::parse(fit.out);
    CHECK(std::abs(rep["exponent"].get<double>() + 1.0 / 3.0) < 0.05);
    CHECK(rep["points_used"] == 48);

    const RunResult raw = run("fit --in " + csv + " --t-min 10 --column sup_norm --running-max");
    REQUIRE(raw.exit_code == 0);
    std::remove(csv.c_str());
}

TEST_CASE("deterministic output under a fixed seed and any thread count") {
    const std::string cmd = "--json verify --graph c3q --d 1 --t 2 --seed 9";
    const RunResult a = run(cmd);
    const RunResult b = run(cmd);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    const std::string scan_args = "scan --graph star3 --d 2 --t-min 0.5 --t-max 20 --points 30";
    const RunResult s1 = run(scan_args);
    const int status = std::system(
        ("LATPROP_THREADS=4 " + cli + " " + scan_args + " > cli_threads.txt 2> /dev/null").c_str());
    REQUIRE(WEXITSTATUS(status) == 0);
    CHECK(s1.out == slurp("cli_threads.txt"));
    std::remove("cli_threads.txt");
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("scan --graph p2 --d 1 --t-min 5 --t-max 5 --points 10").exit_code == 2);
    CHECK(run("verify --graph no_such_graph --d 1 --t 1").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("verify --graph p2").exit_code == 2);  // missing required options
    CHECK(run("no-dispersion --graph p2 --t-max -3").exit_code == 2);
}

TEST_CASE("malformed JSON specs exit with code 2 and name the field") {
    const std::string bad = "cli_test_bad.json";
    {
        std::ofstream out(bad);
        out << R"({"kind":"tree","size":3})";
    }
    const RunResult r = run("verify --graph " + bad + " --d 1 --t 1");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("'kind'") != std::string::npos);
    {
        std::ofstream out(bad);
        out << R"({"kind":"cycle","size":2})";
    }
    const RunResult r2 = run("kernel --graph " + bad + " --d 1 --t 1");
    CHECK(r2.exit_code == 2);
    CHECK(r2.err.find("size") != std::string::npos);
    std::remove(bad.c_str());
}

TEST_CASE("help exits cleanly") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("scan --help").exit_code == 0);
}
