#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cesaro/reports.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string out_path = "cli_stdout_" + std::to_string(counter) + ".txt";
    const std::string err_path = "cli_stderr_" + std::to_string(counter) + ".txt";
    ++counter;
    const std::string cmd = std::string(CESARO_CLI_PATH) + " " + args + " > " +
                            out_path + " 2> " + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

}  // namespace

TEST_CASE("norm command") {
    const RunResult r = run_cli("norm --p 4/3 --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::fabs(j["norm"].get<double>() - 3.0) <= 1e-12);
    CHECK(j["branch"] == "1/(p-1)");

    const RunResult inf = run_cli("norm --p inf");
    REQUIRE(inf.exit_code == 0);
    CHECK(inf.out.find("norm = 2") != std::string::npos);

    const RunResult three = run_cli("norm --p 3");
    REQUIRE(three.exit_code == 0);
    CHECK(three.out.find("1.1951439825080237") != std::string::npos);

    CHECK(run_cli("norm --p 0.5").exit_code == 2);
    CHECK(run_cli("norm --p 1").exit_code == 2);
    CHECK(run_cli("norm --p banana").exit_code == 2);
    CHECK(run_cli("norm").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("mp command reports the critical point") {
    const RunResult r = run_cli("mp --p 4 --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::fabs(j["t_p"].get<double>() - 1.0 / 3.0) <= 1e-12);
    CHECK(std::fabs(j["m_p"].get<double>() - 1.0 / 3.0) <= 1e-12);
    CHECK(run_cli("mp --p 2").exit_code == 2);
}

TEST_CASE("table command emits parseable deterministic csv") {
    const std::string path = "cli_table.csv";
    const RunResult r =
        run_cli("table --from 1.1 --to 4 --step 0.1 --out " + path);
    REQUIRE(r.exit_code == 0);
    const std::string text = slurp(path);
    std::remove(path.c_str());

    const auto rows = cesaro::parse_csv(text);
    REQUIRE(rows.size() >= 30);
    CHECK(rows[0] == std::vector<std::string>{"p", "norm", "t_p", "m_p", "dual",
                                              "transpose_norm"});
    bool saw_two = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 6);
        // bit-exact round trip of every numeric cell
        for (std::size_t c = 0; c < rows[i].size(); ++c) {
            if (rows[i][c].empty()) {
                continue;
            }
            const double v = std::strtod(rows[i][c].c_str(), nullptr);
            CHECK(cesaro::format_double(v) == rows[i][c]);
        }
        if (rows[i][0] == "2") {
            saw_two = true;
            CHECK(rows[i][1] == "1");
            CHECK(rows[i][2].empty());
            CHECK(rows[i][3].empty());
            CHECK(rows[i][4] == "2");
            CHECK(rows[i][5] == "1");
        }
    }
    CHECK(saw_two);

    CHECK(run_cli("table --from 2 --to 1.5").exit_code == 2);
    CHECK(run_cli("table --from 1.1 --to 4 --step 0").exit_code == 2);
}

TEST_CASE("verify suites and their exit codes") {
    const RunResult ok = run_cli("verify lemma1 --p 4 --points 2000");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("lemma1") != std::string::npos);
    // csv is the default shape for verify output
    CHECK(ok.out.find("name,p,grid_size,worst_margin,worst_point,passed") !=
          std::string::npos);
    CHECK(ok.err.find("checks passed") != std::string::npos);

    // 3 is not an admissible signed-power exponent
    const RunResult gated = run_cli("verify lemma1 --p 3");
    CHECK(gated.exit_code == 2);
    CHECK(gated.err.find("even/odd") != std::string::npos);

    CHECK(run_cli("verify bogus").exit_code == 2);
    CHECK(run_cli("verify mvt --p 10/3 --pairs 500").exit_code == 0);
    CHECK(run_cli("verify tangent --points 5000").exit_code == 0);
    CHECK(run_cli("verify logpiece --points 2000").exit_code == 0);
    CHECK(run_cli("verify identities").exit_code == 0);
}

TEST_CASE("section command with trace dump") {
    const std::string trace = "cli_trace.txt";
    const RunResult r = run_cli(
        "section --p 4 --N 256 --starts 2 --max-iter 200 --format json "
        "--trace-out " +
        trace);
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["lower_bound"].get<double>() > 1.0);
    CHECK(j["lower_bound"].get<double>() <=
          j["analytic"].get<double>() * (1.0 + 1e-9));

    std::ifstream tf(trace);
    REQUIRE(tf.good());
    double prev = 0.0;
    double v = 0.0;
    int count = 0;
    while (tf >> v) {
        CHECK(v >= prev * (1.0 - 1e-13));
        prev = v;
        ++count;
    }
    CHECK(count == j["iterations"].get<int>());
    std::remove(trace.c_str());

    CHECK(run_cli("section --p 4 --N 256 --kind sideways").exit_code == 2);
    CHECK(run_cli("section --p 4 --N 256 --tol 0.5").exit_code == 2);
    CHECK(run_cli("section --p 4 --N 256 --tol 1e-16").exit_code == 2);
}

TEST_CASE("transpose section from the command line") {
    const RunResult r = run_cli(
        "section --p 4 --N 256 --kind transpose --starts 3 --max-iter 300 "
        "--format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["kind"] == "cesaro_transpose");
    CHECK(j["analytic"].get<double>() == 3.0);
    CHECK(j["lower_bound"].get<double>() <= 3.0 + 1e-9);
    CHECK(j["lower_bound"].get<double>() > 1.0);
}

TEST_CASE("section accepts a start vector from a file") {
    const std::string path = "cli_seed.txt";
    {
        std::ofstream out(path);
        for (int n = 1; n <= 64; ++n) {
            out << 1.0 / n << "\n";
        }
    }
    const RunResult r = run_cli("section --p 2 --N 64 --max-iter 500 --x0 " +
                                path + " --format json");
    std::remove(path.c_str());
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["lower_bound"].get<double>() > 0.9);
    CHECK(j["lower_bound"].get<double>() <= 1.0 + 1e-9);

    CHECK(run_cli("section --p 2 --N 64 --x0 missing.txt").exit_code == 1);
}

TEST_CASE("section output is byte deterministic") {
    const std::string cmd =
        "section --p 3 --N 128 --starts 3 --max-iter 150 --seed 0xFEED "
        "--format json";
    const RunResult a = run_cli(cmd);
    const RunResult b = run_cli(cmd);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("extremal command") {
    const RunResult r = run_cli("extremal --p 4 --m 10 --N 10000 --format json");
    REQUIRE(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["ratio_p"].get<double>() < 3.0);
    CHECK(j["ratio_p"].get<double>() > 2.0);
    CHECK(j["gap"].get<double>() > 0.0);

    // truncation too small for the certified tail: numeric error, exit 1
    CHECK(run_cli("extremal --p 4 --m 10 --N 12").exit_code == 1);
    CHECK(run_cli("extremal --p 2 --m 10").exit_code == 2);

    // default truncation is 1000 * m
    const RunResult d = run_cli("extremal --p 4 --m 10 --format json");
    REQUIRE(d.exit_code == 0);
    CHECK(nlohmann::json::parse(d.out)["N"].get<std::int64_t>() == 10000);
}

TEST_CASE("continuous and interp commands") {
    const RunResult c = run_cli(
        "continuous --p 4 --panels 2000 --cut 100 --families 4 --format json");
    REQUIRE(c.exit_code == 0);
    const auto j = nlohmann::json::parse(c.out);
    CHECK(std::fabs(j["ratio"].get<double>() - 3.0) <= 1e-11);
    CHECK(j["identity_defect"].get<double>() <= 1e-11);
    CHECK(j["quadrature_discrepancy"].get<double>() <= 1e-5);
    CHECK(j["dual_step_worst_ratio"].get<double>() <= 1.0 + 1e-9);

    const RunResult i = run_cli("interp --p0 3 --p 3.5 --p1 4 --N 64");
    CHECK(i.exit_code == 0);
    CHECK(i.out.find("holds = true") != std::string::npos);
    CHECK(run_cli("interp --p0 3 --p 3 --p1 3 --N 64").exit_code == 2);
}
