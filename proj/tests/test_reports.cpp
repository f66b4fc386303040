#include <doctest.h>

#include <cstdlib>

#include "cesaro/reports.hpp"

using namespace cesaro;

TEST_CASE("printed doubles round trip bit exactly") {
    for (double v : {1.0 / 3.0, -2.5e-17, 4.0, 1e300, 0.1 + 0.2,
                     1.3160740129524924, -0.0, 5e-324}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("csv rows and the reader agree") {
    CheckReport rep;
    rep.name = "lemma1";
    rep.p = 10.0 / 3.0;
    rep.grid_size = 106005;
    rep.worst_margin = -1.25e-13;
    rep.worst_point = 0.42857142857142855;
    rep.passed = true;

    const std::string text = csv_header(rep) + "\n" + to_csv_row(rep) + "\n";
    const auto rows = parse_csv(text);
    REQUIRE(rows.size() == 2);
    REQUIRE(rows[1].size() == 6);
    CHECK(rows[1][0] == "lemma1");
    CHECK(std::strtod(rows[1][1].c_str(), nullptr) == rep.p);
    CHECK(std::strtod(rows[1][3].c_str(), nullptr) == rep.worst_margin);
    CHECK(std::strtod(rows[1][4].c_str(), nullptr) == rep.worst_point);
    CHECK(rows[1][5] == "true");
}

TEST_CASE("json keys match the csv columns") {
    ExtremalReport rep;
    rep.p = 4.0;
    rep.r = 3.0;
    rep.m = 10;
    rep.N = 100000;
    rep.sum_x_p = 1.0;
    rep.sum_z_p = 2.48;
    rep.ratio_p = 2.48;
    rep.analytic_limit = 3.0;
    rep.gap = 0.52;

    const auto j = to_json(rep);
    for (const char* key : {"p", "r", "m", "N", "sum_x_p", "sum_z_p", "ratio_p",
                            "analytic_limit", "gap"}) {
        CHECK(j.contains(key));
    }

    NormEstimate est;
    est.ratio_trace = {0.5, 0.75};
    const auto je = to_json(est);
    CHECK(je.contains("ratio_trace"));
    CHECK(je["ratio_trace"].size() == 2);
    CHECK(je["kind"] == "cesaro");
}
