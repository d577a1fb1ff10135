#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"
#include "orlicz/report.hpp"
#include "orlicz/suites.hpp"

using namespace orlicz;

TEST(Report, Fnv1a) {
    EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(hash_hex(0xabcULL), "0000000000000abc");
}

TEST(Report, CsvFormat) {
    const std::vector<CheckRow> rows{{"x", 1, 0.5, 1e-12, Verdict::pass}, {"y", 2, -0.25, 0.0, Verdict::fail}};
    EXPECT_EQ(rows_csv(rows),
              "check_id,instance_hash,margin,tol,verdict\n"
              "x,0000000000000001,0.5,9.9999999999999998e-13,pass\n"
              "y,0000000000000002,-0.25,0,fail\n");
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(Report, SummaryCounts) {
    const std::vector<CheckRow> rows{{"a", 1, 0.5, 0.0, Verdict::pass},
                                     {"a", 2, 0.0, 0.0, Verdict::vacuous},
                                     {"b", 3, 0.1, 0.01, Verdict::pass}};
    const auto j = nlohmann::json::parse(summary_json("na", 7, rows));
    EXPECT_EQ(j["counts"]["pass"], 2);
    EXPECT_EQ(j["counts"]["vacuous"], 1);
    EXPECT_EQ(j["checks"]["a"]["vacuous"], 1);
    EXPECT_EQ(j["tightest"]["check_id"], "b");
    EXPECT_EQ(j["seed"], 7);
}

TEST(Parse, Balls) {
    EXPECT_EQ(parse_ball(R"({"type": "lp", "n": 3, "p": 2})").dim(), 3u);
    EXPECT_DOUBLE_EQ(parse_ball(R"({"type": "cube", "n": 2, "half_width": 0.5})").radius(1), 0.5);
    EXPECT_DOUBLE_EQ(parse_ball(R"({"type": "box", "half_widths": [1, 2]})").radius(1), 2.0);
    const auto K = parse_ball(R"({"type": "functions", "functions": [
        {"kind": "power", "p": 2},
        {"kind": "points", "points": [[0, 0], [0.5, 0], [1, 1]], "cap": 2}]})");
    EXPECT_DOUBLE_EQ(K.young(1)(0.75), 0.5);
    EXPECT_THROW(parse_ball(R"({"type": "lp", "n": 2)"), std::invalid_argument);
    EXPECT_THROW(parse_ball(R"({"type": "simplex", "n": 2})"), std::invalid_argument);
    EXPECT_THROW(parse_ball(R"({"type": "lp", "n": 2})"), std::invalid_argument);
    EXPECT_THROW(parse_ball(R"({"type": "functions", "functions": [{"kind": "points", "points": [[0, 0], [1, 2], [2, 3]]}]})"),
                 std::invalid_argument);
}

TEST(Parse, YoungList) {
    const auto K = parse_ball(R"({"young": [
        {"type": "power", "p": 2.0, "scale": 1.0},
        {"type": "pieces", "points": [[0, 0], [0.5, 0], [1, 1]], "interp": "linear"},
        {"type": "pieces", "points": [[0, 0], [1, "inf"]]}]})");
    ASSERT_EQ(K.dim(), 3u);
    EXPECT_DOUBLE_EQ(K.young(1)(0.75), 0.5);
    EXPECT_EQ(K.young(2)(0.5), 0.0);
    EXPECT_TRUE(std::isinf(K.young(2)(1.5)));
    EXPECT_DOUBLE_EQ(K.radius(2), 1.0);
    EXPECT_THROW(parse_ball(R"({"young": []})"), std::invalid_argument);
    EXPECT_THROW(parse_ball(R"({"young": [{"type": "pieces", "points": [[0, 0], [1, "big"]]}]})"),
                 std::invalid_argument);
}

TEST(Suites, NamesAndParts) {
    EXPECT_EQ(suite_names().size(), 8u);
    EXPECT_EQ(suite_parts("bm").size(), 2u);
    EXPECT_THROW(suite_parts("nope"), std::invalid_argument);
    EXPECT_THROW(run_part("nope", {}), std::invalid_argument);
}

TEST(Suites, PartIsDeterministic) {
    SuiteOptions a;
    a.instances = 5;
    a.nodes = 32;
    SuiteOptions b = a;
    b.workers = 4;
    const auto ra = run_part("four_term", a);
    EXPECT_EQ(rows_csv(ra), rows_csv(run_part("four_term", b)));
    SuiteOptions c = a;
    c.seed = 2;
    EXPECT_NE(rows_csv(ra), rows_csv(run_part("four_term", c)));
}

TEST(Suites, TolFloorWidensEveryRow) {
    SuiteOptions a;
    a.instances = 3;
    a.nodes = 32;
    SuiteOptions b = a;
    b.tol_floor = 0.5;
    const auto ra = run_part("bm", a), rb = run_part("bm", b);
    ASSERT_EQ(ra.size(), rb.size());
    for (std::size_t i = 0; i < ra.size(); ++i)
        if (ra[i].verdict != Verdict::vacuous) EXPECT_DOUBLE_EQ(rb[i].tol, ra[i].tol + 0.5);
}
