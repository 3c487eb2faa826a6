#include <array>
#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include <adaptkw/evaluate.hpp>

namespace {

using adaptkw::DocumentScore;
using adaptkw::EvalReport;
using adaptkw::evaluate_document;
using adaptkw::PrfTriple;

TEST(Metrics, MatchesHandComputedTable) {
    struct Case {
        std::vector<std::string> extracted;
        std::unordered_set<std::string> gold;
        double p, r, f;
    };
    const std::vector<Case> table = {
        {{"a", "b", "c"}, {"b", "c", "d"}, 2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0},
        {{"a", "b"}, {"a", "b"}, 1.0, 1.0, 1.0},
        {{"a", "b"}, {"x", "y"}, 0.0, 0.0, 0.0},
        {{}, {"x"}, 0.0, 0.0, 0.0},
        {{"a"}, {"a", "b", "c", "d"}, 1.0, 0.25, 0.4},
        {{"a", "b", "c", "d"}, {"a"}, 0.25, 1.0, 0.4},
    };
    for (size_t i = 0; i < table.size(); ++i) {
        PrfTriple got = evaluate_document(table[i].extracted, table[i].gold);
        EXPECT_NEAR(got.precision, table[i].p, 1e-15) << "case " << i;
        EXPECT_NEAR(got.recall, table[i].r, 1e-15) << "case " << i;
        EXPECT_NEAR(got.f_score, table[i].f, 1e-15) << "case " << i;
    }
}

TEST(Metrics, EmptyGoldThrows) {
    EXPECT_THROW(evaluate_document({"a"}, {}), adaptkw::EmptyGold);
}

TEST(Metrics, PerfectSelfMatchScoresOne) {
    std::vector<std::string> phrases{"alpha", "beta gamma", "delta"};
    std::unordered_set<std::string> gold(phrases.begin(), phrases.end());
    PrfTriple got = evaluate_document(phrases, gold);
    EXPECT_DOUBLE_EQ(got.precision, 1.0);
    EXPECT_DOUBLE_EQ(got.recall, 1.0);
    EXPECT_DOUBLE_EQ(got.f_score, 1.0);
}

TEST(Metrics, MacroIsArithmeticMean) {
    EvalReport report;
    report.mode = "benchmark";
    report.k = 10;
    const std::vector<std::array<double, 3>> rows = {
        {0.1, 0.2, 0.3}, {0.5, 0.25, 0.125}, {1.0, 0.0, 0.75}, {0.33, 0.66, 0.99}};
    double sp = 0, sr = 0, sf = 0;
    for (const auto& r : rows) {
        report.per_document.push_back(
            DocumentScore{"d", r[0], r[1], r[2], false});
        sp += r[0];
        sr += r[1];
        sf += r[2];
    }
    adaptkw::finalize_macros(report);
    EXPECT_NEAR(report.macro_precision, sp / 4.0, 1e-12);
    EXPECT_NEAR(report.macro_recall, sr / 4.0, 1e-12);
    EXPECT_NEAR(report.macro_f, sf / 4.0, 1e-12);
}

TEST(Render, FormatsPercentagesWithThreeDecimals) {
    EvalReport report;
    report.mode = "benchmark";
    report.k = 10;
    report.macro_precision = 0.2798601;
    report.macro_recall = 0.4;
    report.macro_f = 0.35138;
    std::string table = adaptkw::render_table({report});
    EXPECT_NE(table.find("35.138"), std::string::npos) << table;
    EXPECT_NE(table.find("27.986"), std::string::npos);
    EXPECT_NE(table.find("40.000"), std::string::npos);
    EXPECT_NE(table.find("Benchmark"), std::string::npos);
    EXPECT_NE(table.find("F-Score"), std::string::npos);
}

TEST(Render, KeepsRequestedRowOrder) {
    std::vector<EvalReport> reports(4);
    reports[0].mode = "benchmark";
    reports[1].mode = "zero-shot";
    reports[2].mode = "few-shot";
    reports[3].mode = "zero+few-shot";
    std::string table = adaptkw::render_table(reports);
    size_t b = table.find("Benchmark");
    size_t z = table.find("Zero-Shot");
    size_t f = table.find("Few-Shot");
    size_t c = table.find("Zero-Shot & Few-Shot");
    ASSERT_NE(b, std::string::npos);
    ASSERT_NE(z, std::string::npos);
    ASSERT_NE(f, std::string::npos);
    ASSERT_NE(c, std::string::npos);
    EXPECT_LT(b, z);
    EXPECT_LT(z, f);
    EXPECT_LT(f, c);
}

TEST(Render, MachineLinesRoundTripExactly) {
    EvalReport report;
    report.mode = "zero+few-shot";
    report.k = 10;
    report.macro_precision = 1.0 / 3.0;
    report.macro_recall = 0.1 + 0.2;  // 0.30000000000000004
    report.macro_f = 0.35138;
    std::string lines = adaptkw::render_machine_lines({report});
    auto parsed = nlohmann::json::parse(lines);
    EXPECT_EQ(parsed["mode"], "zero+few-shot");
    EXPECT_EQ(parsed["k"], 10);
    EXPECT_EQ(parsed["macro_precision"].get<double>(), 1.0 / 3.0);
    EXPECT_EQ(parsed["macro_recall"].get<double>(), 0.1 + 0.2);
    EXPECT_EQ(parsed["macro_f"].get<double>(), 0.35138);
}

TEST(Stemming, FoldsSimplePlurals) {
    EXPECT_EQ(adaptkw::stem_phrase("policies"), "policy");
    EXPECT_EQ(adaptkw::stem_phrase("fisheries"), "fishery");
    EXPECT_EQ(adaptkw::stem_phrase("stocks"), "stock");
    EXPECT_EQ(adaptkw::stem_phrase("glass"), "glass");
    EXPECT_EQ(adaptkw::stem_phrase("bus"), "bus");
    EXPECT_EQ(adaptkw::stem_phrase("analysis"), "analysis");
    EXPECT_EQ(adaptkw::stem_phrase("wind turbines"), "wind turbine");
    EXPECT_EQ(adaptkw::stem_phrase("as"), "as");  // too short to fold
}

}  // namespace
