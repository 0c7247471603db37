#include <gtest/gtest.h>

#include "ecaprog/json_io.hpp"

using namespace ecaprog;

TEST(FormatReal, StableDecimal) {
    EXPECT_EQ(format_real(0.1234567891234), "0.123456789");
    EXPECT_EQ(format_real(-1e-12), "0.000000000");
    EXPECT_EQ(format_real(2.5, 2), "2.50");
}

TEST(Json, ProgrammabilityReportShape) {
    const auto r = programmability_coefficient(rule_table(30), 12, 4, 40, 20, builtin_lzss());
    const auto j = to_json(r);
    EXPECT_EQ(j["rule"], 30);
    EXPECT_EQ(j["compressor"], "builtin-lzss");
    ASSERT_EQ(j["points"].size(), 2u);
    EXPECT_EQ(j["points"][1]["t"], 40);
    EXPECT_TRUE(j.contains("slope"));
    EXPECT_TRUE(j.contains("r2"));
    EXPECT_EQ(j.dump(), to_json(r).dump());
}

TEST(Json, ClassEstimateShape) {
    ClassifyParams p;
    p.n_inputs = 3;
    const auto j = to_json(classify_rule(rule_table(0), p, builtin_lzss()), p);
    EXPECT_EQ(j["label"], "class1");
    EXPECT_EQ(j["params"]["n_inputs"], 3);
    const std::vector<std::string> keys{"rule", "label", "terminal_ratio", "slope", "input_variability",
                                        "cumulative_ratio", "params"};
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) EXPECT_EQ(it.key(), keys[i]);
}

TEST(Csv, CurveRows) {
    const auto c = compression_curve(rule_table(0), Configuration(10), 20, 10, builtin_lzss());
    const auto rows = curve_csv_rows(c, 7);
    EXPECT_EQ(curve_csv_header(), "rule,width,seed,t,c_bits,u_bits,ratio\n");
    EXPECT_EQ(rows.substr(0, 10), "0,10,7,10,");
    EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 2);
}

TEST(Json, AssessmentShape) {
    const auto a = assess(reference_agent(AgentKind::periodic), 100, kDefaultAssessSeeds, builtin_lzss());
    const auto j = to_json(a);
    EXPECT_EQ(j["agent"], "periodic");
    EXPECT_EQ(j["per_stream_c_bits"].size(), 3u);
    EXPECT_TRUE(j.contains("variability"));
    EXPECT_TRUE(j.contains("controllability"));
    EXPECT_TRUE(j.contains("label"));
}
