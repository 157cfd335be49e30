#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "risopt/result_io.hpp"
#include "test_support.hpp"

using namespace risopt;

namespace {

OptimizationResult small_result() {
    ScenarioConfig cfg;
    SearchParams p;
    p.grid_x = 3;
    p.grid_y = 3;
    p.grid_theta = 2;
    p.element_counts = {128, 512};
    p.alphas = {0.0, 1.0};
    p.elites = 2;
    p.max_rounds = 2;
    return iterative_search(cfg, p);
}

std::string integrity_message(const nlohmann::json& doc) {
    try {
        check_integrity(parse_result(doc));
    } catch (const IntegrityError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(ResultJson, RoundTripPreservesEverything) {
    const auto r = small_result();
    ASSERT_NO_THROW(check_integrity(r));
    const auto doc = to_json(r, {"hash", 1, kToolVersion});
    EXPECT_EQ(doc.at("result_schema"), 1);
    EXPECT_EQ(doc.at("representatives").size(), 4u);
    const auto back = parse_result(nlohmann::json::parse(doc.dump()));
    ASSERT_EQ(back.candidates.size(), r.candidates.size());
    for (std::size_t i = 0; i < r.candidates.size(); ++i) {
        EXPECT_EQ(back.candidates[i].ris, r.candidates[i].ris);
        EXPECT_EQ(back.candidates[i].metrics, r.candidates[i].metrics);
        EXPECT_EQ(back.candidates[i].objective, r.candidates[i].objective);
        EXPECT_EQ(back.candidates[i].round, r.candidates[i].round);
    }
    EXPECT_EQ(back.representatives, r.representatives);
    EXPECT_EQ(back.round_best_scalar, r.round_best_scalar);
    EXPECT_NO_THROW(check_integrity(back));
}

TEST(ResultJson, BalancedWorseThanACandidateIsRejected) {
    const auto r = small_result();
    auto doc = to_json(r, {"hash", 1, kToolVersion});
    const auto bal = r.representatives.balanced;
    const std::size_t other = bal == 0 ? 1 : 0;
    // Lower another candidate's scalar below the balanced one while keeping its components consistent.
    auto& c = doc["candidates"][other];
    c["normalized"] = {0.0, 0.0, 0.0};
    c["scalar"] = 0.0;
    auto& b = doc["candidates"][bal];
    const auto& rep = r.candidates[bal];
    if (rep.objective.scalar == 0.0) {
        b["normalized"] = {0.5, 0.0, 0.0};
        b["scalar"] = 0.5;
        doc["representatives"]["balanced"] = b;
    }
    EXPECT_NE(integrity_message(doc).find("balanced scalar"), std::string::npos);
}

TEST(ResultJson, EmptyCandidateListIsRejected) {
    auto doc = to_json(small_result(), {"hash", 1, kToolVersion});
    doc["candidates"] = nlohmann::json::array();
    EXPECT_NE(integrity_message(doc).find("result integrity"), std::string::npos);

    OptimizationResult empty;
    EXPECT_THROW(check_integrity(empty), IntegrityError);
}

TEST(ResultJson, TamperedRepresentativeIsRejected) {
    const auto r = small_result();
    auto doc = to_json(r, {"hash", 1, kToolVersion});
    doc["representatives"]["best_snr_b"]["snr_b_db"] = 1e6;
    EXPECT_NE(integrity_message(doc).find("does not match"), std::string::npos);
    doc = to_json(r, {"hash", 1, kToolVersion});
    doc["candidates"][0]["security_gap_db"] = 12345.0;
    EXPECT_FALSE(integrity_message(doc).empty());
    doc = to_json(r, {"hash", 1, kToolVersion});
    doc.erase("representatives");
    EXPECT_NE(integrity_message(doc).find("malformed"), std::string::npos);
}

TEST(ResultTable, HasRepresentativeColumns) {
    const auto table = format_table(small_result());
    for (const char* column : {"Solutions", "RIS position", "theta/rad", "N", "alpha", "SNR_B", "SNR_T",
                               "security gap"}) {
        EXPECT_NE(table.find(column), std::string::npos) << column;
    }
    for (const char* row : {"Best \xce\x94SNR_B", "Best security gap", "Best sensing gain", "Balanced"}) {
        EXPECT_NE(table.find(row), std::string::npos) << row;
    }
}
