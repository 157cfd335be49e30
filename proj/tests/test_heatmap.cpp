#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "risopt/config_io.hpp"
#include "risopt/heatmap.hpp"
#include "test_support.hpp"

using namespace risopt;
using risopt::testing::TempDir;

TEST(SweepGrid, DimensionsFollowCellSize) {
    const ScenarioConfig cfg;
    const auto grids = sweep_grid(cfg, {0.074, 512, 0.19}, 10.0, kAllHeatmapMetrics);
    ASSERT_EQ(grids.size(), 4u);
    for (const auto& g : grids) {
        EXPECT_EQ(g.rows, 10);
        EXPECT_EQ(g.cols, 10);
        EXPECT_EQ(g.values.size(), 100u);
        for (const double v : g.values) EXPECT_TRUE(std::isfinite(v));
    }
    EXPECT_EQ(grids[0].cell_center(0, 0), (Point2D{5.0, 5.0}));
    EXPECT_EQ(grids[0].cell_center(9, 0), (Point2D{5.0, 95.0}));
}

TEST(SweepGrid, SingleCellScalarIsZero) {
    ScenarioConfig cfg;
    cfg.area = {0, 10, 0, 10};
    cfg.bs = {20, 20};
    const HeatmapMetric metric[] = {HeatmapMetric::scalar_objective};
    const auto grids = sweep_grid(cfg, {0.0, 64, 0.5}, 10.0, metric);
    ASSERT_EQ(grids[0].values.size(), 1u);
    EXPECT_EQ(grids[0].values[0], 0.0);
}

TEST(SweepGrid, RejectsCellSizeThatDoesNotDivide) {
    const ScenarioConfig cfg;
    EXPECT_THROW(sweep_grid(cfg, {0.0, 512, 0.5}, 3.0, kAllHeatmapMetrics), std::invalid_argument);
    EXPECT_THROW(sweep_grid(cfg, {0.0, 512, 0.5}, 0.0, kAllHeatmapMetrics), std::invalid_argument);
    EXPECT_THROW(sweep_grid(cfg, {0.0, 512, 0.5}, 200.0, kAllHeatmapMetrics), std::invalid_argument);
    EXPECT_THROW(sweep_grid(cfg, {0.0, 512, 1.5}, 10.0, kAllHeatmapMetrics), ConfigError);
}

TEST(SweepGrid, DeterministicAcrossWorkerCounts) {
    const ScenarioConfig cfg;
    const auto a = sweep_grid(cfg, {0.5, 256, 0.4}, 5.0, kAllHeatmapMetrics, 1);
    const auto b = sweep_grid(cfg, {0.5, 256, 0.4}, 5.0, kAllHeatmapMetrics, 4);
    EXPECT_EQ(a, b);
}

TEST(SweepGrid, CellValuesIndependentOfResolution) {
    // 30 m cells centered at 15, 45, 75 coincide with every third 10 m cell center.
    ScenarioConfig cfg;
    cfg.area = {0, 90, 0, 90};
    const HeatmapMetric metrics[] = {HeatmapMetric::delta_snr_b, HeatmapMetric::sensing_gain,
                                     HeatmapMetric::security_gap};
    const auto coarse = sweep_grid(cfg, {0.3, 512, 0.6}, 30.0, metrics);
    const auto fine = sweep_grid(cfg, {0.3, 512, 0.6}, 10.0, metrics);
    for (std::size_t m = 0; m < coarse.size(); ++m) {
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                ASSERT_EQ(coarse[m].cell_center(r, c), fine[m].cell_center(3 * r + 1, 3 * c + 1));
                EXPECT_EQ(coarse[m].at(r, c), fine[m].at(3 * r + 1, 3 * c + 1));
            }
        }
    }
}

TEST(SweepGrid, MatchesPointwiseEvaluation) {
    const ScenarioConfig cfg;
    const HeatmapMetric metrics[] = {HeatmapMetric::delta_snr_b, HeatmapMetric::security_gap};
    const auto grids = sweep_grid(cfg, {1.0, 128, 0.8}, 25.0, metrics);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            const auto m = evaluate_candidate(cfg, {grids[0].cell_center(r, c), 1.0, 128, 0.8});
            EXPECT_EQ(grids[0].at(r, c), m.delta_snr_b_db);
            EXPECT_EQ(grids[1].at(r, c), m.security_gap_db);
        }
    }
}

TEST(ExportGrid, TwoByTwoLayout) {
    TempDir dir("grid");
    MetricGrid g;
    g.metric = HeatmapMetric::security_gap;
    g.origin = {0, 0};
    g.cell_size = 50;
    g.rows = 2;
    g.cols = 2;
    g.fixed = {0.074, 512, 0.19};
    g.values = {1.5, -2.25, 3.0, 0.1};
    export_grid(g, dir / "g.csv", {"abc", 7, "0.1.0"});
    const auto text = risopt::testing::read_file(dir / "g.csv");
    EXPECT_EQ(text,
              "# metric: security_gap\n"
              "# origin: 0,0\n"
              "# cell_size: 50\n"
              "# fixed_params: theta=0.074,n=512,alpha=0.19\n"
              "1.5,-2.25\n"
              "3,0.1\n");
    const auto meta = nlohmann::json::parse(risopt::testing::read_file(dir / "g.json"));
    EXPECT_EQ(meta.at("metric"), "security_gap");
    EXPECT_EQ(meta.at("rows"), 2);
    EXPECT_EQ(meta.at("config_hash"), "abc");
    EXPECT_EQ(meta.at("seed"), 7);
    EXPECT_EQ(meta.at("fixed_params").at("alpha"), 0.19);
}

TEST(ExportGrid, RoundTripsExactly) {
    TempDir dir("grid_rt");
    const ScenarioConfig cfg;
    const auto grids = sweep_grid(cfg, {-2.7, 64, 0.333}, 5.0, kAllHeatmapMetrics);
    for (const auto& g : grids) {
        const auto path = dir / (std::string(to_string(g.metric)) + ".csv");
        export_grid(g, path, {config_hash(cfg), cfg.master_seed});
        EXPECT_EQ(risopt::testing::import_grid(path), g);
    }
}

TEST(ExportGrid, UnwritablePathFails) {
    MetricGrid g;
    g.rows = g.cols = 1;
    g.values = {0.0};
    EXPECT_THROW(export_grid(g, "/nonexistent-dir/x/y.csv", {}), std::runtime_error);
}
