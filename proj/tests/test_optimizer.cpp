#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "risopt/optimizer.hpp"
#include "test_support.hpp"

using namespace risopt;

namespace {

SearchParams small_params() {
    SearchParams p;
    p.grid_x = 4;
    p.grid_y = 4;
    p.grid_theta = 3;
    p.element_counts = {64, 512};
    p.alphas = {0.0, 0.5, 1.0};
    p.elites = 4;
    p.max_rounds = 3;
    return p;
}

/// All three objectives equal minus the distance to `optimum`.
auto distance_objective(Point2D optimum) {
    return PointwiseEvaluator([optimum](const RisConfig& ris) {
        const double v = -distance(ris.position, optimum);
        MetricBundle m;
        m.snr_b_db = v;
        m.snr_e_db = 0.0;
        m.security_gap_db = v - 0.0;
        m.snr_t_total_db = v;
        m.snr_t_direct_db = 0.0;
        m.sensing_gain_db = v - 0.0;
        return m;
    });
}

bool dominates(const MetricBundle& a, const MetricBundle& b) {
    const auto x = objective_triple(a), y = objective_triple(b);
    bool strict = false;
    for (std::size_t j = 0; j < 3; ++j) {
        if (x[j] < y[j]) return false;
        if (x[j] > y[j]) strict = true;
    }
    return strict;
}

}  // namespace

TEST(InitialGrid, CellCenteredCrossProduct) {
    const auto grid = initial_grid(DeploymentArea{}, small_params());
    ASSERT_EQ(grid.size(), 4u * 4u * 3u * 2u * 3u);
    EXPECT_EQ(grid.front().position, (Point2D{12.5, 12.5}));
    EXPECT_EQ(grid.back().position, (Point2D{87.5, 87.5}));
    EXPECT_EQ(grid.front().alpha, 0.0);
    EXPECT_EQ(grid[1].alpha, 0.5);
}

TEST(SearchParamsValidation, RejectsInvalid) {
    auto p = SearchParams{};
    p.shrink_factor = 1.0;
    EXPECT_THROW(validate(p), ConfigError);
    p = SearchParams{};
    p.elites = 0;
    EXPECT_THROW(validate(p), ConfigError);
    p = SearchParams{};
    p.max_rounds = 0;
    EXPECT_THROW(validate(p), ConfigError);
    p = SearchParams{};
    p.alphas = {0.5, 1.5};
    EXPECT_THROW(validate(p), ConfigError);
    EXPECT_NO_THROW(validate(SearchParams{}));
}

TEST(IterativeSearch, SingleRoundEqualsExhaustiveGrid) {
    const ScenarioConfig cfg;
    auto p = small_params();
    p.max_rounds = 1;
    const auto iterative = iterative_search(cfg, p);
    const auto grid = initial_grid(cfg.area, p);
    const auto exhaustive = exhaustive_grid(cfg, grid);
    ASSERT_EQ(iterative.candidates.size(), exhaustive.candidates.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_EQ(iterative.candidates[i].ris, exhaustive.candidates[i].ris);
        EXPECT_EQ(iterative.candidates[i].metrics, exhaustive.candidates[i].metrics);
        EXPECT_EQ(iterative.candidates[i].objective, exhaustive.candidates[i].objective);
    }
    EXPECT_EQ(iterative.representatives, exhaustive.representatives);
    EXPECT_EQ(iterative.rounds_executed, 1);
}

TEST(IterativeSearch, SyntheticOptimumFoundWithinRefinedCell) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    SearchParams p;
    p.grid_theta = 1;
    p.element_counts = {512};
    p.alphas = {0.5};
    p.shrink_factor = 0.5;
    p.max_rounds = 3;
    p.convergence_eps = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const Point2D optimum{u(gen), u(gen)};
        const auto result = iterative_search(DeploymentArea{}, p, distance_objective(optimum));
        const auto& best = result.candidates[result.representatives.balanced];
        const double cell = 10.0 * std::pow(p.shrink_factor, p.max_rounds - 1);
        EXPECT_LE(distance(best.ris.position, optimum), cell * std::numbers::sqrt2)
            << "optimum (" << optimum.x << ", " << optimum.y << ")";
    }
}

TEST(IterativeSearch, BestScalarNonIncreasingAcrossRounds) {
    const ScenarioConfig cfg;
    auto p = small_params();
    p.max_rounds = 4;
    p.convergence_eps = 0.0;
    const auto result = iterative_search(cfg, p);
    ASSERT_EQ(result.round_best_scalar.size(), static_cast<std::size_t>(result.rounds_executed));
    for (std::size_t i = 1; i < result.round_best_scalar.size(); ++i) {
        EXPECT_LE(result.round_best_scalar[i], result.round_best_scalar[i - 1]);
    }
}

TEST(IterativeSearch, InvariantsAndNonDomination) {
    const ScenarioConfig cfg;
    auto p = small_params();
    const auto coarse = exhaustive_grid(cfg, initial_grid(cfg.area, p));
    const auto& coarse_winner = coarse.candidates[coarse.representatives.balanced];
    const auto result = iterative_search(cfg, p);
    const auto& best = result.candidates[result.representatives.balanced];
    EXPECT_FALSE(dominates(coarse_winner.metrics, best.metrics));
    for (const auto& c : result.candidates) {
        EXPECT_LE(best.objective.scalar, c.objective.scalar);
        EXPECT_TRUE(risopt::testing::bundle_identities_hold(c.metrics));
        EXPECT_TRUE(cfg.area.contains(c.ris.position));
        EXPECT_GE(c.ris.alpha, 0.0);
        EXPECT_LE(c.ris.alpha, 1.0);
    }
    for (std::size_t i = 0; i < result.candidates.size(); ++i) EXPECT_EQ(result.candidates[i].index, i);
}

TEST(IterativeSearch, IndependentOfWorkerCount) {
    const ScenarioConfig cfg;
    auto p = small_params();
    const auto a = iterative_search(cfg, p);
    p.workers = 3;
    const auto b = iterative_search(cfg, p);
    ASSERT_EQ(a.candidates.size(), b.candidates.size());
    for (std::size_t i = 0; i < a.candidates.size(); ++i) {
        EXPECT_EQ(a.candidates[i].ris, b.candidates[i].ris);
        EXPECT_EQ(a.candidates[i].metrics, b.candidates[i].metrics);
        EXPECT_EQ(a.candidates[i].objective, b.candidates[i].objective);
    }
    EXPECT_EQ(a.representatives, b.representatives);
}

TEST(IterativeSearch, SkipsRefinementSamplesOnNodes) {
    ScenarioConfig cfg;
    cfg.bs = {25.0, 25.0};
    SearchParams p;
    p.grid_x = 2;
    p.grid_y = 2;
    p.grid_theta = 1;
    p.element_counts = {512};
    p.alphas = {1.0};
    p.refine_points = 3;
    p.elites = 4;
    p.max_rounds = 1;
    // (25, 25) is a round-0 cell center.
    const auto result = iterative_search(cfg, p);
    EXPECT_EQ(result.skipped_candidates, 1u);
    EXPECT_EQ(result.candidates.size(), 3u);
}

TEST(ExhaustiveGrid, SingletonIsEveryRepresentative) {
    const ScenarioConfig cfg;
    const std::vector<RisConfig> one{{{40, 70}, 0.2, 512, 0.5}};
    const auto r = exhaustive_grid(cfg, one);
    EXPECT_EQ(r.candidates[0].objective.scalar, 0.0);
    EXPECT_EQ(r.representatives, (Representatives{0, 0, 0, 0}));
}

TEST(ExhaustiveGrid, BalancedIsBruteForceMinimum) {
    const ScenarioConfig cfg;
    std::vector<RisConfig> grid;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) grid.push_back({{5.0 + 10 * i, 5.0 + 10 * j}, 0.5, 256, 0.5});
    }
    const auto r = exhaustive_grid(cfg, grid);
    std::vector<MetricBundle> bundles;
    for (const auto& ris : grid) bundles.push_back(evaluate_candidate(cfg, ris));
    const auto obj = scalarize(bundles);
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < obj.size(); ++i) {
        if (obj[i].scalar < best) {
            best = obj[i].scalar;
            arg = i;
        }
    }
    EXPECT_EQ(r.candidates[r.representatives.balanced].objective.scalar, best);
    EXPECT_EQ(r.representatives.balanced, arg);
}

TEST(ExhaustiveGrid, Errors) {
    const ScenarioConfig cfg;
    EXPECT_THROW(exhaustive_grid(cfg, std::vector<RisConfig>{}), std::invalid_argument);
    EXPECT_THROW(exhaustive_grid(cfg, std::vector<RisConfig>{{cfg.bs, 0.0, 512, 0.5}}), GeometryError);
    EXPECT_THROW(exhaustive_grid(cfg, std::vector<RisConfig>{{{200, 5}, 0.0, 512, 0.5}}), ConfigError);
}

TEST(ExtractRepresentatives, DominatingCandidateTakesAllFour) {
    const ScenarioConfig cfg;
    // Normal bisects the BS and Bob directions and faces away from Eve, so adding elements
    // raises SNR_B and sensing gain while SNR_E stays on the direct path.
    const std::vector<RisConfig> grid{{{50, 50}, 2.59, 64, 0.5}, {{50, 50}, 2.59, 512, 0.5}};
    const auto r = exhaustive_grid(cfg, grid);
    const auto& m0 = r.candidates[0].metrics;
    const auto& m1 = r.candidates[1].metrics;
    ASSERT_GT(m1.snr_b_db, m0.snr_b_db);
    ASSERT_GT(m1.sensing_gain_db, m0.sensing_gain_db);
    ASSERT_EQ(m1.snr_e_db, m0.snr_e_db);
    EXPECT_EQ(r.representatives, (Representatives{1, 1, 1, 1}));
}

TEST(ExtractRepresentatives, DuplicateCandidateLowerIndexWins) {
    const ScenarioConfig cfg;
    const RisConfig ris{{30, 60}, 0.4, 512, 0.7};
    const std::vector<RisConfig> grid{{{10, 50}, 2.0, 64, 0.1}, ris, ris};
    const auto r = exhaustive_grid(cfg, grid);
    EXPECT_EQ(r.candidates[1].metrics, r.candidates[2].metrics);
    for (const auto idx : {r.representatives.best_snr_b, r.representatives.best_security_gap,
                           r.representatives.best_sensing_gain, r.representatives.balanced}) {
        EXPECT_NE(idx, 2u);
    }
    EXPECT_THROW(extract_representatives(std::span<const EvaluatedCandidate>{}), std::invalid_argument);
}

TEST(ExtractRepresentatives, SensingAndBalancedMayCoincide) {
    std::vector<EvaluatedCandidate> set(3);
    const double metrics[3][3] = {{64.0, 62.39, 1.0}, {63.0, 61.0, 30.0}, {40.0, 40.0, 0.0}};
    for (std::size_t i = 0; i < 3; ++i) {
        set[i].index = i;
        set[i].metrics.snr_b_db = metrics[i][0];
        set[i].metrics.security_gap_db = metrics[i][1];
        set[i].metrics.sensing_gain_db = metrics[i][2];
    }
    std::vector<MetricBundle> bundles;
    for (const auto& c : set) bundles.push_back(c.metrics);
    const auto obj = scalarize(bundles);
    for (std::size_t i = 0; i < 3; ++i) set[i].objective = obj[i];
    const auto rep = extract_representatives(set);
    EXPECT_EQ(rep.best_snr_b, 0u);
    EXPECT_EQ(rep.best_security_gap, 0u);
    EXPECT_EQ(rep.best_sensing_gain, 1u);
    EXPECT_EQ(rep.balanced, 1u);
}

TEST(IterativeSearch, RefinementCrossesDiscreteSets) {
    const ScenarioConfig cfg;
    auto p = small_params();
    p.max_rounds = 2;
    p.convergence_eps = 0.0;
    const auto result = iterative_search(cfg, p);
    std::map<std::tuple<double, double, double>, std::set<std::pair<int, double>>> combos;
    for (const auto& c : result.candidates) {
        if (c.round != 1) continue;
        combos[{c.ris.position.x, c.ris.position.y, c.ris.orientation}].insert({c.ris.num_elements, c.ris.alpha});
    }
    ASSERT_FALSE(combos.empty());
    for (const auto& [where, seen] : combos) EXPECT_EQ(seen.size(), p.element_counts.size() * p.alphas.size());
}
