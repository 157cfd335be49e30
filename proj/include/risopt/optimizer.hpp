#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "risopt/evaluator.hpp"
#include "risopt/objective.hpp"
#include "risopt/ris.hpp"
#include "risopt/scenario.hpp"

namespace risopt {

/// Coarse-to-fine search settings. Round 0 is the full cross-product grid; every later
/// round resamples refine_points^3 offsets in (x, y, theta) around each elite with
/// half-widths of (initial spacing * shrink_factor^round), crossed with the full N and alpha sets.
struct SearchParams {
    int grid_x = 10;
    int grid_y = 10;
    int grid_theta = 8;
    std::vector<int> element_counts{kDefaultElementCounts.begin(), kDefaultElementCounts.end()};
    std::vector<double> alphas{0.0, 0.25, 0.5, 0.75, 1.0};
    int refine_points = 3;
    int elites = 10;
    double shrink_factor = 0.5;
    int max_rounds = 5;
    double convergence_eps = 1e-4;
    unsigned workers = 1;

    friend bool operator==(const SearchParams&, const SearchParams&) = default;
};

inline void validate(const SearchParams& p) {
    const auto fail = [](const std::string& what) { throw ConfigError("SearchParams." + what); };
    if (p.grid_x < 1 || p.grid_y < 1 || p.grid_theta < 1) fail("initial_grid counts must be >= 1");
    if (p.element_counts.empty()) fail("element_counts must be non-empty");
    for (const int n : p.element_counts) {
        if (n < 1) fail("element_counts entries must be >= 1");
    }
    if (p.alphas.empty()) fail("alphas must be non-empty");
    for (const double a : p.alphas) {
        if (!(a >= 0.0 && a <= 1.0)) fail("alphas entries must lie in [0, 1]");
    }
    if (p.refine_points < 1) fail("refine_points must be >= 1");
    if (p.elites < 1) fail("elites_per_round must be >= 1");
    if (!(p.shrink_factor > 0.0 && p.shrink_factor < 1.0)) fail("shrink_factor must lie in (0, 1)");
    if (p.max_rounds < 1) fail("max_rounds must be >= 1");
    if (!(p.convergence_eps >= 0.0) || !std::isfinite(p.convergence_eps)) fail("convergence_eps must be >= 0");
}

struct EvaluatedCandidate {
    std::size_t index = 0;  // stable enumeration order; equals the position in the result
    int round = 0;
    RisConfig ris;
    MetricBundle metrics;
    ObjectiveVector objective;
};

/// Candidate indices of the four representative solutions.
struct Representatives {
    std::size_t best_snr_b = 0;
    std::size_t best_security_gap = 0;
    std::size_t best_sensing_gain = 0;
    std::size_t balanced = 0;

    friend bool operator==(const Representatives&, const Representatives&) = default;
};

struct OptimizationResult {
    std::vector<EvaluatedCandidate> candidates;
    Representatives representatives;
    int rounds_executed = 0;
    bool converged = false;
    /// Best scalar among candidates evaluated up to each round, under the final normalization.
    std::vector<double> round_best_scalar;
    std::size_t skipped_candidates = 0;  // refinement samples coinciding with a node
};

/// Argmax per raw metric and argmin scalar; ties go to the lowest index.
inline Representatives extract_representatives(std::span<const EvaluatedCandidate> evaluated) {
    if (evaluated.empty()) throw std::invalid_argument("extract_representatives: empty set");
    Representatives rep;
    std::size_t snr = 0, gap = 0, sens = 0, bal = 0;
    for (std::size_t i = 1; i < evaluated.size(); ++i) {
        const auto& c = evaluated[i];
        if (c.metrics.snr_b_db > evaluated[snr].metrics.snr_b_db) snr = i;
        if (c.metrics.security_gap_db > evaluated[gap].metrics.security_gap_db) gap = i;
        if (c.metrics.sensing_gain_db > evaluated[sens].metrics.sensing_gain_db) sens = i;
        if (c.objective.scalar < evaluated[bal].objective.scalar) bal = i;
    }
    rep.best_snr_b = evaluated[snr].index;
    rep.best_security_gap = evaluated[gap].index;
    rep.best_sensing_gain = evaluated[sens].index;
    rep.balanced = evaluated[bal].index;
    return rep;
}

/// Cell-centered samples of [lo, hi).
inline std::vector<double> cell_centers(double lo, double hi, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    const double step = (hi - lo) / count;
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = lo + (i + 0.5) * step;
    return v;
}

/// Round-0 grid in enumeration order x, y, theta, N, alpha (alpha fastest).
inline std::vector<RisConfig> initial_grid(const DeploymentArea& area, const SearchParams& params) {
    const auto xs = cell_centers(area.x_min, area.x_max, params.grid_x);
    const auto ys = cell_centers(area.y_min, area.y_max, params.grid_y);
    const auto thetas = cell_centers(-std::numbers::pi, std::numbers::pi, params.grid_theta);
    std::vector<RisConfig> grid;
    grid.reserve(xs.size() * ys.size() * thetas.size() * params.element_counts.size() * params.alphas.size());
    for (const double x : xs) {
        for (const double y : ys) {
            for (const double theta : thetas) {
                for (const int n : params.element_counts) {
                    for (const double a : params.alphas) grid.push_back({{x, y}, theta, n, a});
                }
            }
        }
    }
    return grid;
}

namespace detail {

using CandidateKey = std::tuple<double, double, double, int, double>;

inline CandidateKey key_of(const RisConfig& r) {
    return {r.position.x, r.position.y, r.orientation, r.num_elements, r.alpha};
}

inline std::vector<double> refine_offsets(int points) {
    if (points == 1) return {0.0};
    std::vector<double> o(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) o[static_cast<std::size_t>(k)] = -1.0 + 2.0 * k / (points - 1);
    return o;
}

inline bool coincides(const Point2D& p, std::span<const Point2D> excluded) {
    return std::any_of(excluded.begin(), excluded.end(), [&](const Point2D& q) { return q == p; });
}

template <typename Evaluator>
void evaluate_into(OptimizationResult& result, std::span<const RisConfig> batch, int round,
                   const Evaluator& evaluator) {
    const auto metrics = evaluator(batch);
    if (metrics.size() != batch.size()) throw std::logic_error("evaluator returned a batch of the wrong size");
    for (std::size_t i = 0; i < batch.size(); ++i) {
        EvaluatedCandidate c;
        c.index = result.candidates.size();
        c.round = round;
        c.ris = batch[i];
        c.metrics = metrics[i];
        result.candidates.push_back(c);
    }
}

inline void rescalarize(std::vector<EvaluatedCandidate>& candidates) {
    std::vector<MetricBundle> bundles;
    bundles.reserve(candidates.size());
    for (const auto& c : candidates) bundles.push_back(c.metrics);
    const auto objectives = scalarize(bundles);
    for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i].objective = objectives[i];
}

inline double min_scalar(std::span<const EvaluatedCandidate> candidates) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) best = std::min(best, c.objective.scalar);
    return best;
}

inline void finalize(OptimizationResult& result) {
    result.representatives = extract_representatives(result.candidates);
    result.round_best_scalar.assign(static_cast<std::size_t>(result.rounds_executed),
                                    std::numeric_limits<double>::infinity());
    for (const auto& c : result.candidates) {
        for (auto r = static_cast<std::size_t>(c.round); r < result.round_best_scalar.size(); ++r) {
            result.round_best_scalar[r] = std::min(result.round_best_scalar[r], c.objective.scalar);
        }
    }
}

}  // namespace detail

/// Evaluates every listed candidate once and scalarizes over the whole list.
template <BatchEvaluator Evaluator>
OptimizationResult exhaustive_grid(std::span<const RisConfig> grid, const Evaluator& evaluator) {
    if (grid.empty()) throw std::invalid_argument("exhaustive_grid: empty candidate list");
    OptimizationResult result;
    detail::evaluate_into(result, grid, 0, evaluator);
    detail::rescalarize(result.candidates);
    result.rounds_executed = 1;
    result.converged = true;
    detail::finalize(result);
    return result;
}

inline OptimizationResult exhaustive_grid(const ScenarioConfig& cfg, std::span<const RisConfig> grid,
                                          unsigned workers = 1) {
    for (const auto& ris : grid) validate(ris, cfg.area, std::span<const int>{});
    return exhaustive_grid(grid, ScenarioEvaluator(cfg, workers));
}

/// Elite-retention coarse-to-fine search. Scalars are re-normalized over the cumulative
/// population after every round; the run stops after max_rounds, or once a round lowers the
/// best scalar (measured under that round's normalization) by less than convergence_eps.
template <BatchEvaluator Evaluator>
OptimizationResult iterative_search(const DeploymentArea& area, const SearchParams& params,
                                    const Evaluator& evaluator, std::span<const Point2D> excluded = {}) {
    validate(params);
    OptimizationResult result;
    std::set<detail::CandidateKey> seen;

    std::vector<RisConfig> batch;
    for (const auto& ris : initial_grid(area, params)) {
        if (detail::coincides(ris.position, excluded)) {
            ++result.skipped_candidates;
            continue;
        }
        if (seen.insert(detail::key_of(ris)).second) batch.push_back(ris);
    }
    if (batch.empty()) throw std::invalid_argument("iterative_search: initial grid has no feasible candidate");
    detail::evaluate_into(result, batch, 0, evaluator);
    detail::rescalarize(result.candidates);
    result.rounds_executed = 1;

    const double step_x = area.width() / params.grid_x;
    const double step_y = area.height() / params.grid_y;
    const double step_theta = 2.0 * std::numbers::pi / params.grid_theta;
    const auto offsets = detail::refine_offsets(params.refine_points);

    double scale = 1.0;
    for (int round = 1; round < params.max_rounds; ++round) {
        scale *= params.shrink_factor;

        std::vector<std::size_t> order(result.candidates.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        const auto elite_count = std::min(order.size(), static_cast<std::size_t>(params.elites));
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(elite_count), order.end(),
                          [&](std::size_t a, std::size_t b) {
                              const double sa = result.candidates[a].objective.scalar;
                              const double sb = result.candidates[b].objective.scalar;
                              return sa < sb || (sa == sb && a < b);
                          });

        batch.clear();
        for (std::size_t e = 0; e < elite_count; ++e) {
            const RisConfig elite = result.candidates[order[e]].ris;
            for (const double ox : offsets) {
                for (const double oy : offsets) {
                    for (const double ot : offsets) {
                        const Point2D pos{std::clamp(elite.position.x + ox * step_x * scale, area.x_min, area.x_max),
                                          std::clamp(elite.position.y + oy * step_y * scale, area.y_min, area.y_max)};
                        const double theta = wrap_angle(elite.orientation + ot * step_theta * scale);
                        for (const int n : params.element_counts) {
                            for (const double a : params.alphas) {
                                if (detail::coincides(pos, excluded)) {
                                    ++result.skipped_candidates;
                                    continue;
                                }
                                const RisConfig c{pos, theta, n, a};
                                if (seen.insert(detail::key_of(c)).second) batch.push_back(c);
                            }
                        }
                    }
                }
            }
        }
        if (batch.empty()) {
            result.converged = true;
            break;
        }

        const std::size_t previous = result.candidates.size();
        detail::evaluate_into(result, batch, round, evaluator);
        detail::rescalarize(result.candidates);
        ++result.rounds_executed;

        const double before = detail::min_scalar(std::span(result.candidates).first(previous));
        const double after = detail::min_scalar(result.candidates);
        if (before - after < params.convergence_eps) {
            result.converged = true;
            break;
        }
    }

    detail::finalize(result);
    return result;
}

inline OptimizationResult iterative_search(const ScenarioConfig& cfg, const SearchParams& params) {
    const Point2D nodes[] = {cfg.bs, cfg.bob, cfg.eve, cfg.target};
    return iterative_search(cfg.area, params, ScenarioEvaluator(cfg, params.workers), nodes);
}

}  // namespace risopt
