#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "risopt/config_io.hpp"
#include "risopt/evaluator.hpp"
#include "risopt/format.hpp"
#include "risopt/objective.hpp"
#include "risopt/ris.hpp"
#include "risopt/version.hpp"

namespace risopt {

enum class HeatmapMetric { delta_snr_b, sensing_gain, security_gap, scalar_objective };

inline constexpr HeatmapMetric kAllHeatmapMetrics[] = {HeatmapMetric::delta_snr_b, HeatmapMetric::sensing_gain,
                                                      HeatmapMetric::security_gap,
                                                      HeatmapMetric::scalar_objective};

inline const char* to_string(HeatmapMetric m) {
    switch (m) {
        case HeatmapMetric::delta_snr_b: return "delta_snr_b";
        case HeatmapMetric::sensing_gain: return "sensing_gain";
        case HeatmapMetric::security_gap: return "security_gap";
        case HeatmapMetric::scalar_objective: return "scalar_objective";
    }
    return "unknown";
}

inline std::optional<HeatmapMetric> parse_heatmap_metric(std::string_view name) {
    for (const auto m : kAllHeatmapMetrics) {
        if (name == to_string(m)) return m;
    }
    return std::nullopt;
}

/// RIS parameters held fixed over a position sweep.
struct FixedParams {
    double theta = 0.0;
    int num_elements = 512;
    double alpha = 0.5;

    friend bool operator==(const FixedParams&, const FixedParams&) = default;
};

/// Row-major values; row r, column c is the cell centered at
/// (origin.x + (c + 0.5) * cell_size, origin.y + (r + 0.5) * cell_size).
struct MetricGrid {
    HeatmapMetric metric = HeatmapMetric::delta_snr_b;
    Point2D origin;
    double cell_size = 1.0;
    int rows = 0;
    int cols = 0;
    FixedParams fixed;
    std::vector<double> values;

    [[nodiscard]] double at(int r, int c) const {
        return values[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)];
    }
    [[nodiscard]] Point2D cell_center(int r, int c) const {
        return {origin.x + (c + 0.5) * cell_size, origin.y + (r + 0.5) * cell_size};
    }

    friend bool operator==(const MetricGrid&, const MetricGrid&) = default;
};

namespace detail {

inline int cells_along(double extent, double cell_size, const char* axis) {
    const double n = extent / cell_size;
    const double rounded = std::round(n);
    if (rounded < 1.0 || std::abs(n - rounded) > 1e-9 * std::max(1.0, n)) {
        throw std::invalid_argument(std::string("sweep_grid: cell size ") + format_double(cell_size) +
                                    " does not divide the " + axis + " extent " + format_double(extent));
    }
    return static_cast<int>(rounded);
}

}  // namespace detail

/// Evaluates each cell center of the deployment area with the fixed (theta, N, alpha).
/// Per-cell randomness is keyed by the cell-center position, so the value at a given center
/// does not depend on the grid resolution or on the evaluation order.
inline std::vector<MetricGrid> sweep_grid(const ScenarioConfig& cfg, const FixedParams& fixed, double cell_size,
                                          std::span<const HeatmapMetric> metrics, unsigned workers = 1) {
    if (!(cell_size > 0.0) || !std::isfinite(cell_size)) throw std::invalid_argument("sweep_grid: invalid cell size");
    if (!(fixed.alpha >= 0.0 && fixed.alpha <= 1.0)) throw ConfigError("FixedParams.alpha must lie in [0, 1]");
    if (fixed.num_elements < 1) throw ConfigError("FixedParams.num_elements must be >= 1");
    if (!std::isfinite(fixed.theta)) throw ConfigError("FixedParams.theta must be finite");

    const int cols = detail::cells_along(cfg.area.width(), cell_size, "x");
    const int rows = detail::cells_along(cfg.area.height(), cell_size, "y");

    MetricGrid shape;
    shape.origin = {cfg.area.x_min, cfg.area.y_min};
    shape.cell_size = cell_size;
    shape.rows = rows;
    shape.cols = cols;
    shape.fixed = fixed;

    std::vector<RisConfig> batch;
    batch.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            batch.push_back({shape.cell_center(r, c), fixed.theta, fixed.num_elements, fixed.alpha});
        }
    }
    const auto bundles = ScenarioEvaluator(cfg, workers)(batch);

    std::vector<ObjectiveVector> objectives;
    std::vector<MetricGrid> grids;
    for (const auto metric : metrics) {
        MetricGrid g = shape;
        g.metric = metric;
        g.values.resize(bundles.size());
        if (metric == HeatmapMetric::scalar_objective && objectives.empty()) objectives = scalarize(bundles);
        for (std::size_t i = 0; i < bundles.size(); ++i) {
            switch (metric) {
                case HeatmapMetric::delta_snr_b: g.values[i] = bundles[i].delta_snr_b_db; break;
                case HeatmapMetric::sensing_gain: g.values[i] = bundles[i].sensing_gain_db; break;
                case HeatmapMetric::security_gap: g.values[i] = bundles[i].security_gap_db; break;
                case HeatmapMetric::scalar_objective: g.values[i] = objectives[i].scalar; break;
            }
            if (!std::isfinite(g.values[i])) {
                throw std::runtime_error(std::string("sweep_grid: non-finite ") + to_string(metric) + " value");
            }
        }
        grids.push_back(std::move(g));
    }
    return grids;
}

/// Identifies the run that produced an exported file.
struct Provenance {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
};

inline std::string fixed_params_text(const FixedParams& f) {
    return "theta=" + format_double(f.theta) + ",n=" + std::to_string(f.num_elements) +
           ",alpha=" + format_double(f.alpha);
}

inline std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
    auto p = csv_path;
    p.replace_extension(".json");
    return p;
}

/// Writes the CSV grid and its JSON sidecar (same stem, .json extension).
inline void export_grid(const MetricGrid& grid, const std::filesystem::path& path, const Provenance& provenance) {
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("export_grid: cannot open " + path.string());
        out << "# metric: " << to_string(grid.metric) << '\n';
        out << "# origin: " << format_double(grid.origin.x) << ',' << format_double(grid.origin.y) << '\n';
        out << "# cell_size: " << format_double(grid.cell_size) << '\n';
        out << "# fixed_params: " << fixed_params_text(grid.fixed) << '\n';
        for (int r = 0; r < grid.rows; ++r) {
            for (int c = 0; c < grid.cols; ++c) {
                if (c > 0) out << ',';
                out << format_double(grid.at(r, c));
            }
            out << '\n';
        }
        if (!out) throw std::runtime_error("export_grid: write failed for " + path.string());
    }

    nlohmann::json meta;
    meta["grid_schema"] = 1;
    meta["metric"] = to_string(grid.metric);
    meta["origin"] = {grid.origin.x, grid.origin.y};
    meta["cell_size"] = grid.cell_size;
    meta["rows"] = grid.rows;
    meta["cols"] = grid.cols;
    meta["row_axis"] = "y";
    meta["fixed_params"] = {
        {"theta", grid.fixed.theta}, {"num_elements", grid.fixed.num_elements}, {"alpha", grid.fixed.alpha}};
    meta["config_hash"] = provenance.config_hash;
    meta["seed"] = provenance.seed;
    meta["tool_version"] = provenance.tool_version;
    const auto json_path = sidecar_path(path);
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw std::runtime_error("export_grid: cannot open " + json_path.string());
    out << meta.dump(2) << '\n';
    if (!out) throw std::runtime_error("export_grid: write failed for " + json_path.string());
}

}  // namespace risopt
