#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "risopt/metrics.hpp"

namespace risopt {

inline constexpr std::size_t kNumObjectives = 3;
using ObjectiveTriple = std::array<double, kNumObjectives>;

/// raw holds (SNR_B, security gap, sensing gain) as reported, larger is better.
/// normalized holds the min-max normalized negated columns; scalar is their sum, lower is better.
struct ObjectiveVector {
    ObjectiveTriple raw{};
    ObjectiveTriple normalized{};
    double scalar = 0.0;

    friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

inline ObjectiveTriple objective_triple(const MetricBundle& m) {
    return {m.snr_b_db, m.security_gap_db, m.sensing_gain_db};
}

/// (y - min) / (max - min) elementwise; a constant column maps to zeros.
inline std::vector<double> minmax_normalize(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("minmax_normalize: empty input");
    for (const double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("minmax_normalize: non-finite element");
    }
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double range = *hi_it - lo;
    std::vector<double> out(values.size(), 0.0);
    if (range == 0.0) return out;
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - lo) / range;
    return out;
}

/// Scalarizes raw objective triples over the given population.
inline std::vector<ObjectiveVector> scalarize_raw(std::span<const ObjectiveTriple> raw) {
    if (raw.empty()) throw std::invalid_argument("scalarize: empty population");
    std::vector<ObjectiveVector> out(raw.size());
    std::vector<double> column(raw.size());
    for (std::size_t j = 0; j < kNumObjectives; ++j) {
        for (std::size_t i = 0; i < raw.size(); ++i) column[i] = -raw[i][j];
        const auto normalized = minmax_normalize(column);
        for (std::size_t i = 0; i < raw.size(); ++i) out[i].normalized[j] = normalized[i];
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out[i].raw = raw[i];
        out[i].scalar = out[i].normalized[0] + out[i].normalized[1] + out[i].normalized[2];
    }
    return out;
}

inline std::vector<ObjectiveVector> scalarize(std::span<const MetricBundle> bundles) {
    std::vector<ObjectiveTriple> raw;
    raw.reserve(bundles.size());
    for (const auto& m : bundles) raw.push_back(objective_triple(m));
    return scalarize_raw(raw);
}

}  // namespace risopt
