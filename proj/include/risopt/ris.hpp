#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <string>

#include "risopt/geometry.hpp"
#include "risopt/scenario.hpp"

namespace risopt {

inline constexpr std::array<int, 4> kDefaultElementCounts{64, 128, 256, 512};

/// One candidate deployment: position, surface-normal orientation, element count, ISAC weight.
struct RisConfig {
    Point2D position;
    double orientation = 0.0;  // radians, direction of the surface normal
    int num_elements = 512;
    double alpha = 0.5;

    friend bool operator==(const RisConfig&, const RisConfig&) = default;
};

inline void validate(const RisConfig& ris, const DeploymentArea& area,
                     std::span<const int> allowed_elements = kDefaultElementCounts) {
    if (!is_finite(ris.position) || !area.contains(ris.position)) {
        throw ConfigError("RisConfig.position (" + std::to_string(ris.position.x) + ", " +
                          std::to_string(ris.position.y) + ") outside deployment area");
    }
    if (!std::isfinite(ris.orientation)) throw ConfigError("RisConfig.orientation must be finite");
    if (!(ris.alpha >= 0.0 && ris.alpha <= 1.0)) {
        throw ConfigError("RisConfig.alpha violates 0 <= alpha <= 1 (got " + std::to_string(ris.alpha) + ")");
    }
    // An empty allowed set only requires a positive count.
    const bool allowed = allowed_elements.empty()
                             ? ris.num_elements >= 1
                             : std::find(allowed_elements.begin(), allowed_elements.end(), ris.num_elements) !=
                                   allowed_elements.end();
    if (!allowed) {
        throw ConfigError("RisConfig.num_elements " + std::to_string(ris.num_elements) + " not in allowed set");
    }
}

/// max(0, cos) of the angle between the surface normal and the direction toward node.
inline double alignment_factor(const RisConfig& ris, const Point2D& node) {
    return std::max(0.0, std::cos(bearing(ris.position, node) - ris.orientation));
}

/// Power gain N * eta * (c_in * c_out)^gamma.
inline double reflection_gain(int num_elements, const RisGainParams& params, double c_in, double c_out) {
    return static_cast<double>(num_elements) * params.element_efficiency *
           std::pow(c_in * c_out, params.orientation_exponent);
}

struct IsacWeights {
    double eta_b = 0.0;  // communication share (Bob, and Eve's leakage)
    double eta_t = 0.0;  // sensing share (target)
};

inline IsacWeights isac_weights(double alpha) { return {alpha, 1.0 - alpha}; }

/// Reflected path amplitude: weight * sqrt(G) * h_sr * h_rx.
inline std::complex<double> cascaded_gain(std::complex<double> h_sr, std::complex<double> h_rx, double power_gain,
                                          double weight) {
    return weight * std::sqrt(power_gain) * h_sr * h_rx;
}

}  // namespace risopt
