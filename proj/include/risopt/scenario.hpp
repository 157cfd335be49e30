#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

#include "risopt/geometry.hpp"

namespace risopt {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DeploymentArea {
    double x_min = 0.0;
    double x_max = 100.0;
    double y_min = 0.0;
    double y_max = 100.0;

    [[nodiscard]] double width() const { return x_max - x_min; }
    [[nodiscard]] double height() const { return y_max - y_min; }
    [[nodiscard]] bool contains(const Point2D& p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }

    friend bool operator==(const DeploymentArea&, const DeploymentArea&) = default;
};

struct LinkBudget {
    double transmit_power_dbm = 20.0;
    double noise_power_dbm = -94.0;

    friend bool operator==(const LinkBudget&, const LinkBudget&) = default;
};

/// Log-distance path loss with log-normal shadowing.
struct PathLossParams {
    double pl_1m_db = 30.0;
    double exponent = 2.5;
    double shadow_sigma_db = 3.0;

    friend bool operator==(const PathLossParams&, const PathLossParams&) = default;
};

/// Clustered Rician multi-tap fading. decay_factor is the per-tap power ratio.
struct SmallScaleParams {
    int num_taps = 6;
    double decay_factor = 0.5;
    double rician_k_db = 10.0;

    friend bool operator==(const SmallScaleParams&, const SmallScaleParams&) = default;
};

struct TemporalParams {
    double rho = 0.92;
    int num_frames = 40;

    friend bool operator==(const TemporalParams&, const TemporalParams&) = default;
};

/// Direct links flagged here receive loss_db of extra attenuation.
struct BlockageSpec {
    bool bs_bob = true;
    bool bs_eve = false;
    bool bs_target = false;
    double loss_db = 30.0;

    friend bool operator==(const BlockageSpec&, const BlockageSpec&) = default;
};

/// Per-element reflection efficiency and orientation selectivity of the surface.
struct RisGainParams {
    double element_efficiency = 0.8;
    double orientation_exponent = 1.0;

    friend bool operator==(const RisGainParams&, const RisGainParams&) = default;
};

enum class PhaseMode { coherent, random };

inline const char* to_string(PhaseMode mode) { return mode == PhaseMode::coherent ? "coherent" : "random"; }

/// Immutable world description shared read-only by every evaluation.
struct ScenarioConfig {
    Point2D bs{10.0, 10.0};
    Point2D bob{60.0, 80.0};
    Point2D eve{80.0, 20.0};
    Point2D target{20.0, 85.0};
    DeploymentArea area;
    LinkBudget link_budget;
    PathLossParams path_loss;
    SmallScaleParams small_scale;
    TemporalParams temporal;
    BlockageSpec blockage;
    RisGainParams ris_gain;
    PhaseMode phase_mode = PhaseMode::coherent;
    std::uint64_t master_seed = 1;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

namespace detail {

inline void require(bool ok, const std::string& field, const std::string& rule, double value) {
    if (!ok) {
        std::ostringstream os;
        os << field << " violates " << rule << " (got " << value << ")";
        throw ConfigError(os.str());
    }
}

inline void require_finite(double v, const std::string& field) {
    require(std::isfinite(v), field, "finite value", v);
}

}  // namespace detail

/// Throws ConfigError naming the first violated invariant.
inline void validate(const ScenarioConfig& cfg) {
    using detail::require;
    using detail::require_finite;

    const std::pair<const char*, const Point2D*> nodes[] = {
        {"bs", &cfg.bs}, {"bob", &cfg.bob}, {"eve", &cfg.eve}, {"target", &cfg.target}};
    for (const auto& [name, p] : nodes) {
        require_finite(p->x, std::string("Point2D.") + name + ".x");
        require_finite(p->y, std::string("Point2D.") + name + ".y");
    }
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            const double d = distance(*nodes[i].second, *nodes[j].second);
            require(d > 0.0,
                    std::string("ScenarioConfig.nodes(") + nodes[i].first + "," + nodes[j].first + ")",
                    "pairwise distance > 0", d);
        }
    }

    const auto& a = cfg.area;
    require_finite(a.x_min, "DeploymentArea.x_min");
    require_finite(a.x_max, "DeploymentArea.x_max");
    require_finite(a.y_min, "DeploymentArea.y_min");
    require_finite(a.y_max, "DeploymentArea.y_max");
    require(a.x_min < a.x_max, "DeploymentArea.x_max", "x_min < x_max", a.x_max);
    require(a.y_min < a.y_max, "DeploymentArea.y_max", "y_min < y_max", a.y_max);

    require_finite(cfg.link_budget.transmit_power_dbm, "LinkBudget.transmit_power_dbm");
    require_finite(cfg.link_budget.noise_power_dbm, "LinkBudget.noise_power_dbm");

    require_finite(cfg.path_loss.pl_1m_db, "PathLossParams.pl_1m_db");
    require(std::isfinite(cfg.path_loss.exponent) && cfg.path_loss.exponent > 0.0, "PathLossParams.exponent",
            "exponent > 0", cfg.path_loss.exponent);
    require(std::isfinite(cfg.path_loss.shadow_sigma_db) && cfg.path_loss.shadow_sigma_db >= 0.0,
            "PathLossParams.shadow_sigma_db", "shadow_sigma_db >= 0", cfg.path_loss.shadow_sigma_db);

    require(cfg.small_scale.num_taps >= 1, "SmallScaleParams.num_taps", "num_taps >= 1", cfg.small_scale.num_taps);
    require(cfg.small_scale.decay_factor > 0.0 && cfg.small_scale.decay_factor <= 1.0,
            "SmallScaleParams.decay_factor", "0 < decay_factor <= 1", cfg.small_scale.decay_factor);
    require_finite(cfg.small_scale.rician_k_db, "SmallScaleParams.rician_k_db");

    require(cfg.temporal.rho >= 0.0 && cfg.temporal.rho <= 1.0, "TemporalParams.rho", "0 <= rho <= 1",
            cfg.temporal.rho);
    require(cfg.temporal.num_frames >= 1, "TemporalParams.num_frames", "num_frames >= 1", cfg.temporal.num_frames);

    require(std::isfinite(cfg.blockage.loss_db) && cfg.blockage.loss_db >= 0.0, "BlockageSpec.loss_db",
            "blockage_loss_db >= 0", cfg.blockage.loss_db);

    require(cfg.ris_gain.element_efficiency > 0.0 && cfg.ris_gain.element_efficiency <= 1.0,
            "RisGainParams.element_efficiency", "0 < element_efficiency <= 1", cfg.ris_gain.element_efficiency);
    require(std::isfinite(cfg.ris_gain.orientation_exponent) && cfg.ris_gain.orientation_exponent >= 0.0,
            "RisGainParams.orientation_exponent", "orientation_exponent >= 0", cfg.ris_gain.orientation_exponent);
}

}  // namespace risopt
