#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "risopt/geometry.hpp"
#include "risopt/rng.hpp"
#include "risopt/scenario.hpp"

namespace risopt {

using cdouble = std::complex<double>;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Number of path loss evaluations clamped to the 1 m reference distance.
inline std::atomic<std::uint64_t>& path_loss_clamp_count() {
    static std::atomic<std::uint64_t> count{0};
    return count;
}

/// Log-distance path loss in dB. Distances under 1 m are clamped to 1 m.
inline double path_loss_db(double d, const PathLossParams& params, double shadow_db) {
    if (d < 1.0) {
        path_loss_clamp_count().fetch_add(1, std::memory_order_relaxed);
        d = 1.0;
    }
    return params.pl_1m_db + 10.0 * params.exponent * std::log10(d) + shadow_db;
}

/// Complex gain of each delay tap (LoS folded into tap 0).
struct TapSet {
    std::vector<cdouble> taps;
};

/// Diffuse part of each tap, unit variance per component before profile scaling.
struct ScatterState {
    std::vector<cdouble> z;
};

/// Deterministic amplitude profile of the clustered Rician taps.
/// LoS power K/(K+1) sits on tap 0; scatter power 1/(K+1) is split with weights decay^l.
struct TapProfile {
    double los_amplitude = 0.0;
    std::vector<double> scatter_sigma;

    static TapProfile from(const SmallScaleParams& params) {
        const double k = db_to_linear(params.rician_k_db);
        TapProfile profile;
        profile.los_amplitude = std::sqrt(k / (k + 1.0));
        const auto taps = static_cast<std::size_t>(params.num_taps);
        std::vector<double> weight(taps);
        double w = 1.0;
        double total = 0.0;
        for (std::size_t l = 0; l < taps; ++l) {
            weight[l] = w;
            total += w;
            w *= params.decay_factor;
        }
        const double scatter_power = 1.0 / (k + 1.0);
        profile.scatter_sigma.resize(taps);
        for (std::size_t l = 0; l < taps; ++l) {
            profile.scatter_sigma[l] = std::sqrt(scatter_power * weight[l] / total);
        }
        return profile;
    }
};

inline ScatterState draw_scatter(RngStream& rng, int num_taps) {
    ScatterState state;
    state.z.resize(static_cast<std::size_t>(num_taps));
    for (auto& z : state.z) z = rng.complex_normal();
    return state;
}

inline TapSet compose_taps(const TapProfile& profile, cdouble los, const ScatterState& state) {
    TapSet set;
    set.taps.resize(state.z.size());
    for (std::size_t l = 0; l < state.z.size(); ++l) set.taps[l] = profile.scatter_sigma[l] * state.z[l];
    if (!set.taps.empty()) set.taps[0] += los;
    return set;
}

/// One independent tap realization: random LoS phase, stationary scatter.
inline TapSet draw_taps(RngStream& rng, const SmallScaleParams& params) {
    const TapProfile profile = TapProfile::from(params);
    const cdouble los = std::polar(profile.los_amplitude, rng.phase());
    return compose_taps(profile, los, draw_scatter(rng, params.num_taps));
}

/// First-order autoregressive step: z' = rho z + sqrt(1 - rho^2) w.
inline ScatterState ar_advance(const ScatterState& prev, double rho, RngStream& rng) {
    const double innovation_scale = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    ScatterState next;
    next.z.resize(prev.z.size());
    for (std::size_t l = 0; l < prev.z.size(); ++l) {
        next.z[l] = rho * prev.z[l] + innovation_scale * rng.complex_normal();
    }
    return next;
}

inline cdouble flat_gain(const TapSet& set) {
    cdouble sum{0.0, 0.0};
    for (const auto& t : set.taps) sum += t;
    return sum;
}

/// Per-frame flat-equivalent channel of one node pair.
struct LinkSeries {
    LinkId link_id = LinkId::bs_bob;
    double path_loss_db = 0.0;  // includes the shadowing sample
    double blockage_db = 0.0;
    std::vector<cdouble> frames;
};

inline bool is_blocked(const BlockageSpec& blockage, LinkId id) {
    switch (id) {
        case LinkId::bs_bob: return blockage.bs_bob;
        case LinkId::bs_eve: return blockage.bs_eve;
        case LinkId::bs_target: return blockage.bs_target;
        default: return false;
    }
}

/// Draw order per stream: shadowing, LoS phase, initial scatter, then one innovation set per later frame.
inline LinkSeries realize_link(const ScenarioConfig& cfg, const Point2D& a, const Point2D& b, LinkId link_id,
                               RngStream& stream) {
    if (a == b) throw GeometryError(std::string("realize_link: coincident endpoints on ") + to_string(link_id));

    LinkSeries series;
    series.link_id = link_id;
    const double shadow = stream.normal(0.0, cfg.path_loss.shadow_sigma_db);
    series.path_loss_db = path_loss_db(distance(a, b), cfg.path_loss, shadow);
    series.blockage_db = is_blocked(cfg.blockage, link_id) ? cfg.blockage.loss_db : 0.0;

    const TapProfile profile = TapProfile::from(cfg.small_scale);
    const cdouble los = std::polar(profile.los_amplitude, stream.phase());
    ScatterState state = draw_scatter(stream, cfg.small_scale.num_taps);

    const double amplitude = std::pow(10.0, -series.path_loss_db / 20.0);
    const double blockage_amplitude = std::pow(10.0, -series.blockage_db / 20.0);
    const auto frames = static_cast<std::size_t>(cfg.temporal.num_frames);
    series.frames.reserve(frames);
    for (std::size_t t = 0; t < frames; ++t) {
        if (t > 0) state = ar_advance(state, cfg.temporal.rho, stream);
        series.frames.push_back(flat_gain(compose_taps(profile, los, state)) * amplitude * blockage_amplitude);
    }
    return series;
}

/// Convenience overload deriving the stream from the configuration's master seed.
inline LinkSeries realize_link(const ScenarioConfig& cfg, const Point2D& a, const Point2D& b, LinkId link_id,
                               std::uint64_t key, std::uint64_t replicate = 0) {
    RngStream stream(cfg.master_seed, link_id, key, replicate);
    return realize_link(cfg, a, b, link_id, stream);
}

}  // namespace risopt
