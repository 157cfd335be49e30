#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "risopt/channel.hpp"
#include "risopt/ris.hpp"
#include "risopt/rng.hpp"
#include "risopt/scenario.hpp"

namespace risopt {

/// Frame-averaged figures of merit for one candidate, all in dB.
struct MetricBundle {
    double snr_b_db = 0.0;
    double snr_e_db = 0.0;
    double snr_t_total_db = 0.0;
    double snr_t_direct_db = 0.0;
    double delta_snr_b_db = 0.0;  // total SNR at Bob minus the blocked direct-only SNR
    double security_gap_db = 0.0;
    double sensing_gain_db = 0.0;

    friend bool operator==(const MetricBundle&, const MetricBundle&) = default;
};

/// Mean received SNR over frames, averaged in the linear domain.
/// Coherent mode adds magnitudes (phase-aligned reflection); random mode adds the complex values.
inline double combined_snr_db(std::span<const cdouble> direct, std::span<const cdouble> cascaded,
                              const LinkBudget& budget, PhaseMode mode) {
    if (direct.empty() || direct.size() != cascaded.size()) {
        throw std::invalid_argument("combined_snr_db: direct and cascaded must be non-empty and equal length");
    }
    double power_sum = 0.0;
    for (std::size_t t = 0; t < direct.size(); ++t) {
        if (mode == PhaseMode::coherent) {
            const double amplitude = std::abs(direct[t]) + std::abs(cascaded[t]);
            power_sum += amplitude * amplitude;
        } else {
            power_sum += std::norm(direct[t] + cascaded[t]);
        }
    }
    const double mean_power = power_sum / static_cast<double>(direct.size());
    const double snr = mean_power * db_to_linear(budget.transmit_power_dbm - budget.noise_power_dbm);
    return linear_to_db(snr);
}

inline double security_gap(double snr_b_db, double snr_e_db) { return snr_b_db - snr_e_db; }

inline double sensing_gain(double snr_t_total_db, double snr_t_direct_db) { return snr_t_total_db - snr_t_direct_db; }

/// BS to Bob, Eve and target. Independent of the RIS configuration.
struct DirectLinks {
    LinkSeries bob;
    LinkSeries eve;
    LinkSeries target;
};

/// Links touching the RIS. Depend on the RIS position only.
struct RisLinks {
    LinkSeries bs_ris;
    LinkSeries ris_bob;
    LinkSeries ris_eve;
    LinkSeries ris_target;
};

inline DirectLinks realize_direct_links(const ScenarioConfig& cfg, std::uint64_t replicate = 0) {
    return {realize_link(cfg, cfg.bs, cfg.bob, LinkId::bs_bob, kDirectLinkKey, replicate),
            realize_link(cfg, cfg.bs, cfg.eve, LinkId::bs_eve, kDirectLinkKey, replicate),
            realize_link(cfg, cfg.bs, cfg.target, LinkId::bs_target, kDirectLinkKey, replicate)};
}

inline RisLinks realize_ris_links(const ScenarioConfig& cfg, const Point2D& position, std::uint64_t key,
                                  std::uint64_t replicate = 0) {
    return {realize_link(cfg, cfg.bs, position, LinkId::bs_ris, key, replicate),
            realize_link(cfg, position, cfg.bob, LinkId::ris_bob, key, replicate),
            realize_link(cfg, position, cfg.eve, LinkId::ris_eve, key, replicate),
            realize_link(cfg, position, cfg.target, LinkId::ris_target, key, replicate)};
}

namespace detail {

inline std::vector<cdouble> cascade_series(const LinkSeries& in, const LinkSeries& out, double power_gain,
                                           double weight) {
    std::vector<cdouble> result(in.frames.size());
    for (std::size_t t = 0; t < result.size(); ++t) {
        result[t] = cascaded_gain(in.frames[t], out.frames[t], power_gain, weight);
    }
    return result;
}

}  // namespace detail

/// Composes already-realized links into the metric bundle for one RIS configuration.
inline MetricBundle evaluate(const ScenarioConfig& cfg, const RisConfig& ris, const DirectLinks& direct,
                             const RisLinks& links) {
    const IsacWeights w = isac_weights(ris.alpha);
    const double c_in = alignment_factor(ris, cfg.bs);
    const double g_bob = reflection_gain(ris.num_elements, cfg.ris_gain, c_in, alignment_factor(ris, cfg.bob));
    const double g_eve = reflection_gain(ris.num_elements, cfg.ris_gain, c_in, alignment_factor(ris, cfg.eve));
    const double g_target =
        reflection_gain(ris.num_elements, cfg.ris_gain, c_in, alignment_factor(ris, cfg.target));

    const auto via_bob = detail::cascade_series(links.bs_ris, links.ris_bob, g_bob, w.eta_b);
    const auto via_eve = detail::cascade_series(links.bs_ris, links.ris_eve, g_eve, w.eta_b);
    const auto via_target = detail::cascade_series(links.bs_ris, links.ris_target, g_target, w.eta_t);
    const std::vector<cdouble> none(direct.bob.frames.size(), cdouble{0.0, 0.0});

    const auto& budget = cfg.link_budget;
    MetricBundle m;
    m.snr_b_db = combined_snr_db(direct.bob.frames, via_bob, budget, cfg.phase_mode);
    m.snr_e_db = combined_snr_db(direct.eve.frames, via_eve, budget, cfg.phase_mode);
    m.snr_t_total_db = combined_snr_db(direct.target.frames, via_target, budget, cfg.phase_mode);
    m.snr_t_direct_db = combined_snr_db(direct.target.frames, none, budget, cfg.phase_mode);
    m.delta_snr_b_db = m.snr_b_db - combined_snr_db(direct.bob.frames, none, budget, cfg.phase_mode);
    m.security_gap_db = security_gap(m.snr_b_db, m.snr_e_db);
    m.sensing_gain_db = sensing_gain(m.snr_t_total_db, m.snr_t_direct_db);
    return m;
}

/// Realizes all seven links and evaluates one candidate. The RIS-side links draw from
/// substreams keyed by stream_key; the direct links are shared by every candidate.
inline MetricBundle evaluate_candidate(const ScenarioConfig& cfg, const RisConfig& ris, std::uint64_t stream_key) {
    return evaluate(cfg, ris, realize_direct_links(cfg), realize_ris_links(cfg, ris.position, stream_key));
}

/// Keys the RIS-side substreams by the millimeter-quantized RIS position.
inline MetricBundle evaluate_candidate(const ScenarioConfig& cfg, const RisConfig& ris) {
    return evaluate_candidate(cfg, ris, position_key(ris.position.x, ris.position.y));
}

}  // namespace risopt
