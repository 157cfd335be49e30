#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "risopt/metrics.hpp"
#include "risopt/parallel.hpp"

namespace risopt {

/// Batch evaluator over a fixed scenario. Direct links are realized once; RIS-side links
/// are realized once per distinct (millimeter-quantized) position in a batch. Results equal
/// evaluate_candidate(cfg, ris) for every element, in input order, for any worker count.
class ScenarioEvaluator {
public:
    explicit ScenarioEvaluator(ScenarioConfig cfg, unsigned workers = 1)
        : cfg_(std::move(cfg)), direct_(realize_direct_links(cfg_)), workers_(workers) {}

    [[nodiscard]] const ScenarioConfig& config() const { return cfg_; }

    std::vector<MetricBundle> operator()(std::span<const RisConfig> batch) const {
        std::vector<std::uint64_t> keys;
        std::vector<Point2D> positions;
        std::unordered_map<std::uint64_t, std::size_t> slot_of_key;
        std::vector<std::size_t> slot(batch.size());
        for (std::size_t i = 0; i < batch.size(); ++i) {
            const auto key = position_key(batch[i].position.x, batch[i].position.y);
            const auto [it, inserted] = slot_of_key.try_emplace(key, keys.size());
            if (inserted) {
                keys.push_back(key);
                positions.push_back(batch[i].position);
            }
            slot[i] = it->second;
        }

        std::vector<RisLinks> links(keys.size());
        parallel_for(keys.size(), workers_,
                     [&](std::size_t k) { links[k] = realize_ris_links(cfg_, positions[k], keys[k]); });

        std::vector<MetricBundle> out(batch.size());
        parallel_for(batch.size(), workers_,
                     [&](std::size_t i) { out[i] = evaluate(cfg_, batch[i], direct_, links[slot[i]]); });
        return out;
    }

private:
    ScenarioConfig cfg_;
    DirectLinks direct_;
    unsigned workers_;
};

/// Adapts a per-candidate function MetricBundle(const RisConfig&) to the batch interface.
template <typename Fn>
class PointwiseEvaluator {
public:
    explicit PointwiseEvaluator(Fn fn, unsigned workers = 1) : fn_(std::move(fn)), workers_(workers) {}

    std::vector<MetricBundle> operator()(std::span<const RisConfig> batch) const {
        std::vector<MetricBundle> out(batch.size());
        parallel_for(batch.size(), workers_, [&](std::size_t i) { out[i] = fn_(batch[i]); });
        return out;
    }

private:
    Fn fn_;
    unsigned workers_;
};

template <typename E>
concept BatchEvaluator = requires(const E& e, std::span<const RisConfig> batch) {
    { e(batch) } -> std::same_as<std::vector<MetricBundle>>;
};

}  // namespace risopt
