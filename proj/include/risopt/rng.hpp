#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace risopt {

/// Node pairs that carry a realized channel.
enum class LinkId : std::uint8_t {
    bs_bob = 0,
    bs_eve = 1,
    bs_target = 2,
    bs_ris = 3,
    ris_bob = 4,
    ris_eve = 5,
    ris_target = 6,
};

inline constexpr int kNumLinks = 7;

inline const char* to_string(LinkId id) {
    switch (id) {
        case LinkId::bs_bob: return "bs_bob";
        case LinkId::bs_eve: return "bs_eve";
        case LinkId::bs_target: return "bs_target";
        case LinkId::bs_ris: return "bs_ris";
        case LinkId::ris_bob: return "ris_bob";
        case LinkId::ris_eve: return "ris_eve";
        case LinkId::ris_target: return "ris_target";
    }
    return "unknown";
}

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stable seed for one (master seed, link, evaluation key, replicate) tuple.
/// Order of the fields matters; each is absorbed through a full mix round.
constexpr std::uint64_t derive_stream_seed(std::uint64_t master_seed, LinkId link, std::uint64_t key,
                                           std::uint64_t replicate = 0) {
    std::uint64_t h = mix64(master_seed);
    h = mix64(h ^ (static_cast<std::uint64_t>(link) + 0x51ed270b0a4f1d2dULL));
    h = mix64(h ^ key);
    h = mix64(h ^ replicate);
    return h;
}

/// Evaluation key for anything tied to a planar position, quantized to millimeters.
/// Equal positions (to the millimeter) share their channel randomness.
inline std::uint64_t position_key(double x, double y) {
    const auto qx = static_cast<std::uint64_t>(std::llround(x * 1000.0));
    const auto qy = static_cast<std::uint64_t>(std::llround(y * 1000.0));
    return mix64(qx) ^ (mix64(qy ^ 0x2545f4914f6cdd1dULL) << 1);
}

/// Key used for the RIS-independent direct links.
inline constexpr std::uint64_t kDirectLinkKey = 0xd1b54a32d192ed03ULL;

/// Deterministic generator for one substream. Not shared between threads.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    RngStream(std::uint64_t master_seed, LinkId link, std::uint64_t key, std::uint64_t replicate = 0)
        : engine_(derive_stream_seed(master_seed, link, key, replicate)) {}

    double normal(double mean = 0.0, double stddev = 1.0) { return normal_(engine_) * stddev + mean; }

    double uniform(double lo = 0.0, double hi = 1.0) {
        return lo + (hi - lo) * std::generate_canonical<double, 53>(engine_);
    }

    /// Circularly-symmetric complex Gaussian with E|z|^2 = 1.
    std::complex<double> complex_normal() {
        constexpr double s = std::numbers::sqrt2 / 2.0;
        const double re = normal_(engine_) * s;
        const double im = normal_(engine_) * s;
        return {re, im};
    }

    double phase() { return uniform(-std::numbers::pi, std::numbers::pi); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace risopt
