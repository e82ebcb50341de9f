#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

// Seeding scheme: every randomized subsystem draws its generator seed from
// one master seed through derive_seed(master, stream, index). Streams are
// fixed tags (below), index separates repeated uses inside a stream (ECG
// pass number, retry attempt, Louvain level). Two subsystems therefore never
// share a generator state, and a whole run is reproducible from one seed.

namespace gclscore {

namespace seed_stream {
inline constexpr std::uint64_t kLouvainLevel = 0x101;
inline constexpr std::uint64_t kEcgPass = 0x102;
inline constexpr std::uint64_t kEcgFinal = 0x103;
inline constexpr std::uint64_t kSampling = 0x201;
inline constexpr std::uint64_t kPlantedAttempt = 0x301;
inline constexpr std::uint64_t kStructuredEmbedding = 0x302;
inline constexpr std::uint64_t kRandomEmbedding = 0x303;
inline constexpr std::uint64_t kClustering = 0x401;
}  // namespace seed_stream

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index = 0) {
    return splitmix64(splitmix64(master ^ (stream * 0x9e3779b97f4a7c15ULL)) + index);
}

/// mt19937_64 with hand-rolled variate transforms so that sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // multiply-shift; bias is < 2^-64 per draw, irrelevant at this scale
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    /// Standard normal via Box-Muller (pair cached).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace gclscore
