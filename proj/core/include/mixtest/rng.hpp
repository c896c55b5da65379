#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mixtest {

// Deterministic random stream used everywhere in the library.
//
// The generator is std::mt19937_64 (fully specified by the C++ standard), seeded
// with a single 64-bit value, so a stream is a pure function of its seed on every
// platform. Distribution transforms live in distributions.cpp and consume only
// uniform01()/next_u64(); none of the implementation-defined std::*_distribution
// classes are used.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform draw strictly inside (0,1) with 53-bit resolution. The +0.5 offset
    // keeps 0 and 1 unreachable, so quantile transforms never see an endpoint.
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

// splitmix64 finalizer; the fixed 64-bit mix behind substream derivation.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed for substream `index` of the stream identified by `seed`.
//
// substream_seed(s, i) = splitmix64(splitmix64(s) ^ splitmix64(i + phi)) with
// phi = 0x9e3779b97f4a7c15. Replicate b of a Monte-Carlo run seeded with s uses
// substream_seed(s, b); nested derivations chain the function (e.g. the harness
// uses substream_seed(substream_seed(table_seed, meta_index), role)). This makes
// every replicate's stream a pure function of (master seed, indices), independent
// of scheduling, which is what makes parallel runs bit-identical.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x9e3779b97f4a7c15ULL));
}

// Role tags for sibling substreams inside one replicate / meta-replication.
// Retry attempt a (family bootstrap re-estimation) uses kRoleRetryBase + a.
inline constexpr std::uint64_t kRoleData = 0;
inline constexpr std::uint64_t kRoleIntegration = 1;
inline constexpr std::uint64_t kRoleMc = 2;
inline constexpr std::uint64_t kRoleRetryBase = 16;

// FNV-1a hash of a byte string; turns human-readable labels (e.g. simulation
// scenario names) into substream indices.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace mixtest
