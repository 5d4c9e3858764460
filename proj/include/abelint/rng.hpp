#pragma once

#include <cstdint>

namespace abelint {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Counter-based generator. All randomness in the project flows from one
// 64-bit seed; independent streams are derived per (module tag, task index),
// so parallel work gets identical draws regardless of partitioning.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(splitmix64(seed)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1), 53-bit mantissa; identical on every platform.
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    double next_in(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  private:
    std::uint64_t state_;
};

// Stream derivation: seed ⊕ module tag ⊕ task index, whitened twice.
inline Rng rng_stream(std::uint64_t seed, std::uint64_t module_tag, std::uint64_t index) {
    return Rng(splitmix64(seed ^ splitmix64(module_tag)) ^ splitmix64(index * 0x9e3779b97f4a7c15ull + 1));
}

namespace rng_tag {
constexpr std::uint64_t divisor_sampling = 0x64697673616d706cull; // "divsampl"
constexpr std::uint64_t coverage_probes  = 0x636f7670726f6265ull; // "covprobe"
constexpr std::uint64_t census_pairs     = 0x63656e7370616972ull; // "censpair"
} // namespace rng_tag

} // namespace abelint
