#ifndef PLDPC_RNG_HPP
#define PLDPC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace pldpc {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Order-sensitive mix of several words into one seed. Used to derive
// per-frame random streams so results do not depend on scheduling.
inline std::uint64_t hash_mix(std::initializer_list<std::uint64_t> words) {
    std::uint64_t state = 0x243f6a8885a308d3ULL;
    std::uint64_t h = splitmix64(state);
    for (std::uint64_t w : words) {
        state ^= w;
        h ^= splitmix64(state);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Deterministic random stream. The engine is fully specified by the
// standard and the double/gaussian conversions below avoid the
// implementation-defined std::*_distribution classes, so identical seeds
// give identical streams on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // [0, 1)
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // (0, 1]
    double uniform_pos() { return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53; }

    // uniform integer in [0, n), n >= 1
    std::uint32_t below(std::uint32_t n) {
        return static_cast<std::uint32_t>(gen_() % n);
    }

    // standard normal, Box-Muller with one cached deviate
    double gaussian() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1 = uniform_pos();
        double u2 = uniform();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 6.283185307179586477 * u2;
        cached_ = radius * std::sin(angle);
        has_cached_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 gen_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace pldpc

#endif
