#pragma once

#include <cstdint>
#include <string_view>

namespace microgrid::rng {

// splitmix64; used both as a generator and to derive stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    return splitmix64(s);
}

// Deterministic substream. Distributions are hand-rolled so results do not
// depend on the standard library implementation.
class Stream {
public:
    Stream() = default;
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return splitmix64(state_); }

    // uniform in [0, 1)
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + unit() * (hi - lo); }

    // uniform integer in [0, n), n > 0
    std::uint64_t integer(std::uint64_t n) { return next() % n; }

    bool bernoulli(double p) { return unit() < p; }

private:
    std::uint64_t state_ = 0;
};

// Substreams are addressed by (master seed, label, index pair). Search code
// keys substreams by logical position (generation, individual) so execution
// order and thread count never change the draws.
inline Stream substream(std::uint64_t master, std::string_view label,
                        std::uint64_t a = 0, std::uint64_t b = 0) {
    return Stream(mix(mix(mix(master, fnv1a(label)), a), b));
}

}  // namespace microgrid::rng
