#pragma once

#include <cmath>
#include <cstdint>

namespace sc3sim {

// Deterministic splitmix64 stream. One instance per run; handlers draw in
// dispatch order, so (seed, draw count) fully identifies the stream state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t next_u64() {
        ++draws_;
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Exponential with the given mean; mean <= 0 yields 0.
    double next_exponential(double mean) {
        if (mean <= 0.0) {
            return 0.0;
        }
        return -mean * std::log1p(-next_unit());
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t draws() const { return draws_; }

private:
    std::uint64_t seed_;
    std::uint64_t state_;
    std::uint64_t draws_ = 0;
};

} // namespace sc3sim
