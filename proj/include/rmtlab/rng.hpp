#pragma once

#include <cstdint>

namespace rmtlab {

// SplitMix64 finalizer. Bijective on 64-bit words, used as the mixing step
// of every counter-based draw below.
std::uint64_t mix64(std::uint64_t x);

// Hash an ordered tuple of words into one key. Different tuples give
// unrelated keys, so (seed, i, j, component) addresses an independent stream.
std::uint64_t hash_words(std::uint64_t a, std::uint64_t b);
std::uint64_t hash_words(std::uint64_t a, std::uint64_t b, std::uint64_t c);
std::uint64_t hash_words(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d);

// Seed for trial number `index` of an experiment seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Counter-based stream: draw k is a pure function of (key, k).
class CounterStream {
public:
    explicit CounterStream(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64();
    // Uniform on the open interval (0, 1).
    double uniform();
    // Standard normal via Box-Muller (one output per two uniforms).
    double normal();

    std::uint64_t key() const { return key_; }
    std::uint64_t position() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace rmtlab
