#include "rmtlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace rmtlab {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_words(std::uint64_t a, std::uint64_t b) {
    return mix64(mix64(a) ^ (b + 0x632be59bd9b4e019ULL));
}

std::uint64_t hash_words(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix64(hash_words(a, b) ^ (c + 0x85157af5ULL * 0x2545f4914f6cdd1dULL));
}

std::uint64_t hash_words(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    return mix64(hash_words(a, b, c) ^ (d + 0xd6e8feb86659fd93ULL));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return hash_words(seed, 0x7472696146ULL, index);
}

std::uint64_t CounterStream::next_u64() {
    return hash_words(key_, counter_++);
}

double CounterStream::uniform() {
    // 53 random bits, shifted by half an ulp so 0 is never returned.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterStream::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rmtlab
