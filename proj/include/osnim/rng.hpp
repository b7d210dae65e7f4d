#pragma once

#include <cstdint>
#include <random>

namespace osnim {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent random streams derived from the same seed.
enum class Stream : std::uint64_t {
  arc_keep = 0x61726373ULL,
  reciprocation = 0x72656369ULL,
};

// Counter-based draw: a pure function of (seed, stream, counter).
constexpr std::uint64_t keyed_bits(std::uint64_t seed, Stream stream, std::uint64_t counter) {
  return mix64(mix64(seed ^ static_cast<std::uint64_t>(stream)) + mix64(counter));
}

constexpr double bits_to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Uniform in [0, 1).
constexpr double keyed_uniform(std::uint64_t seed, Stream stream, std::uint64_t counter) {
  return bits_to_unit(keyed_bits(seed, stream, counter));
}

// Sequential generator with portable helpers (std distributions are
// implementation-defined, so they are avoided where output must be stable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return bits_to_unit(engine_()); }

  // Uniform integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace osnim
