#pragma once

#include <cstdint>
#include <random>

namespace rough {

// splitmix64 finalizer; the basis of all seed derivation in this project.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based derivation: stream k of a parent seed. Documented contract so
// that ensembles are extendable (sample i of a bigger run equals sample i of a
// smaller run with the same master seed).
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t counter) {
  return splitmix64(splitmix64(parent) ^ splitmix64(counter + 1));
}

// Thin wrapper over mt19937_64. All draws go through these helpers so the
// consumption order is fixed and platform-independent.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t word() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform01() { return double(word() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  bool bit() { return word() >> 63; }

  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection sampling keeps the distribution exact.
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
    std::uint64_t v;
    do {
      v = word();
    } while (v >= limit);
    return v % n;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rough
