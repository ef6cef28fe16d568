#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace implicitize {

/// Deterministic random source. Every random draw in the library flows
/// through this class so a fixed seed reproduces a run bit for bit; the
/// uniform mapping from engine output to doubles is spelled out here rather
/// than delegated to std distributions, whose results are
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Complex number of modulus exactly 1 with uniform phase.
  std::complex<double> unit_circle() {
    const double angle = 6.283185307179586476925286766559 * unit();
    return {std::cos(angle), std::sin(angle)};
  }

  /// Uniform phase, modulus uniform in [lo_mod, hi_mod].
  std::complex<double> annulus(double lo_mod, double hi_mod) {
    return uniform(lo_mod, hi_mod) * unit_circle();
  }

  std::uint64_t raw() { return gen_(); }

  /// Decorrelated stream seed, stable across runs for a given (seed, stream).
  static std::uint64_t child_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace implicitize
