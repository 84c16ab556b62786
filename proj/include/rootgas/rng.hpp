#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "rootgas/types.hpp"

namespace rootgas {

/// Mixes (seed, stream) into an independent 64-bit seed (splitmix64 finalizer).
/// This is the documented splitting rule for per-chain and per-task seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Random source with a platform-independent output sequence.
///
/// std::mt19937_64 is bit-specified by the standard; the uniform and normal
/// transforms are implemented here rather than through the std distributions,
/// whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(derive_seed(seed, stream)) {}

  std::uint64_t next() {
    ++draws_;
    return engine_();
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1).
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  /// Standard normal via the Marsaglia polar method.
  double normal();

  /// N(0, variance) in the real case; for complex, b + ic with b, c ~ N(0, variance / 2).
  double gaussian(double variance) { return std::sqrt(variance) * normal(); }
  Complex complex_gaussian(double variance);

  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);

  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rootgas
