#pragma once

#include <cstdint>
#include <random>

namespace gpr {

/// Deterministic 64-bit seedable generator. The uniform and gaussian
/// transforms are implemented here (not via std:: distributions) so a given
/// seed yields the same stream on every standard library.
///
/// Single-owner: not safe to share across threads. Each worker derives its
/// own generator via derive_seed().
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform draw in [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via the Marsaglia polar method; the spare deviate of
  /// each accepted pair is cached.
  double gaussian();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Avalanche mixer used to derive independent per-trial seeds from
/// (master, sigma index, trial index). Index-based, so parallel and serial
/// sweeps see identical seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

}  // namespace gpr
