#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ginibias {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Folds a list of identifiers into a 64-bit seed. Order matters.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> ids) noexcept;

/// Seeded generator with platform-independent uniform and normal variates.
/// (std::uniform_real_distribution is implementation-defined, so it is not
/// used.)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform on (0, 1].
  double uniform_pos() noexcept { return 1.0 - uniform(); }
  /// Standard normal by the polar Box-Muller method.
  double normal() noexcept;

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ginibias
