#pragma once

#include "impsel/permutation.hpp"
#include "impsel/rational.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace impsel {

/**
 * Seeded random stream: std::mt19937_64 seeded through SplitMix64, with
 * split() deriving independent child streams. All draws are defined in terms
 * of raw 64-bit outputs so results do not depend on the standard library's
 * distribution implementations.
 */
class Rng {
 public:
  static constexpr const char* kName = "mt19937_64/splitmix64";

  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on {0, ..., bound-1}; bound > 0. Unbiased (rejection).
  std::uint64_t below(std::uint64_t bound);

  /// Uniform vertex in {1..n}.
  Vertex vertex(int n) { return static_cast<Vertex>(below(static_cast<std::uint64_t>(n))) + 1; }

  /// Fisher-Yates over positions.
  Permutation permutation(int n);
  void shuffle(std::span<Vertex> seq);

  /**
   * True with probability p. The uniform variate is u = b / 2^64 for one
   * 64-bit draw b, compared exactly against p.
   */
  bool bernoulli(const Rational& p);

  /**
   * Index i with probability weights[i]; returns weights.size() ("nothing")
   * with the leftover mass when the weights sum to less than one. Same
   * 64-bit resolution as bernoulli().
   */
  std::size_t categorical(std::span<const Rational> weights);

  /// Independent child stream; advances this stream by one draw.
  Rng split();

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer, used for seeding and stream derivation.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace impsel
