#include "impsel/rng.hpp"

#include "impsel/errors.hpp"

#include <numeric>

namespace impsel {

namespace {

/// 2^64 as a GMP integer.
const mpz_class& two_pow_64() {
  static const mpz_class value = mpz_class(1) << 64;
  return value;
}

mpz_class to_mpz(std::uint64_t x) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(x), 0, 0, &x);
  return z;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InputError("Rng::below needs a positive bound");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return x % bound;
}

void Rng::shuffle(std::span<Vertex> seq) {
  for (std::size_t i = seq.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(below(i));
    std::swap(seq[i - 1], seq[j]);
  }
}

Permutation Rng::permutation(int n) {
  std::vector<Vertex> seq(static_cast<std::size_t>(n));
  std::iota(seq.begin(), seq.end(), 1);
  shuffle(seq);
  return Permutation(std::move(seq));
}

bool Rng::bernoulli(const Rational& p) {
  // u = b / 2^64 < num/den  <=>  b * den < num * 2^64
  const mpz_class b = to_mpz(next_u64());
  return b * p.get_den() < p.get_num() * two_pow_64();
}

std::size_t Rng::categorical(std::span<const Rational> weights) {
  const mpz_class b = to_mpz(next_u64());
  Rational cumulative = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cumulative += weights[i];
    if (b * cumulative.get_den() < cumulative.get_num() * two_pow_64()) return i;
  }
  return weights.size();
}

Rng Rng::split() { return Rng(splitmix64(next_u64() ^ 0x5851f42d4c957f2dULL)); }

}  // namespace impsel
