#include "impsel/distribution.hpp"

#include "impsel/errors.hpp"

#include <string>

namespace impsel {

SelectionDistribution::SelectionDistribution(std::vector<Rational> probs) : probs_(std::move(probs)) {
  Rational sum = 0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (probs_[i] < 0 || probs_[i] > 1) {
      throw InputError("probability of vertex " + std::to_string(i + 1) + " is " + to_string(probs_[i]));
    }
    sum += probs_[i];
  }
  if (sum > 1) throw InputError("probabilities sum to " + to_string(sum) + " > 1");
}

SelectionDistribution SelectionDistribution::from_counts(std::span<const std::uint64_t> counts,
                                                         std::uint64_t denominator) {
  std::vector<Rational> probs;
  probs.reserve(counts.size());
  const mpz_class den(std::to_string(denominator));
  for (std::uint64_t c : counts) {
    Rational q{mpz_class(std::to_string(c)), den};
    q.canonicalize();
    probs.push_back(std::move(q));
  }
  return SelectionDistribution(std::move(probs));
}

SelectionDistribution SelectionDistribution::uniform(int n) {
  return SelectionDistribution(std::vector<Rational>(static_cast<std::size_t>(n), make_rational(1, n)));
}

const Rational& SelectionDistribution::operator[](Vertex v) const {
  if (v < 1 || v > size()) throw InputError("vertex " + std::to_string(v) + " out of range");
  return probs_[static_cast<std::size_t>(v - 1)];
}

Rational SelectionDistribution::total() const {
  Rational sum = 0;
  for (const auto& p : probs_) sum += p;
  return sum;
}

Rational SelectionDistribution::expected_indegree(const PartialNominationGraph& g) const {
  if (g.size() != size()) throw InputError("distribution size does not match graph size");
  const auto deg = g.indegrees();
  Rational e = 0;
  for (std::size_t i = 0; i < probs_.size(); ++i) e += probs_[i] * deg[i];
  return e;
}

SelectionDistribution mix(const Rational& a, const SelectionDistribution& x, const Rational& b,
                          const SelectionDistribution& y) {
  if (x.size() != y.size()) throw InputError("mixing distributions of different sizes");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(x.size()));
  for (int v = 1; v <= x.size(); ++v) out.push_back(a * x[v] + b * y[v]);
  return SelectionDistribution(std::move(out));
}

}  // namespace impsel
