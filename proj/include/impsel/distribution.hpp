#pragma once

#include "impsel/graph.hpp"
#include "impsel/rational.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace impsel {

/// Exact selection probabilities, one per vertex, with total at most 1.
class SelectionDistribution {
 public:
  explicit SelectionDistribution(std::vector<Rational> probs);

  /// counts[i] / denominator for vertex i+1.
  static SelectionDistribution from_counts(std::span<const std::uint64_t> counts,
                                           std::uint64_t denominator);
  static SelectionDistribution uniform(int n);

  int size() const noexcept { return static_cast<int>(probs_.size()); }
  const Rational& operator[](Vertex v) const;
  std::span<const Rational> probabilities() const noexcept { return probs_; }

  Rational total() const;
  /// True when the probabilities sum to exactly one.
  bool is_exact() const { return total() == 1; }

  /// E[indegree of the selected vertex]; non-selection contributes zero.
  Rational expected_indegree(const PartialNominationGraph& g) const;

  friend bool operator==(const SelectionDistribution&, const SelectionDistribution&) = default;

 private:
  std::vector<Rational> probs_;
};

/// a*x + b*y coordinate-wise.
SelectionDistribution mix(const Rational& a, const SelectionDistribution& x, const Rational& b,
                          const SelectionDistribution& y);

}  // namespace impsel
