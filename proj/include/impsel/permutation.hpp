#pragma once

#include "impsel/graph.hpp"

#include <span>
#include <vector>

namespace impsel {

/**
 * An ordering of {1..n}. `at(i)` is the vertex in position i and `position(v)`
 * its inverse; both are 1-based.
 *
 * The same object doubles as a relabeling map v -> at(v) in relabel().
 */
class Permutation {
 public:
  explicit Permutation(std::vector<Vertex> sequence);

  static Permutation identity(int n);

  int size() const noexcept { return static_cast<int>(seq_.size()); }
  Vertex at(int position) const;
  int position(Vertex v) const;
  std::span<const Vertex> sequence() const noexcept { return seq_; }

  Permutation reversed() const;
  /// Exchanges the vertices at positions i and j; i == j is the identity.
  Permutation swapped(int i, int j) const;
  /// Vertices strictly to the left of v.
  std::vector<Vertex> prefix_set(Vertex v) const;
  /// Members of `subset` in the order they appear here.
  std::vector<Vertex> restrict_to(std::span<const Vertex> subset) const;
  Permutation inverse() const;

  /// Lexicographic successor; returns false (and wraps to identity) after the last.
  bool advance();

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.seq_ == b.seq_; }

 private:
  std::vector<Vertex> seq_;
  std::vector<int> pos_;
};

/// G_pi: every edge (u, v) becomes (pi.at(u), pi.at(v)).
PartialNominationGraph relabel(const PartialNominationGraph& g, const Permutation& pi);
NominationGraph relabel(const NominationGraph& g, const Permutation& pi);

}  // namespace impsel
