#pragma once

#include <optional>
#include <span>
#include <vector>

namespace impsel {

/// Vertices are numbered 1..n.
using Vertex = int;

/// Sentinel stored for a vertex without an outgoing edge.
inline constexpr Vertex kNoTarget = 0;

/// Maximum indegree, the set of vertices attaining it, and a fixed representative.
struct TopVertices {
  int max_indegree = 0;
  std::vector<Vertex> top;
  /// Smallest-index member of `top`.
  Vertex representative = kNoTarget;
};

/**
 * Directed graph on {1..n} in which every vertex has at most one outgoing edge
 * and no vertex nominates itself. Arises as G minus v's edge.
 */
class PartialNominationGraph {
 public:
  /// `targets[i]` is the target of vertex i+1, or kNoTarget.
  explicit PartialNominationGraph(std::vector<Vertex> targets);

  int size() const noexcept { return static_cast<int>(out_.size()); }

  std::optional<Vertex> target(Vertex v) const;
  bool has_edge(Vertex from, Vertex to) const;

  /// Raw target table, kNoTarget for absent edges; index i holds vertex i+1.
  std::span<const Vertex> targets() const noexcept { return out_; }

  bool is_total() const noexcept;

  int indegree(Vertex v) const;
  int indegree_from(Vertex v, std::span<const Vertex> from) const;

  /// Indegrees of all vertices; index i holds vertex i+1.
  std::vector<int> indegrees() const;

  TopVertices max_indegree_and_top() const;
  int max_indegree() const { return max_indegree_and_top().max_indegree; }

  /// Same graph with v's outgoing edge removed. Idempotent.
  PartialNominationGraph without_out_edge(Vertex v) const;

  friend bool operator==(const PartialNominationGraph&, const PartialNominationGraph&) = default;

 private:
  void check_vertex(Vertex v) const;

  std::vector<Vertex> out_;
};

/// A graph in which every vertex nominates exactly one other vertex (n >= 2).
class NominationGraph {
 public:
  explicit NominationGraph(std::vector<Vertex> targets);

  /// Accepts a partial graph only if every vertex has its edge.
  static NominationGraph from_partial(const PartialNominationGraph& g);

  int size() const noexcept { return graph_.size(); }
  Vertex target(Vertex v) const { return *graph_.target(v); }
  bool has_edge(Vertex from, Vertex to) const { return graph_.has_edge(from, to); }
  std::span<const Vertex> targets() const noexcept { return graph_.targets(); }

  int indegree(Vertex v) const { return graph_.indegree(v); }
  int indegree_from(Vertex v, std::span<const Vertex> from) const {
    return graph_.indegree_from(v, from);
  }
  std::vector<int> indegrees() const { return graph_.indegrees(); }
  TopVertices max_indegree_and_top() const { return graph_.max_indegree_and_top(); }
  int max_indegree() const { return graph_.max_indegree(); }

  /// Number of vertices whose indegree is at least `threshold`.
  int count_indegree_at_least(int threshold) const;

  PartialNominationGraph without_out_edge(Vertex v) const { return graph_.without_out_edge(v); }

  /// Copy of this graph in which v nominates `new_target` instead.
  NominationGraph with_target(Vertex v, Vertex new_target) const;

  const PartialNominationGraph& as_partial() const noexcept { return graph_; }
  operator const PartialNominationGraph&() const noexcept { return graph_; }

  friend bool operator==(const NominationGraph&, const NominationGraph&) = default;

 private:
  PartialNominationGraph graph_;
};

}  // namespace impsel
