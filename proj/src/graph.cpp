#include "impsel/graph.hpp"

#include "impsel/errors.hpp"

#include <algorithm>
#include <string>

namespace impsel {

PartialNominationGraph::PartialNominationGraph(std::vector<Vertex> targets) : out_(std::move(targets)) {
  const int n = size();
  if (n < 2) throw InputError("a nomination graph needs at least 2 vertices, got " + std::to_string(n));
  for (int v = 1; v <= n; ++v) {
    const Vertex t = out_[static_cast<std::size_t>(v - 1)];
    if (t == kNoTarget) continue;
    if (t < 1 || t > n) {
      throw InputError("vertex " + std::to_string(v) + " nominates " + std::to_string(t) +
                       ", outside 1.." + std::to_string(n));
    }
    if (t == v) throw InputError("vertex " + std::to_string(v) + " nominates itself");
  }
}

void PartialNominationGraph::check_vertex(Vertex v) const {
  if (v < 1 || v > size()) {
    throw InputError("vertex " + std::to_string(v) + " outside 1.." + std::to_string(size()));
  }
}

std::optional<Vertex> PartialNominationGraph::target(Vertex v) const {
  check_vertex(v);
  const Vertex t = out_[static_cast<std::size_t>(v - 1)];
  if (t == kNoTarget) return std::nullopt;
  return t;
}

bool PartialNominationGraph::has_edge(Vertex from, Vertex to) const {
  check_vertex(from);
  check_vertex(to);
  return out_[static_cast<std::size_t>(from - 1)] == to;
}

bool PartialNominationGraph::is_total() const noexcept {
  return std::none_of(out_.begin(), out_.end(), [](Vertex t) { return t == kNoTarget; });
}

int PartialNominationGraph::indegree(Vertex v) const {
  check_vertex(v);
  return static_cast<int>(std::count(out_.begin(), out_.end(), v));
}

int PartialNominationGraph::indegree_from(Vertex v, std::span<const Vertex> from) const {
  check_vertex(v);
  int count = 0;
  for (Vertex u : from) {
    check_vertex(u);
    if (out_[static_cast<std::size_t>(u - 1)] == v) ++count;
  }
  return count;
}

std::vector<int> PartialNominationGraph::indegrees() const {
  std::vector<int> deg(out_.size(), 0);
  for (Vertex t : out_) {
    if (t != kNoTarget) ++deg[static_cast<std::size_t>(t - 1)];
  }
  return deg;
}

TopVertices PartialNominationGraph::max_indegree_and_top() const {
  const auto deg = indegrees();
  TopVertices result;
  result.max_indegree = *std::max_element(deg.begin(), deg.end());
  for (int v = 1; v <= size(); ++v) {
    if (deg[static_cast<std::size_t>(v - 1)] == result.max_indegree) result.top.push_back(v);
  }
  result.representative = result.top.front();
  return result;
}

PartialNominationGraph PartialNominationGraph::without_out_edge(Vertex v) const {
  check_vertex(v);
  PartialNominationGraph copy = *this;
  copy.out_[static_cast<std::size_t>(v - 1)] = kNoTarget;
  return copy;
}

NominationGraph::NominationGraph(std::vector<Vertex> targets) : graph_(std::move(targets)) {
  for (int v = 1; v <= size(); ++v) {
    if (graph_.targets()[static_cast<std::size_t>(v - 1)] == kNoTarget) {
      throw InputError("vertex " + std::to_string(v) + " has no nomination");
    }
  }
}

NominationGraph NominationGraph::from_partial(const PartialNominationGraph& g) {
  return NominationGraph(std::vector<Vertex>(g.targets().begin(), g.targets().end()));
}

int NominationGraph::count_indegree_at_least(int threshold) const {
  const auto deg = indegrees();
  return static_cast<int>(std::count_if(deg.begin(), deg.end(), [threshold](int d) { return d >= threshold; }));
}

NominationGraph NominationGraph::with_target(Vertex v, Vertex new_target) const {
  std::vector<Vertex> out(targets().begin(), targets().end());
  if (v < 1 || v > size()) throw InputError("vertex " + std::to_string(v) + " out of range");
  out[static_cast<std::size_t>(v - 1)] = new_target;
  return NominationGraph(std::move(out));
}

}  // namespace impsel
