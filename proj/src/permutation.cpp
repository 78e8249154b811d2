#include "impsel/permutation.hpp"

#include "impsel/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace impsel {

Permutation::Permutation(std::vector<Vertex> sequence) : seq_(std::move(sequence)), pos_(seq_.size(), 0) {
  const int n = size();
  for (int i = 1; i <= n; ++i) {
    const Vertex v = seq_[static_cast<std::size_t>(i - 1)];
    if (v < 1 || v > n || pos_[static_cast<std::size_t>(v - 1)] != 0) {
      throw InputError("not a permutation of 1.." + std::to_string(n));
    }
    pos_[static_cast<std::size_t>(v - 1)] = i;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<Vertex> seq(static_cast<std::size_t>(n));
  std::iota(seq.begin(), seq.end(), 1);
  return Permutation(std::move(seq));
}

Vertex Permutation::at(int position) const {
  if (position < 1 || position > size()) throw InputError("position " + std::to_string(position) + " out of range");
  return seq_[static_cast<std::size_t>(position - 1)];
}

int Permutation::position(Vertex v) const {
  if (v < 1 || v > size()) throw InputError("vertex " + std::to_string(v) + " out of range");
  return pos_[static_cast<std::size_t>(v - 1)];
}

Permutation Permutation::reversed() const {
  return Permutation(std::vector<Vertex>(seq_.rbegin(), seq_.rend()));
}

Permutation Permutation::swapped(int i, int j) const {
  std::vector<Vertex> seq = seq_;
  at(i);
  at(j);
  std::swap(seq[static_cast<std::size_t>(i - 1)], seq[static_cast<std::size_t>(j - 1)]);
  return Permutation(std::move(seq));
}

std::vector<Vertex> Permutation::prefix_set(Vertex v) const {
  const int p = position(v);
  return {seq_.begin(), seq_.begin() + (p - 1)};
}

std::vector<Vertex> Permutation::restrict_to(std::span<const Vertex> subset) const {
  std::vector<Vertex> members(subset.begin(), subset.end());
  for (Vertex v : members) position(v);
  std::sort(members.begin(), members.end(), [this](Vertex a, Vertex b) { return position(a) < position(b); });
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

Permutation Permutation::inverse() const { return Permutation(pos_); }

bool Permutation::advance() {
  const bool more = std::next_permutation(seq_.begin(), seq_.end());
  for (int i = 1; i <= size(); ++i) pos_[static_cast<std::size_t>(seq_[static_cast<std::size_t>(i - 1)] - 1)] = i;
  return more;
}

PartialNominationGraph relabel(const PartialNominationGraph& g, const Permutation& pi) {
  if (g.size() != pi.size()) throw InputError("relabeling size does not match graph size");
  std::vector<Vertex> out(static_cast<std::size_t>(g.size()), kNoTarget);
  for (int u = 1; u <= g.size(); ++u) {
    const Vertex t = g.targets()[static_cast<std::size_t>(u - 1)];
    if (t != kNoTarget) out[static_cast<std::size_t>(pi.at(u) - 1)] = pi.at(t);
  }
  return PartialNominationGraph(std::move(out));
}

NominationGraph relabel(const NominationGraph& g, const Permutation& pi) {
  return NominationGraph::from_partial(relabel(g.as_partial(), pi));
}

}  // namespace impsel
