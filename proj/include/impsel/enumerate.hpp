#pragma once

#include "impsel/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <thread>
#include <vector>

namespace impsel {

/// |G_n| = (n-1)^n.
std::uint64_t nomination_graph_count(int n);

/// n!, throwing InputError when it does not fit in 64 bits.
std::uint64_t factorial(int n);

/**
 * Mixed-radix indexing of G_n: digit v-1 (base n-1) picks v's target among the
 * non-self vertices in increasing order. Index 0 is every vertex nominating
 * its smallest other vertex.
 */
NominationGraph nomination_graph_at(int n, std::uint64_t index);
std::uint64_t nomination_graph_index(const NominationGraph& g);

/// Calls fn(seq) for every ordering of {1..n} in lexicographic order.
template <typename Fn>
void for_each_permutation(int n, Fn&& fn) {
  std::vector<Vertex> seq(static_cast<std::size_t>(n));
  std::iota(seq.begin(), seq.end(), 1);
  do {
    fn(std::span<const Vertex>(seq));
  } while (std::next_permutation(seq.begin(), seq.end()));
}

/**
 * Splits [0, count) into contiguous chunks and runs fn(begin, end, worker) on
 * up to `jobs` threads. Workers must only touch their own state.
 */
void parallel_chunks(std::uint64_t count, int jobs,
                     const std::function<void(std::uint64_t, std::uint64_t, int)>& fn);

/// Worker count for a request: values <= 0 mean one per hardware thread.
int resolve_jobs(int requested);

}  // namespace impsel
