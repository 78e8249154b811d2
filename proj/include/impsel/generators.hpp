#pragma once

#include "impsel/graph.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace impsel {

/// Directed cycle n -> n-1 -> ... -> 1 -> n.
NominationGraph cycle(int n);

/// 2-cycle on {1,2} beside the cycle n -> n-1 -> ... -> 3 -> n. Requires n >= 4.
NominationGraph two_cycle_path(int n);

/**
 * G_i: 2-cycle on {1,2}; the path i+2 -> ... -> 3 ends at 1 (at 2 when i = 0);
 * the path n -> ... -> i+3 ends at 2. Requires n >= 6, 0 <= i <= n/2 - 1.
 */
NominationGraph ub_family(int n, int i);

/// G_i with vertex 2 nominating n instead of 1. Requires 1 <= i <= n/2 - 1.
NominationGraph ub_family_prime(int n, int i);

/// Largest valid i for ub_family at this n.
inline int ub_family_max_index(int n) { return n / 2 - 1; }

/**
 * Tightness instance for the permutation mechanism: vertex 1 has indegree
 * delta, vertices 2..nprime+1 have indegree floor(delta/2), and every other
 * vertex has indegree at most 1. n = delta + 1 + nprime * (floor(delta/2) + 1).
 */
NominationGraph lower_bound_family(int delta, int nprime);

/// Vertex count of lower_bound_family(delta, nprime).
int lower_bound_family_size(int delta, int nprime);

/**
 * Least n' for which lower_bound_family(delta, n') pushes the permutation
 * mechanism strictly below alpha(delta) + epsilon.
 */
int required_nprime(int delta, double epsilon);

/// Every vertex picks a target uniformly among the other n-1.
NominationGraph random_graph(int n, std::uint64_t seed);

enum class FamilyKind { Cycle, TwoCyclePath, UbFamily, UbFamilyPrime, LowerBound, Random };

struct FamilySpec {
  FamilyKind kind = FamilyKind::Cycle;
  int n = 0;
  int i = 0;
  int delta = 0;
  int nprime = 0;
  std::uint64_t seed = 0;
};

/// Parses "family=name,param=value,..." (whitespace also separates pairs).
FamilySpec parse_family_spec(std::string_view text);
std::string family_name(FamilyKind kind);
NominationGraph generate(const FamilySpec& spec);

}  // namespace impsel
