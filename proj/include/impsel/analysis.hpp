#pragma once

#include "impsel/distribution.hpp"
#include "impsel/graph.hpp"
#include "impsel/mechanisms.hpp"
#include "impsel/permutation.hpp"
#include "impsel/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace impsel {

// ---------------------------------------------------------------------------
// Performance ratio

struct RatioReport {
  NominationGraph graph;
  std::string mechanism;
  Rational expectation;
  int max_indegree;
  /// expectation / max_indegree.
  Rational ratio;
};

/// E[indegree of selection] / max indegree for a given distribution.
Rational performance_ratio(const NominationGraph& g, const SelectionDistribution& dist);
RatioReport ratio(const Mechanism& mechanism, const NominationGraph& g);

// ---------------------------------------------------------------------------
// Closed-form guarantees

/// Permutation mechanism on graphs of maximum indegree delta.
Rational perm_alpha(int delta);
/// PRUG^D general guarantee, 1/2 + (7d-9)/(6d(3d-2)). delta >= 2.
Rational prugd_alpha(int delta);
/// PRUG^D on max indegree 2: 65/96.
Rational prugd_alpha_delta2();
/// PRUG^D on max indegree 3 with a single vertex of indegree >= 2: 13/18.
Rational prugd_alpha_delta3_single_high();
/// Perm guarantee when some vertex other than the top also has indegree >= 2
/// and delta is 2 or 3: 31/45.
Rational perm_alpha_multi_high();
/// PRUG^D on max indegree 3 with several vertices of indegree >= 2: 25/42.
Rational prugd_alpha_delta3_multi_high();

/// Weight of Perm in the mixture, and of PRUG^D.
Rational mix_weight_perm();
Rational mix_weight_prugd();

enum class HighVertexCase { Any, Single, Multiple };

struct BoundRow {
  int delta;
  /// Split by the number of vertices with indegree >= 2 (only used at delta 3).
  HighVertexCase high_case;
  Rational perm;
  Rational prugd;
  Rational mix;
};

/// Per-delta guarantees; delta 3 appears twice (single / multiple high vertices).
std::vector<BoundRow> mix_alpha_table(int delta_min, int delta_max);

/// Minimum of the mix column over the table: the mixture's overall guarantee.
Rational mix_guarantee(int delta_max = 15);

/**
 * Lower bound used for odd delta >= 5 after replacing each PRUG^D guarantee
 * by the chain's relaxed form: 2923/4196 - (907d + 366) / (4196 d (3d-2)).
 */
Rational mix_odd_delta_chain_bound(int delta);

/// CSV text: header plus one row per mix_alpha_table entry (delta 2..delta_max).
std::string figure3_csv(int delta_max);

/// Upper bound for every impartial mechanism on G_n, n >= 6.
Rational upper_bound(int n);

/// Random dictatorship guarantee on G_n for n in {2..5}: 1/2 + 1/n.
Rational rd_alpha(int n);

// ---------------------------------------------------------------------------
// Sweeps over G_n

struct SweepOptions {
  int jobs = 1;
  /// Budget in permutation runs for exhaustive sweeps.
  std::uint64_t budget = 4'000'000'000ULL;
  EnumerationLimits limits{};
};

/// Rough permutation-run cost of evaluating `mechanism` exactly on one graph of size n.
std::uint64_t exact_cost(const std::string& mechanism, int n);

/// Exact distributions of every graph in G_n, indexed as nomination_graph_at().
std::vector<SelectionDistribution> all_distributions(const Mechanism& mechanism, int n,
                                                     const SweepOptions& options = {});

struct ImpartialityCounterexample {
  NominationGraph graph;
  NominationGraph deviated;
  Vertex vertex;
  Rational before;
  Rational after;
};

enum class CheckMode { Exhaustive, Sampled };

struct ImpartialityReport {
  std::string mechanism;
  int n = 0;
  CheckMode mode = CheckMode::Exhaustive;
  std::uint64_t graphs = 0;
  std::uint64_t deviations = 0;
  std::uint64_t violations = 0;
  std::optional<ImpartialityCounterexample> counterexample;
  bool passed() const { return violations == 0; }
};

/**
 * Compares coordinate v between G and every graph obtained by retargeting v's
 * edge. Exhaustive mode covers all of G_n; sampled mode draws `samples`
 * (graph, vertex, new target) triples.
 */
ImpartialityReport check_impartial(const Mechanism& mechanism, int n, CheckMode mode,
                                   std::uint64_t seed = 0, std::uint64_t samples = 1000,
                                   const SweepOptions& options = {});

struct WorstCase {
  std::string mechanism;
  int n = 0;
  Rational min_ratio;
  NominationGraph witness;
  std::uint64_t graphs = 0;
};

WorstCase worst_case(const Mechanism& mechanism, int n, const SweepOptions& options = {});

struct BoundViolation {
  NominationGraph graph;
  Rational ratio;
  Rational bound;
};

struct BoundCheckReport {
  std::string mechanism;
  std::string description;
  int n = 0;
  std::uint64_t graphs = 0;
  std::uint64_t in_scope = 0;
  std::uint64_t violations = 0;
  std::optional<BoundViolation> first_violation;
  /// Smallest ratio among in-scope graphs and its witness.
  std::optional<Rational> min_ratio;
  std::optional<NominationGraph> witness;
  /// Smallest ratio - bound margin seen (0 means the bound is attained).
  std::optional<Rational> min_slack;
  bool passed() const { return violations == 0; }
};

/// Returns the bound to enforce for G, or nullopt when G is out of scope.
using BoundFn = std::function<std::optional<Rational>(const NominationGraph&)>;

BoundCheckReport check_bound(const Mechanism& mechanism, int n, const std::string& description,
                             const BoundFn& bound, const SweepOptions& options = {});

/// The guarantees claimed for a mechanism at size n, as one BoundFn per claim.
struct NamedBound {
  std::string description;
  BoundFn bound;
};
std::vector<NamedBound> claimed_bounds(MechanismId id, int n);

/// Total-probability check: inexact mechanisms sum to <= 1, exact ones to 1.
struct MassReport {
  std::string mechanism;
  int n = 0;
  std::uint64_t graphs = 0;
  std::uint64_t violations = 0;
  std::optional<NominationGraph> counterexample;
  bool passed() const { return violations == 0; }
};
MassReport check_mass(const Mechanism& mechanism, int n, const SweepOptions& options = {});

/// Max-indegree-from-the-left property of Perm over every permutation of every graph in G_n.
struct MaxLeftReport {
  int n = 0;
  std::uint64_t graphs = 0;
  std::uint64_t runs = 0;
  std::uint64_t violations = 0;
  bool passed() const { return violations == 0; }
};
MaxLeftReport check_max_indegree_from_left(int n, const SweepOptions& options = {});

/// Graphs where Perm falls below 31/45 must have delta in {2,3} and one high vertex.
struct TightInstanceReport {
  int n = 0;
  std::uint64_t graphs = 0;
  std::uint64_t below_threshold = 0;
  std::uint64_t violations = 0;
  std::optional<NominationGraph> counterexample;
  bool passed() const { return violations == 0; }
};
TightInstanceReport check_tight_instances(int n, const SweepOptions& options = {});

// ---------------------------------------------------------------------------
// Symmetry

struct SymmetryCounterexample {
  NominationGraph graph;
  Permutation relabeling;
  Vertex vertex;
  /// f_v(G) and f_{pi(v)}(G_pi).
  Rational original;
  Rational relabeled;
};

struct SymmetryReport {
  std::string mechanism;
  std::uint64_t graphs = 0;
  std::uint64_t relabelings = 0;
  std::optional<SymmetryCounterexample> counterexample;
  bool passed() const { return !counterexample.has_value(); }
};

/// Checks f_{pi(v)}(G_pi) = f_v(G) for all given graphs and all n! relabelings.
SymmetryReport check_symmetric(const Mechanism& mechanism, std::span<const NominationGraph> graphs);

/// (1/n!) sum over relabelings pi of f_{pi(v)}(G_pi).
SelectionDistribution symmetrize(const Mechanism& mechanism, const NominationGraph& g,
                                 int cap = 6);

// ---------------------------------------------------------------------------
// Indegree-from-the-left correlation

struct CorrelationCell {
  int i;
  int j;
  /// nullopt when the conditioning event has probability zero.
  std::optional<Rational> given_j;
  std::optional<Rational> given_i;
  /// Vacuous cells count as neither pass nor fail.
  bool vacuous() const { return !given_j || !given_i; }
  bool holds() const { return vacuous() || *given_j >= *given_i; }
};

struct CorrelationReport {
  NominationGraph graph;
  Vertex top_vertex;
  int max_indegree;
  /// P[top vertex has indegree i from the left], i = 0..max_indegree.
  std::vector<Rational> level_probability;
  std::vector<CorrelationCell> cells;
  std::uint64_t violations = 0;
  std::uint64_t vacuous = 0;
  bool uniform_levels = false;
  bool passed() const { return violations == 0 && uniform_levels; }
};

/**
 * Conditions on A_j (the fixed top vertex has j in-neighbours to its left) and
 * asks for B_i (some other vertex has >= i): P[B_i | A_j] >= P[B_i | A_i] for
 * 1 <= i <= delta, 0 <= j < i. Also checks P[A_i] = 1/(delta+1).
 */
CorrelationReport verify_correlation_lemma(const NominationGraph& g, int cap = 10);

/// The 7-vertex graph used to illustrate the swap argument (top vertex 7).
NominationGraph correlation_example_graph();

// ---------------------------------------------------------------------------
// Upper-bound construction

struct ChainCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct UbChainReport {
  std::string mechanism;
  int n = 0;
  SymmetryReport symmetry;
  std::vector<ChainCheck> checks;
  /// x_i = f_2(G_i), i = 1..n'.
  std::vector<Rational> x;
  /// ratio(f, G'_i), i = 1..n'.
  std::vector<Rational> prime_ratios;
  Rational min_prime_ratio;
  Rational bound;
  bool passed() const;
};

/**
 * Verifies the impartiality identities on the G_i / C_n / C_{2,n} / G'_i family
 * and that the best ratio on G'_i is at most upper_bound(n). Throws
 * PreconditionError (carrying the witness in its message) when the mechanism is
 * not symmetric on the family.
 */
UbChainReport verify_ub_chain(const Mechanism& mechanism, int n);

// ---------------------------------------------------------------------------
// Monte Carlo

struct RatioEstimate {
  std::uint64_t samples = 0;
  double mean = 0.0;
  /// Standard error of the mean.
  double std_error = 0.0;
  /// 3 sigma.
  double half_width() const { return 3.0 * std_error; }
};

/// Sample mean of indegree(selected)/max indegree; no selection counts as 0.
RatioEstimate estimate_ratio(const Mechanism& mechanism, const NominationGraph& g,
                             std::uint64_t samples, std::uint64_t seed);

struct FrequencyCheck {
  std::vector<std::uint64_t> counts;
  /// Times nothing was selected.
  std::uint64_t none = 0;
  std::uint64_t samples = 0;
  /// Largest |freq - p| / sigma over coordinates with 0 < p < 1.
  double max_z = 0.0;
  /// Coordinates with p in {0, 1} that were missed or hit incorrectly.
  std::uint64_t degenerate_mismatches = 0;
  bool within(double z) const { return max_z <= z && degenerate_mismatches == 0; }
};

FrequencyCheck compare_sampler(const Mechanism& mechanism, const NominationGraph& g,
                               std::uint64_t samples, std::uint64_t seed);

struct TightnessRow {
  int nprime;
  int n;
  bool exact;
  std::optional<Rational> exact_ratio;
  std::optional<RatioEstimate> estimate;
};

struct TightnessReport {
  int delta;
  Rational alpha;
  std::vector<TightnessRow> rows;
  /// Exact rows strictly decrease and stay above alpha.
  bool exact_rows_monotone = true;
};

TightnessReport tightness_scan(int delta, std::span<const int> nprimes, std::uint64_t samples,
                               std::uint64_t seed, int exact_cap = 9);

}  // namespace impsel
