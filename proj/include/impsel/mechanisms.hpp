#pragma once

#include "impsel/distribution.hpp"
#include "impsel/graph.hpp"
#include "impsel/permutation.hpp"
#include "impsel/rational.hpp"
#include "impsel/rng.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace impsel {

/// Limits on exact (enumerative) evaluation. Above them, use the samplers.
struct EnumerationLimits {
  /// Largest n for perm_exact / prug_exact (n! permutations).
  int perm_cap = 10;
  /// Largest n for prugd_exact / mix_exact (n * n! realizations).
  int prugd_cap = 8;
  /// Worker threads for permutation-space enumeration.
  int jobs = 1;
};

// ---------------------------------------------------------------------------
// Permutation mechanism

/**
 * How the candidate's own edge enters the comparison. The mechanism ignores
 * it (Exclude); Include is the naive variant, which is not impartial and is
 * kept only as a negative control.
 */
enum class CandidateEdgeRule { Exclude, Include };

struct PermStep {
  Vertex candidate;
  int indegree_from_left;
};

struct PermRunTrace {
  Permutation permutation;
  /// Candidate and d after each position (position 1 included).
  std::vector<PermStep> steps;
  Vertex selected;
  /// True indegree of the selected vertex.
  int selected_indegree;
};

PermRunTrace perm_run(const PartialNominationGraph& g, const Permutation& pi,
                      CandidateEdgeRule rule = CandidateEdgeRule::Exclude);

/// Selection counts over all n! permutations plus the max-indegree-from-left check.
struct PermTally {
  std::vector<std::uint64_t> wins;
  std::uint64_t runs = 0;
  /// Runs whose selected vertex did not attain the maximum indegree from the left.
  std::uint64_t max_left_violations = 0;
};

PermTally perm_tally(const PartialNominationGraph& g, const EnumerationLimits& limits = {},
                     CandidateEdgeRule rule = CandidateEdgeRule::Exclude);

SelectionDistribution perm_exact(const PartialNominationGraph& g,
                                 const EnumerationLimits& limits = {},
                                 CandidateEdgeRule rule = CandidateEdgeRule::Exclude);
Vertex perm_sample(const PartialNominationGraph& g, Rng& rng);
Vertex perm_sample(const PartialNominationGraph& g, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Random dictatorship

SelectionDistribution rd_exact(const NominationGraph& g);
Vertex rd_sample(const NominationGraph& g, Rng& rng);

// ---------------------------------------------------------------------------
// Plurality with runner-up and gap (inexact)

/**
 * p(pi) for one permutation. Entries are in {0, 1/2, 3/4}; a single p(pi) may
 * total 5/4, only the average over pi and its reverse is a distribution.
 */
/// Entry v-1 belongs to vertex v.
std::vector<Rational> prug_p_vector(const PartialNominationGraph& g, const Permutation& pi);

/// Average of p(pi) over all permutations, in units of 1/(4 n!).
std::vector<std::uint64_t> prug_quarter_tally(const PartialNominationGraph& g,
                                              const EnumerationLimits& limits = {});

SelectionDistribution prug_exact(const PartialNominationGraph& g,
                                 const EnumerationLimits& limits = {});
/// Draws pi, forms q = (p(pi) + p(pi^R)) / 2 and samples from q; nullopt selects nobody.
std::optional<Vertex> prug_sample(const PartialNominationGraph& g, Rng& rng);

// ---------------------------------------------------------------------------
// Default vertex wrapper

using InexactExact = std::function<SelectionDistribution(const PartialNominationGraph&)>;
using InexactSampler = std::function<std::optional<Vertex>(const PartialNominationGraph&, Rng&)>;

/// Averages inner(G - v) over v, assigning each deficit to the removed vertex v.
SelectionDistribution dv_wrap_exact(const InexactExact& inner, const NominationGraph& g);
Vertex dv_wrap_sample(const InexactSampler& inner, const NominationGraph& g, Rng& rng);

SelectionDistribution prugd_exact(const NominationGraph& g, const EnumerationLimits& limits = {});
Vertex prugd_sample(const NominationGraph& g, Rng& rng);

// ---------------------------------------------------------------------------
// Mixture mechanism

/// Probability of running Perm (rather than PRUG^D) when n >= 6.
Rational mix_perm_weight();
/// Below this many vertices the mixture is random dictatorship.
inline constexpr int kMixMinVertices = 6;

SelectionDistribution mix_exact(const NominationGraph& g, const EnumerationLimits& limits = {});
Vertex mix_sample(const NominationGraph& g, Rng& rng);

// ---------------------------------------------------------------------------
// Descriptor

enum class MechanismId { Perm, Rd, Prug, PrugD, Mix };

struct MechanismTraits {
  MechanismId id;
  std::string_view name;
  /// Probabilities always sum to one.
  bool exact;
  /// Defined on graphs with missing edges.
  bool accepts_partial;
};

const MechanismTraits& traits(MechanismId id);
std::span<const MechanismId> all_mechanisms();
/// "perm", "rd", "prug", "prugd", "mix".
MechanismId parse_mechanism(std::string_view name);

/**
 * A named evaluator over total graphs: exact distribution plus a sampler.
 * Samplers return nullopt only for inexact mechanisms.
 */
class Mechanism {
 public:
  using ExactFn = std::function<SelectionDistribution(const NominationGraph&)>;
  using SampleFn = std::function<std::optional<Vertex>(const NominationGraph&, Rng&)>;

  Mechanism(std::string name, bool exact, bool accepts_partial, ExactFn exact_fn,
            SampleFn sample_fn);

  static Mechanism get(MechanismId id, const EnumerationLimits& limits = {});
  /// Perm with the candidate's edge counted in the comparison (not impartial).
  static Mechanism broken_perm(const EnumerationLimits& limits = {});

  const std::string& name() const noexcept { return name_; }
  bool is_exact() const noexcept { return exact_; }
  bool accepts_partial() const noexcept { return accepts_partial_; }

  SelectionDistribution exact(const NominationGraph& g) const { return exact_fn_(g); }
  std::optional<Vertex> sample(const NominationGraph& g, Rng& rng) const {
    return sample_fn_(g, rng);
  }

 private:
  std::string name_;
  bool exact_;
  bool accepts_partial_;
  ExactFn exact_fn_;
  SampleFn sample_fn_;
};

}  // namespace impsel
