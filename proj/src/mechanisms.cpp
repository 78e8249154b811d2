#include "impsel/mechanisms.hpp"

#include "impsel/enumerate.hpp"
#include "impsel/errors.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

namespace impsel {

namespace {

std::size_t idx(Vertex v) { return static_cast<std::size_t>(v - 1); }

void require_within_cap(const char* what, int n, int cap) {
  if (n > cap) {
    throw CapacityError(std::string(what) + " enumerates permutations of all " + std::to_string(n) +
                            " vertices, above the cap of " + std::to_string(cap) +
                            "; raise the cap or use the sampler",
                        static_cast<std::uint64_t>(cap));
  }
}

/**
 * Runs every ordering of {1..n}, split by the first vertex so disjoint chunks
 * can go to separate workers. `body(seq, state)` accumulates into a
 * per-worker State; the states are merged with `merge(into, from)`.
 */
template <typename State, typename Init, typename Body, typename Merge>
State enumerate_orderings(int n, int jobs, Init init, Body body, Merge merge) {
  std::vector<State> states;
  const int workers = std::max(1, std::min(jobs, n));
  states.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) states.push_back(init());
  parallel_chunks(static_cast<std::uint64_t>(n), workers, [&](std::uint64_t begin, std::uint64_t end, int w) {
    State& state = states[static_cast<std::size_t>(w)];
    std::vector<Vertex> seq(static_cast<std::size_t>(n));
    for (auto first = begin; first < end; ++first) {
      const auto lead = static_cast<Vertex>(first + 1);
      seq[0] = lead;
      std::size_t k = 1;
      for (Vertex v = 1; v <= n; ++v) {
        if (v != lead) seq[k++] = v;
      }
      do {
        body(std::span<const Vertex>(seq), state);
      } while (std::next_permutation(seq.begin() + 1, seq.end()));
    }
  });
  State total = std::move(states.front());
  for (std::size_t w = 1; w < states.size(); ++w) merge(total, states[w]);
  return total;
}

struct PermSelection {
  Vertex selected;
  int selected_left;
  int max_left;
};

/// One run of the candidate scan; `left` is scratch of size n.
PermSelection perm_select(std::span<const Vertex> out, std::span<const Vertex> seq, CandidateEdgeRule rule,
                          std::vector<int>& left) {
  std::fill(left.begin(), left.end(), 0);
  Vertex candidate = seq[0];
  int d = 0;
  int candidate_left = 0;
  int max_left = 0;
  if (out[idx(candidate)] != kNoTarget) ++left[idx(out[idx(candidate)])];
  for (std::size_t j = 1; j < seq.size(); ++j) {
    const Vertex v = seq[j];
    const int from_left = left[idx(v)];
    const bool candidate_edge = out[idx(candidate)] == v;
    const int compared = rule == CandidateEdgeRule::Exclude && candidate_edge ? from_left - 1 : from_left;
    if (compared >= d) {
      candidate = v;
      d = from_left;
      candidate_left = from_left;
    }
    max_left = std::max(max_left, from_left);
    if (out[idx(v)] != kNoTarget) ++left[idx(out[idx(v)])];
  }
  return {candidate, candidate_left, max_left};
}

/// Per-graph data for the plurality-with-runner-up-and-gap rule.
struct PrugContext {
  std::vector<Vertex> out;
  std::vector<int> deg;
  std::vector<char> gap;
  int max_deg = 0;

  explicit PrugContext(const PartialNominationGraph& g)
      : out(g.targets().begin(), g.targets().end()), deg(g.indegrees()), gap(out.size(), 0) {
    max_deg = *std::max_element(deg.begin(), deg.end());
    const int n = g.size();
    for (Vertex top = 1; top <= n; ++top) {
      if (deg[idx(top)] != max_deg) continue;  // the first-placed vertex always has maximum indegree
      bool holds = true;
      for (Vertex v = 1; v <= n && holds; ++v) {
        if (v == top) continue;
        const int without_top = deg[idx(v)] - (out[idx(top)] == v ? 1 : 0);
        holds = deg[idx(top)] >= without_top + 2;
      }
      gap[idx(top)] = holds ? 1 : 0;
    }
  }

  /**
   * Adds p(pi) in quarters to `quarters`. `pos[v-1]` is v's position; ties in
   * indegree go to the larger position.
   */
  void add_p_vector(std::span<const int> pos, std::span<std::uint64_t> quarters) const {
    const std::size_t n = out.size();
    std::size_t first = 0;
    std::size_t second = n;  // none yet
    auto beats = [&](std::size_t a, std::size_t b) {
      return deg[a] != deg[b] ? deg[a] > deg[b] : pos[a] > pos[b];
    };
    for (std::size_t v = 1; v < n; ++v) {
      if (beats(v, first)) {
        second = first;
        first = v;
      } else if (second == n || beats(v, second)) {
        second = v;
      }
    }
    quarters[first] += gap[first] ? 3 : 2;
    const auto first_vertex = static_cast<Vertex>(first + 1);
    if (out[second] == first_vertex &&
        (deg[second] == max_deg || (deg[second] == max_deg - 1 && pos[second] > pos[first]))) {
      quarters[second] += 2;
    }
  }
};

std::vector<int> positions_of(std::span<const Vertex> seq) {
  std::vector<int> pos(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) pos[idx(seq[i])] = static_cast<int>(i + 1);
  return pos;
}

}  // namespace

// ---------------------------------------------------------------------------
// Permutation mechanism

PermRunTrace perm_run(const PartialNominationGraph& g, const Permutation& pi, CandidateEdgeRule rule) {
  if (pi.size() != g.size()) throw InputError("permutation size does not match graph size");
  const auto out = g.targets();
  PermRunTrace trace{pi, {}, pi.at(1), 0};
  int d = 0;
  trace.steps.push_back({trace.selected, d});
  for (int j = 2; j <= g.size(); ++j) {
    const Vertex v = pi.at(j);
    const auto left = pi.prefix_set(v);
    int from_left = 0;
    int from_left_without_candidate = 0;
    for (Vertex u : left) {
      if (out[idx(u)] != v) continue;
      ++from_left;
      if (u != trace.selected) ++from_left_without_candidate;
    }
    const int compared = rule == CandidateEdgeRule::Exclude ? from_left_without_candidate : from_left;
    if (compared >= d) {
      trace.selected = v;
      d = from_left;
    }
    trace.steps.push_back({trace.selected, d});
  }
  trace.selected_indegree = g.indegree(trace.selected);
  return trace;
}

PermTally perm_tally(const PartialNominationGraph& g, const EnumerationLimits& limits, CandidateEdgeRule rule) {
  const int n = g.size();
  require_within_cap("perm_exact", n, limits.perm_cap);
  const std::vector<Vertex> out(g.targets().begin(), g.targets().end());
  struct State {
    PermTally tally;
    std::vector<int> scratch;
  };
  auto init = [n] {
    State s;
    s.tally.wins.assign(static_cast<std::size_t>(n), 0);
    s.scratch.assign(static_cast<std::size_t>(n), 0);
    return s;
  };
  auto body = [&out, rule](std::span<const Vertex> seq, State& s) {
    const auto run = perm_select(out, seq, rule, s.scratch);
    ++s.tally.wins[idx(run.selected)];
    ++s.tally.runs;
    if (run.selected_left != run.max_left) ++s.tally.max_left_violations;
  };
  auto merge = [](State& into, const State& from) {
    for (std::size_t i = 0; i < into.tally.wins.size(); ++i) into.tally.wins[i] += from.tally.wins[i];
    into.tally.runs += from.tally.runs;
    into.tally.max_left_violations += from.tally.max_left_violations;
  };
  return enumerate_orderings<State>(n, limits.jobs, init, body, merge).tally;
}

SelectionDistribution perm_exact(const PartialNominationGraph& g, const EnumerationLimits& limits,
                                 CandidateEdgeRule rule) {
  const auto tally = perm_tally(g, limits, rule);
  return SelectionDistribution::from_counts(tally.wins, tally.runs);
}

Vertex perm_sample(const PartialNominationGraph& g, Rng& rng) {
  std::vector<Vertex> seq(static_cast<std::size_t>(g.size()));
  std::iota(seq.begin(), seq.end(), 1);
  rng.shuffle(seq);
  std::vector<int> scratch(seq.size());
  return perm_select(g.targets(), seq, CandidateEdgeRule::Exclude, scratch).selected;
}

Vertex perm_sample(const PartialNominationGraph& g, std::uint64_t seed) {
  Rng rng(seed);
  return perm_sample(g, rng);
}

// ---------------------------------------------------------------------------
// Random dictatorship

SelectionDistribution rd_exact(const NominationGraph& g) {
  const auto deg = g.indegrees();
  std::vector<std::uint64_t> counts(deg.begin(), deg.end());
  return SelectionDistribution::from_counts(counts, static_cast<std::uint64_t>(g.size()));
}

Vertex rd_sample(const NominationGraph& g, Rng& rng) { return g.target(rng.vertex(g.size())); }

// ---------------------------------------------------------------------------
// Plurality with runner-up and gap

std::vector<Rational> prug_p_vector(const PartialNominationGraph& g, const Permutation& pi) {
  if (pi.size() != g.size()) throw InputError("permutation size does not match graph size");
  const PrugContext ctx(g);
  std::vector<std::uint64_t> quarters(static_cast<std::size_t>(g.size()), 0);
  const auto pos = positions_of(pi.sequence());
  ctx.add_p_vector(pos, quarters);
  std::vector<Rational> p;
  for (auto q : quarters) p.push_back(make_rational(static_cast<long>(q), 4));
  return p;
}

std::vector<std::uint64_t> prug_quarter_tally(const PartialNominationGraph& g, const EnumerationLimits& limits) {
  const int n = g.size();
  require_within_cap("prug_exact", n, limits.perm_cap);
  const PrugContext ctx(g);
  using State = std::vector<std::uint64_t>;
  // Positions of a uniform ordering are themselves a uniform ordering, so the
  // enumerated sequences are used directly as position vectors.
  return enumerate_orderings<State>(
      n, limits.jobs, [n] { return State(static_cast<std::size_t>(n), 0); },
      [&ctx](std::span<const Vertex> pos, State& quarters) { ctx.add_p_vector(pos, quarters); },
      [](State& into, const State& from) {
        for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
      });
}

SelectionDistribution prug_exact(const PartialNominationGraph& g, const EnumerationLimits& limits) {
  const auto quarters = prug_quarter_tally(g, limits);
  return SelectionDistribution::from_counts(quarters, 4 * factorial(g.size()));
}

std::optional<Vertex> prug_sample(const PartialNominationGraph& g, Rng& rng) {
  const int n = g.size();
  const PrugContext ctx(g);
  const auto pi = rng.permutation(n);
  auto pos = positions_of(pi.sequence());
  // q in eighths: p(pi) + p(pi^R), each in quarters.
  std::vector<std::uint64_t> eighths(static_cast<std::size_t>(n), 0);
  ctx.add_p_vector(pos, eighths);
  for (auto& p : pos) p = n + 1 - p;
  ctx.add_p_vector(pos, eighths);
  // u = b / 2^64 < c / 8  <=>  floor(b / 2^61) < c
  const std::uint64_t bucket = rng.next_u64() >> 61;
  std::uint64_t cumulative = 0;
  for (std::size_t v = 0; v < eighths.size(); ++v) {
    cumulative += eighths[v];
    if (bucket < cumulative) return static_cast<Vertex>(v + 1);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Default vertex

SelectionDistribution dv_wrap_exact(const InexactExact& inner, const NominationGraph& g) {
  const int n = g.size();
  std::vector<Rational> acc(static_cast<std::size_t>(n), Rational(0));
  for (Vertex fallback = 1; fallback <= n; ++fallback) {
    const auto dist = inner(g.without_out_edge(fallback));
    if (dist.size() != n) throw InputError("inner mechanism returned the wrong number of entries");
    for (Vertex v = 1; v <= n; ++v) acc[idx(v)] += dist[v];
    acc[idx(fallback)] += 1 - dist.total();
  }
  for (auto& p : acc) p /= n;
  return SelectionDistribution(std::move(acc));
}

Vertex dv_wrap_sample(const InexactSampler& inner, const NominationGraph& g, Rng& rng) {
  const Vertex fallback = rng.vertex(g.size());
  return inner(g.without_out_edge(fallback), rng).value_or(fallback);
}

SelectionDistribution prugd_exact(const NominationGraph& g, const EnumerationLimits& limits) {
  const int n = g.size();
  require_within_cap("prugd_exact", n, std::min(limits.prugd_cap, limits.perm_cap));
  const std::uint64_t full = 4 * factorial(n);
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(n), 0);
  for (Vertex fallback = 1; fallback <= n; ++fallback) {
    const auto quarters = prug_quarter_tally(g.without_out_edge(fallback), limits);
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < quarters.size(); ++i) {
      acc[i] += quarters[i];
      assigned += quarters[i];
    }
    acc[idx(fallback)] += full - assigned;
  }
  return SelectionDistribution::from_counts(acc, full * static_cast<std::uint64_t>(n));
}

Vertex prugd_sample(const NominationGraph& g, Rng& rng) {
  return dv_wrap_sample([](const PartialNominationGraph& h, Rng& r) { return prug_sample(h, r); }, g, rng);
}

// ---------------------------------------------------------------------------
// Mixture

Rational mix_perm_weight() { return make_rational(825, 1049); }

SelectionDistribution mix_exact(const NominationGraph& g, const EnumerationLimits& limits) {
  if (g.size() < kMixMinVertices) return rd_exact(g);
  const Rational w = mix_perm_weight();
  return mix(w, perm_exact(g, limits), 1 - w, prugd_exact(g, limits));
}

Vertex mix_sample(const NominationGraph& g, Rng& rng) {
  if (g.size() < kMixMinVertices) return rd_sample(g, rng);
  return rng.bernoulli(mix_perm_weight()) ? perm_sample(g, rng) : prugd_sample(g, rng);
}

// ---------------------------------------------------------------------------
// Descriptors

namespace {

constexpr std::array<MechanismTraits, 5> kTraits{{
    {MechanismId::Perm, "perm", true, true},
    {MechanismId::Rd, "rd", true, false},
    {MechanismId::Prug, "prug", false, true},
    {MechanismId::PrugD, "prugd", true, false},
    {MechanismId::Mix, "mix", true, false},
}};

constexpr std::array<MechanismId, 5> kIds{MechanismId::Perm, MechanismId::Rd, MechanismId::Prug,
                                          MechanismId::PrugD, MechanismId::Mix};

}  // namespace

const MechanismTraits& traits(MechanismId id) { return kTraits[static_cast<std::size_t>(id)]; }

std::span<const MechanismId> all_mechanisms() { return kIds; }

MechanismId parse_mechanism(std::string_view name) {
  for (const auto& t : kTraits) {
    if (t.name == name) return t.id;
  }
  throw InputError("unknown mechanism '" + std::string(name) + "' (expected perm|rd|prug|prugd|mix)");
}

Mechanism::Mechanism(std::string name, bool exact, bool accepts_partial, ExactFn exact_fn, SampleFn sample_fn)
    : name_(std::move(name)),
      exact_(exact),
      accepts_partial_(accepts_partial),
      exact_fn_(std::move(exact_fn)),
      sample_fn_(std::move(sample_fn)) {}

Mechanism Mechanism::get(MechanismId id, const EnumerationLimits& limits) {
  const auto& t = traits(id);
  const std::string name(t.name);
  switch (id) {
    case MechanismId::Perm:
      return {name, t.exact, t.accepts_partial,
              [limits](const NominationGraph& g) { return perm_exact(g, limits); },
              [](const NominationGraph& g, Rng& rng) -> std::optional<Vertex> { return perm_sample(g, rng); }};
    case MechanismId::Rd:
      return {name, t.exact, t.accepts_partial, [](const NominationGraph& g) { return rd_exact(g); },
              [](const NominationGraph& g, Rng& rng) -> std::optional<Vertex> { return rd_sample(g, rng); }};
    case MechanismId::Prug:
      return {name, t.exact, t.accepts_partial,
              [limits](const NominationGraph& g) { return prug_exact(g, limits); },
              [](const NominationGraph& g, Rng& rng) { return prug_sample(g, rng); }};
    case MechanismId::PrugD:
      return {name, t.exact, t.accepts_partial,
              [limits](const NominationGraph& g) { return prugd_exact(g, limits); },
              [](const NominationGraph& g, Rng& rng) -> std::optional<Vertex> { return prugd_sample(g, rng); }};
    case MechanismId::Mix:
      return {name, t.exact, t.accepts_partial,
              [limits](const NominationGraph& g) { return mix_exact(g, limits); },
              [](const NominationGraph& g, Rng& rng) -> std::optional<Vertex> { return mix_sample(g, rng); }};
  }
  throw InputError("unknown mechanism id");
}

Mechanism Mechanism::broken_perm(const EnumerationLimits& limits) {
  return {"perm-include-candidate-edge", true, true,
          [limits](const NominationGraph& g) { return perm_exact(g, limits, CandidateEdgeRule::Include); },
          [](const NominationGraph& g, Rng& rng) -> std::optional<Vertex> {
            std::vector<Vertex> seq(static_cast<std::size_t>(g.size()));
            std::iota(seq.begin(), seq.end(), 1);
            rng.shuffle(seq);
            std::vector<int> scratch(seq.size());
            return perm_select(g.targets(), seq, CandidateEdgeRule::Include, scratch).selected;
          }};
}

}  // namespace impsel
