#include "impsel/analysis.hpp"

#include "impsel/enumerate.hpp"
#include "impsel/errors.hpp"
#include "impsel/generators.hpp"
#include "impsel/graph_io.hpp"
#include "impsel/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace impsel {

namespace {

int count_high_vertices(const NominationGraph& g) { return g.count_indegree_at_least(2); }

std::string fraction(const Rational& q) { return to_string(q); }

/// Exact distribution per graph of G_n, computed in parallel over graph indices.
std::vector<SelectionDistribution> distributions_over(const Mechanism& mechanism, int n,
                                                      const SweepOptions& options) {
  const std::uint64_t count = nomination_graph_count(n);
  const std::uint64_t per_graph = exact_cost(mechanism.name(), n);
  if (per_graph != 0 && count > options.budget / per_graph) {
    throw CapacityError("sweeping all " + std::to_string(count) + " graphs of size " + std::to_string(n) +
                            " with " + mechanism.name() + " exceeds the budget of " +
                            std::to_string(options.budget) + " permutation runs; use sampled mode",
                        options.budget);
  }
  std::vector<std::optional<SelectionDistribution>> slots(count);
  parallel_chunks(count, resolve_jobs(options.jobs), [&](std::uint64_t begin, std::uint64_t end, int) {
    for (auto index = begin; index < end; ++index) slots[index] = mechanism.exact(nomination_graph_at(n, index));
  });
  std::vector<SelectionDistribution> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Performance ratio

Rational performance_ratio(const NominationGraph& g, const SelectionDistribution& dist) {
  const int delta = g.max_indegree();
  if (delta < 1) throw InputError("performance ratio needs a graph with at least one edge");
  Rational r = dist.expected_indegree(g) / delta;
  r.canonicalize();
  return r;
}

RatioReport ratio(const Mechanism& mechanism, const NominationGraph& g) {
  const auto dist = mechanism.exact(g);
  const int delta = g.max_indegree();
  Rational expectation = dist.expected_indegree(g);
  Rational r = expectation / delta;
  r.canonicalize();
  return {g, mechanism.name(), expectation, delta, r};
}

// ---------------------------------------------------------------------------
// Closed forms

Rational perm_alpha(int delta) {
  if (delta < 1) throw InputError("perm_alpha needs delta >= 1, got " + std::to_string(delta));
  if (delta == 1) return 1;
  if (delta % 2 == 1) return perm_alpha(delta - 1);
  return make_rational(3L * delta + 2, 4L * delta + 4);
}

Rational prugd_alpha(int delta) {
  if (delta < 2) throw InputError("prugd_alpha needs delta >= 2, got " + std::to_string(delta));
  Rational r = make_rational(1, 2) + make_rational(7L * delta - 9, 6L * delta * (3L * delta - 2));
  r.canonicalize();
  return r;
}

Rational prugd_alpha_delta2() { return make_rational(65, 96); }
Rational prugd_alpha_delta3_single_high() { return make_rational(13, 18); }
Rational perm_alpha_multi_high() { return make_rational(31, 45); }
Rational prugd_alpha_delta3_multi_high() { return make_rational(25, 42); }

Rational mix_weight_perm() { return mix_perm_weight(); }
Rational mix_weight_prugd() { return 1 - mix_perm_weight(); }

std::vector<BoundRow> mix_alpha_table(int delta_min, int delta_max) {
  if (delta_min < 2) throw InputError("the mixture table starts at delta = 2");
  std::vector<BoundRow> rows;
  auto add = [&rows](int delta, HighVertexCase c, Rational perm, Rational prugd) {
    Rational m = mix_weight_perm() * perm + mix_weight_prugd() * prugd;
    m.canonicalize();
    rows.push_back({delta, c, std::move(perm), std::move(prugd), std::move(m)});
  };
  for (int delta = delta_min; delta <= delta_max; ++delta) {
    if (delta == 2) {
      add(2, HighVertexCase::Any, perm_alpha(2), prugd_alpha_delta2());
    } else if (delta == 3) {
      add(3, HighVertexCase::Single, perm_alpha(3), prugd_alpha_delta3_single_high());
      add(3, HighVertexCase::Multiple, perm_alpha_multi_high(), prugd_alpha_delta3_multi_high());
    } else {
      add(delta, HighVertexCase::Any, perm_alpha(delta), prugd_alpha(delta));
    }
  }
  return rows;
}

Rational mix_guarantee(int delta_max) {
  const auto rows = mix_alpha_table(2, delta_max);
  Rational best = rows.front().mix;
  for (const auto& r : rows) best = std::min(best, r.mix);
  return best;
}

Rational mix_odd_delta_chain_bound(int delta) {
  if (delta < 5 || delta % 2 == 0) throw InputError("the chain bound applies to odd delta >= 5");
  Rational r = make_rational(2923, 4196) - make_rational(907L * delta + 366, 4196L * delta * (3L * delta - 2));
  r.canonicalize();
  return r;
}

std::string figure3_csv(int delta_max) {
  if (delta_max < 2) throw InputError("figure3 needs delta_max >= 2");
  std::ostringstream out;
  out << "delta,high_vertices,perm,prugd,mix,perm_exact,prugd_exact,mix_exact,mix_chain_bound\n";
  for (const auto& row : mix_alpha_table(2, delta_max)) {
    const char* high = row.high_case == HighVertexCase::Single     ? "single"
                       : row.high_case == HighVertexCase::Multiple ? "multiple"
                                                                   : "any";
    out << row.delta << ',' << high << ',' << to_decimal(row.perm) << ',' << to_decimal(row.prugd) << ','
        << to_decimal(row.mix) << ',' << to_string(row.perm) << ',' << to_string(row.prugd) << ','
        << to_string(row.mix) << ',';
    if (row.delta >= 5 && row.delta % 2 == 1) out << to_string(mix_odd_delta_chain_bound(row.delta));
    out << '\n';
  }
  return out.str();
}

Rational upper_bound(int n) {
  if (n < 6) throw InputError("upper_bound needs n >= 6, got " + std::to_string(n));
  const long m = n;
  Rational r = make_rational(3 * m * m * m - 19 * m * m + 30 * m - 4, 4 * m * (m - 2) * (m - 4));
  r.canonicalize();
  return r;
}

Rational rd_alpha(int n) {
  if (n < 2) throw InputError("rd_alpha needs n >= 2");
  Rational r = make_rational(1, 2) + make_rational(1, n);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// Sweeps

std::uint64_t exact_cost(const std::string& mechanism, int n) {
  const std::uint64_t perms = factorial(n);
  const auto nn = static_cast<std::uint64_t>(n);
  if (mechanism == "rd") return 1;
  if (mechanism == "mix") return n < kMixMinVertices ? 1 : (nn + 1) * perms;
  if (mechanism == "prugd") return nn * perms;
  if (mechanism.rfind("perm", 0) == 0 || mechanism == "prug") return perms;
  return nn * perms;
}

std::vector<SelectionDistribution> all_distributions(const Mechanism& mechanism, int n,
                                                     const SweepOptions& options) {
  return distributions_over(mechanism, n, options);
}

ImpartialityReport check_impartial(const Mechanism& mechanism, int n, CheckMode mode, std::uint64_t seed,
                                   std::uint64_t samples, const SweepOptions& options) {
  ImpartialityReport report;
  report.mechanism = mechanism.name();
  report.n = n;
  report.mode = mode;
  auto record = [&report](const NominationGraph& g, const NominationGraph& h, Vertex v, const Rational& a,
                          const Rational& b) {
    ++report.violations;
    if (!report.counterexample) report.counterexample = ImpartialityCounterexample{g, h, v, a, b};
  };

  if (mode == CheckMode::Exhaustive) {
    const auto dists = distributions_over(mechanism, n, options);
    report.graphs = dists.size();
    // Index arithmetic: vertex v's digit has weight (n-1)^(v-1).
    std::vector<std::uint64_t> weight(static_cast<std::size_t>(n), 1);
    for (int v = 1; v < n; ++v) weight[static_cast<std::size_t>(v)] = weight[static_cast<std::size_t>(v - 1)] * (n - 1);
    auto digit_of = [](Vertex v, Vertex t) { return static_cast<std::uint64_t>(t < v ? t - 1 : t - 2); };
    for (std::uint64_t index = 0; index < dists.size(); ++index) {
      const auto g = nomination_graph_at(n, index);
      for (Vertex v = 1; v <= n; ++v) {
        const Vertex current = g.target(v);
        const auto w = weight[static_cast<std::size_t>(v - 1)];
        const auto base = index - digit_of(v, current) * w;
        for (Vertex t = 1; t <= n; ++t) {
          if (t == v || t == current) continue;
          ++report.deviations;
          const auto other = base + digit_of(v, t) * w;
          const auto& a = dists[index][v];
          const auto& b = dists[other][v];
          if (a != b) record(g, nomination_graph_at(n, other), v, a, b);
        }
      }
    }
    return report;
  }

  if (n < 3) throw InputError("sampled impartiality checks need n >= 3 so a deviation exists");
  Rng rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto g = random_graph(n, rng.next_u64());
    const Vertex v = rng.vertex(n);
    Vertex t = rng.vertex(n);
    while (t == v || t == g.target(v)) t = rng.vertex(n);
    const auto h = g.with_target(v, t);
    ++report.graphs;
    ++report.deviations;
    const auto a = mechanism.exact(g)[v];
    const auto b = mechanism.exact(h)[v];
    if (a != b) record(g, h, v, a, b);
  }
  return report;
}

WorstCase worst_case(const Mechanism& mechanism, int n, const SweepOptions& options) {
  const auto dists = distributions_over(mechanism, n, options);
  WorstCase result{mechanism.name(), n, Rational(2), nomination_graph_at(n, 0), dists.size()};
  for (std::uint64_t index = 0; index < dists.size(); ++index) {
    const auto g = nomination_graph_at(n, index);
    const auto r = performance_ratio(g, dists[index]);
    if (r < result.min_ratio) {
      result.min_ratio = r;
      result.witness = g;
    }
  }
  return result;
}

BoundCheckReport check_bound(const Mechanism& mechanism, int n, const std::string& description,
                             const BoundFn& bound, const SweepOptions& options) {
  BoundCheckReport report;
  report.mechanism = mechanism.name();
  report.description = description;
  report.n = n;
  const std::uint64_t count = nomination_graph_count(n);
  report.graphs = count;
  // Only in-scope graphs are evaluated.
  std::vector<std::uint64_t> scope;
  std::vector<Rational> bounds;
  for (std::uint64_t index = 0; index < count; ++index) {
    if (auto b = bound(nomination_graph_at(n, index))) {
      scope.push_back(index);
      bounds.push_back(std::move(*b));
    }
  }
  report.in_scope = scope.size();
  const std::uint64_t per_graph = exact_cost(mechanism.name(), n);
  if (per_graph != 0 && scope.size() > options.budget / per_graph) {
    throw CapacityError("bound check over " + std::to_string(scope.size()) + " graphs exceeds the budget of " +
                            std::to_string(options.budget) + " permutation runs",
                        options.budget);
  }
  std::vector<std::optional<Rational>> ratios(scope.size());
  parallel_chunks(scope.size(), resolve_jobs(options.jobs), [&](std::uint64_t begin, std::uint64_t end, int) {
    for (auto k = begin; k < end; ++k) {
      const auto g = nomination_graph_at(n, scope[k]);
      ratios[k] = performance_ratio(g, mechanism.exact(g));
    }
  });
  for (std::size_t k = 0; k < scope.size(); ++k) {
    const auto& r = *ratios[k];
    const auto g = nomination_graph_at(n, scope[k]);
    if (!report.min_ratio || r < *report.min_ratio) {
      report.min_ratio = r;
      report.witness = g;
    }
    Rational slack = r - bounds[k];
    if (!report.min_slack || slack < *report.min_slack) report.min_slack = slack;
    if (r < bounds[k]) {
      ++report.violations;
      if (!report.first_violation) report.first_violation = BoundViolation{g, r, bounds[k]};
    }
  }
  return report;
}

std::vector<NamedBound> claimed_bounds(MechanismId id, int n) {
  std::vector<NamedBound> out;
  switch (id) {
    case MechanismId::Perm:
      out.push_back({"ratio >= perm_alpha(delta)",
                     [](const NominationGraph& g) -> std::optional<Rational> { return perm_alpha(g.max_indegree()); }});
      out.push_back({"ratio >= 2/3", [](const NominationGraph&) -> std::optional<Rational> {
                       return make_rational(2, 3);
                     }});
      break;
    case MechanismId::Rd:
      out.push_back({"ratio >= 1/2 + 1/n", [n](const NominationGraph&) -> std::optional<Rational> {
                       return rd_alpha(n);
                     }});
      break;
    case MechanismId::Prug:
      break;
    case MechanismId::PrugD:
      // 3/4 - (2n-5)/(4n(n-2)) reaches 65/96 only from n = 6 on; at n = 5 the minimum is 2/3.
      if (n >= kMixMinVertices) {
        out.push_back({"delta = 2: ratio >= 65/96", [](const NominationGraph& g) -> std::optional<Rational> {
                         if (g.max_indegree() != 2) return std::nullopt;
                         return prugd_alpha_delta2();
                       }});
      }
      out.push_back({"delta = 3, one vertex of indegree >= 2: ratio >= 13/18",
                     [](const NominationGraph& g) -> std::optional<Rational> {
                       if (g.max_indegree() != 3 || count_high_vertices(g) != 1) return std::nullopt;
                       return prugd_alpha_delta3_single_high();
                     }});
      out.push_back({"delta >= 3: ratio >= 1/2 + (7d-9)/(6d(3d-2))",
                     [](const NominationGraph& g) -> std::optional<Rational> {
                       if (g.max_indegree() < 3) return std::nullopt;
                       return prugd_alpha(g.max_indegree());
                     }});
      break;
    case MechanismId::Mix:
      if (n < kMixMinVertices) {
        out.push_back({"n <= 5: ratio >= 1/2 + 1/n", [n](const NominationGraph&) -> std::optional<Rational> {
                         return rd_alpha(n);
                       }});
      } else {
        out.push_back({"ratio >= 2105/3147", [](const NominationGraph&) -> std::optional<Rational> {
                         return make_rational(2105, 3147);
                       }});
      }
      break;
  }
  return out;
}

MassReport check_mass(const Mechanism& mechanism, int n, const SweepOptions& options) {
  MassReport report{mechanism.name(), n, 0, 0, std::nullopt};
  const auto dists = distributions_over(mechanism, n, options);
  report.graphs = dists.size();
  for (std::uint64_t index = 0; index < dists.size(); ++index) {
    const auto total = dists[index].total();
    const bool ok = mechanism.is_exact() ? total == 1 : total <= 1;
    if (!ok) {
      ++report.violations;
      if (!report.counterexample) report.counterexample = nomination_graph_at(n, index);
    }
  }
  return report;
}

MaxLeftReport check_max_indegree_from_left(int n, const SweepOptions& options) {
  MaxLeftReport report;
  report.n = n;
  const std::uint64_t count = nomination_graph_count(n);
  report.graphs = count;
  const int jobs = resolve_jobs(options.jobs);
  std::vector<std::uint64_t> runs(static_cast<std::size_t>(jobs), 0);
  std::vector<std::uint64_t> bad(static_cast<std::size_t>(jobs), 0);
  EnumerationLimits inner = options.limits;
  inner.jobs = 1;
  parallel_chunks(count, jobs, [&](std::uint64_t begin, std::uint64_t end, int w) {
    for (auto index = begin; index < end; ++index) {
      const auto tally = perm_tally(nomination_graph_at(n, index), inner);
      runs[static_cast<std::size_t>(w)] += tally.runs;
      bad[static_cast<std::size_t>(w)] += tally.max_left_violations;
    }
  });
  for (int w = 0; w < jobs; ++w) {
    report.runs += runs[static_cast<std::size_t>(w)];
    report.violations += bad[static_cast<std::size_t>(w)];
  }
  return report;
}

TightInstanceReport check_tight_instances(int n, const SweepOptions& options) {
  TightInstanceReport report;
  report.n = n;
  const auto mech = Mechanism::get(MechanismId::Perm, options.limits);
  const auto dists = distributions_over(mech, n, options);
  report.graphs = dists.size();
  const Rational threshold = perm_alpha_multi_high();
  for (std::uint64_t index = 0; index < dists.size(); ++index) {
    const auto g = nomination_graph_at(n, index);
    if (performance_ratio(g, dists[index]) >= threshold) continue;
    ++report.below_threshold;
    const int delta = g.max_indegree();
    if ((delta == 2 || delta == 3) && count_high_vertices(g) == 1) continue;
    ++report.violations;
    if (!report.counterexample) report.counterexample = g;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Symmetry

SymmetryReport check_symmetric(const Mechanism& mechanism, std::span<const NominationGraph> graphs) {
  SymmetryReport report;
  report.mechanism = mechanism.name();
  for (const auto& g : graphs) {
    ++report.graphs;
    const int n = g.size();
    const auto base = mechanism.exact(g);
    auto pi = Permutation::identity(n);
    do {
      ++report.relabelings;
      const auto moved = mechanism.exact(relabel(g, pi));
      for (Vertex v = 1; v <= n; ++v) {
        if (moved[pi.at(v)] != base[v]) {
          report.counterexample = SymmetryCounterexample{g, pi, v, base[v], moved[pi.at(v)]};
          return report;
        }
      }
    } while (pi.advance());
  }
  return report;
}

SelectionDistribution symmetrize(const Mechanism& mechanism, const NominationGraph& g, int cap) {
  const int n = g.size();
  if (n > cap) {
    throw CapacityError("symmetrize evaluates the mechanism on all " + std::to_string(n) +
                            "! relabelings; n exceeds the cap of " + std::to_string(cap),
                        static_cast<std::uint64_t>(cap));
  }
  std::vector<Rational> acc(static_cast<std::size_t>(n), Rational(0));
  auto pi = Permutation::identity(n);
  do {
    const auto moved = mechanism.exact(relabel(g, pi));
    for (Vertex v = 1; v <= n; ++v) acc[static_cast<std::size_t>(v - 1)] += moved[pi.at(v)];
  } while (pi.advance());
  const Rational count(mpz_class(std::to_string(factorial(n))));
  for (auto& p : acc) {
    p /= count;
    p.canonicalize();
  }
  return SelectionDistribution(std::move(acc));
}

// ---------------------------------------------------------------------------
// Correlation

NominationGraph correlation_example_graph() { return NominationGraph({7, 3, 1, 7, 4, 7, 3}); }

CorrelationReport verify_correlation_lemma(const NominationGraph& g, int cap) {
  const int n = g.size();
  if (n > cap) {
    throw CapacityError("correlation check enumerates all " + std::to_string(n) +
                            "! permutations; n exceeds the cap of " + std::to_string(cap),
                        static_cast<std::uint64_t>(cap));
  }
  const auto top = g.max_indegree_and_top();
  const Vertex star = top.representative;
  const int delta = top.max_indegree;
  const auto out = g.targets();

  // level[j]: permutations with star at j from the left; reach[j][i]: of those,
  // how many give some other vertex >= i from the left.
  std::vector<std::uint64_t> level(static_cast<std::size_t>(delta + 1), 0);
  std::vector<std::vector<std::uint64_t>> reach(static_cast<std::size_t>(delta + 1),
                                                std::vector<std::uint64_t>(static_cast<std::size_t>(delta + 2), 0));
  std::vector<int> left(static_cast<std::size_t>(n));
  std::uint64_t total = 0;
  for_each_permutation(n, [&](std::span<const Vertex> seq) {
    std::fill(left.begin(), left.end(), 0);
    int star_left = 0;
    int other_max = 0;
    for (Vertex v : seq) {
      const int c = left[static_cast<std::size_t>(v - 1)];
      if (v == star) {
        star_left = c;
      } else {
        other_max = std::max(other_max, c);
      }
      ++left[static_cast<std::size_t>(out[static_cast<std::size_t>(v - 1)] - 1)];
    }
    ++total;
    ++level[static_cast<std::size_t>(star_left)];
    for (int i = 1; i <= std::min(other_max, delta); ++i) {
      ++reach[static_cast<std::size_t>(star_left)][static_cast<std::size_t>(i)];
    }
  });

  CorrelationReport report{g, star, delta, {}, {}, 0, 0, true};
  for (int j = 0; j <= delta; ++j) {
    Rational p(mpz_class(std::to_string(level[static_cast<std::size_t>(j)])), mpz_class(std::to_string(total)));
    p.canonicalize();
    if (p != make_rational(1, delta + 1)) report.uniform_levels = false;
    report.level_probability.push_back(std::move(p));
  }
  auto conditional = [&](int i, int j) -> std::optional<Rational> {
    const auto denom = level[static_cast<std::size_t>(j)];
    if (denom == 0) return std::nullopt;
    Rational q(mpz_class(std::to_string(reach[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])),
               mpz_class(std::to_string(denom)));
    q.canonicalize();
    return q;
  };
  for (int i = 1; i <= delta; ++i) {
    for (int j = 0; j < i; ++j) {
      CorrelationCell cell{i, j, conditional(i, j), conditional(i, i)};
      if (cell.vacuous()) {
        ++report.vacuous;
      } else if (!cell.holds()) {
        ++report.violations;
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Upper-bound chain

bool UbChainReport::passed() const {
  return symmetry.passed() &&
         std::all_of(checks.begin(), checks.end(), [](const ChainCheck& c) { return c.passed; });
}

UbChainReport verify_ub_chain(const Mechanism& mechanism, int n) {
  if (n < 6) throw InputError("the upper-bound family needs n >= 6, got " + std::to_string(n));
  const int nprime = ub_family_max_index(n);

  std::vector<NominationGraph> family;
  for (int i = 0; i <= nprime; ++i) family.push_back(ub_family(n, i));
  const auto cn = cycle(n);
  const auto c2n = two_cycle_path(n);
  family.push_back(cn);
  family.push_back(c2n);
  for (int i = 1; i <= nprime; ++i) family.push_back(ub_family_prime(n, i));

  UbChainReport report;
  report.mechanism = mechanism.name();
  report.n = n;
  report.symmetry = check_symmetric(mechanism, family);
  if (const auto& c = report.symmetry.counterexample) {
    std::ostringstream msg;
    msg << mechanism.name() << " is not symmetric: on G = " << format_graph(c->graph) << " relabeled by pi = (";
    const auto seq = c->relabeling.sequence();
    for (std::size_t k = 0; k < seq.size(); ++k) msg << (k ? "," : "") << seq[k];
    msg << "), f_" << c->vertex << "(G) = " << fraction(c->original) << " but f_" << c->relabeling.at(c->vertex)
        << "(G_pi) = " << fraction(c->relabeled);
    throw PreconditionError(msg.str());
  }

  std::vector<SelectionDistribution> g;
  for (int i = 0; i <= nprime; ++i) g.push_back(mechanism.exact(family[static_cast<std::size_t>(i)]));
  const auto fc = mechanism.exact(cn);
  const auto fc2 = mechanism.exact(c2n);
  const auto& p = g[0];

  auto check = [&report](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  auto eq = [&](const std::string& name, const Rational& a, const Rational& b) {
    check(name, a == b, fraction(a) + " vs " + fraction(b));
  };

  eq("p1 = f1(C_n)", p[1], fc[1]);
  eq("f1(C_n) = 1/n", fc[1], make_rational(1, n));
  eq("p3 = f3(C_2n)", p[3], fc2[3]);
  check("f3(C_2n) <= 1/(n-2)", fc2[3] <= make_rational(1, n - 2),
        fraction(fc2[3]) + " <= " + fraction(make_rational(1, n - 2)));
  for (int i = 0; i < nprime; ++i) {
    eq("f2(G_" + std::to_string(i) + ") = f1(G_" + std::to_string(i + 1) + ")", g[static_cast<std::size_t>(i)][2],
       g[static_cast<std::size_t>(i + 1)][1]);
  }
  for (int i = 1; i <= nprime; ++i) {
    const auto& gi = g[static_cast<std::size_t>(i)];
    eq("f3(G_" + std::to_string(i) + ") = p" + std::to_string(n - i + 1), gi[3], p[n - i + 1]);
    eq("f" + std::to_string(i + 3) + "(G_" + std::to_string(i) + ") = p" + std::to_string(i + 3), gi[i + 3],
       p[i + 3]);
  }
  {
    Rational lhs = p[2];
    for (Vertex v = 4; v <= n; ++v) lhs += p[v];
    const Rational rhs = make_rational(static_cast<long>(n) * n - 4L * n + 2, static_cast<long>(n) * (n - 2));
    check("p2 + sum_{v>=4} p_v >= (n^2-4n+2)/(n(n-2))", lhs >= rhs, fraction(lhs) + " >= " + fraction(rhs));
  }

  report.bound = upper_bound(n);
  for (int i = 1; i <= nprime; ++i) {
    const auto& gp = family[static_cast<std::size_t>(nprime + 2 + i)];
    const auto fp = mechanism.exact(gp);
    const Rational x = g[static_cast<std::size_t>(i)][2];
    eq("f2(G'_" + std::to_string(i) + ") = x" + std::to_string(i), fp[2], x);
    const auto r = performance_ratio(gp, fp);
    Rational cap = (x + 1) / 2;
    cap.canonicalize();
    check("ratio(G'_" + std::to_string(i) + ") <= (x" + std::to_string(i) + " + 1)/2", r <= cap,
          fraction(r) + " <= " + fraction(cap));
    report.x.push_back(x);
    report.prime_ratios.push_back(r);
  }
  report.min_prime_ratio = *std::min_element(report.prime_ratios.begin(), report.prime_ratios.end());
  const Rational min_x = *std::min_element(report.x.begin(), report.x.end());
  Rational via_x = (min_x + 1) / 2;
  via_x.canonicalize();
  check("(min x + 1)/2 <= upper_bound(n)", via_x <= report.bound,
        fraction(via_x) + " <= " + fraction(report.bound));
  check("min ratio(G'_i) <= upper_bound(n)", report.min_prime_ratio <= report.bound,
        fraction(report.min_prime_ratio) + " <= " + fraction(report.bound));
  return report;
}

// ---------------------------------------------------------------------------
// Monte Carlo

RatioEstimate estimate_ratio(const Mechanism& mechanism, const NominationGraph& g, std::uint64_t samples,
                             std::uint64_t seed) {
  if (samples < 2) throw InputError("estimate_ratio needs at least 2 samples");
  Rng rng(seed);
  const auto deg = g.indegrees();
  const double delta = g.max_indegree();
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto v = mechanism.sample(g, rng);
    if (!v) continue;
    const auto d = static_cast<std::uint64_t>(deg[static_cast<std::size_t>(*v - 1)]);
    sum += d;
    sum_sq += d * d;
  }
  const double n = static_cast<double>(samples);
  const double mean = static_cast<double>(sum) / n;
  const double var = (static_cast<double>(sum_sq) - n * mean * mean) / (n - 1);
  RatioEstimate est;
  est.samples = samples;
  est.mean = mean / delta;
  est.std_error = std::sqrt(std::max(0.0, var) / n) / delta;
  return est;
}

FrequencyCheck compare_sampler(const Mechanism& mechanism, const NominationGraph& g, std::uint64_t samples,
                               std::uint64_t seed) {
  const int n = g.size();
  FrequencyCheck check;
  check.counts.assign(static_cast<std::size_t>(n), 0);
  check.samples = samples;
  Rng rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    if (const auto v = mechanism.sample(g, rng)) {
      ++check.counts[static_cast<std::size_t>(*v - 1)];
    } else {
      ++check.none;
    }
  }
  const auto dist = mechanism.exact(g);
  const double total = static_cast<double>(samples);
  auto score = [&](const Rational& p, std::uint64_t hits) {
    if (p == 0) {
      if (hits != 0) ++check.degenerate_mismatches;
      return;
    }
    if (p == 1) {
      if (hits != samples) ++check.degenerate_mismatches;
      return;
    }
    const double q = to_double(p);
    const double sigma = std::sqrt(q * (1 - q) / total);
    check.max_z = std::max(check.max_z, std::abs(static_cast<double>(hits) / total - q) / sigma);
  };
  for (Vertex v = 1; v <= n; ++v) score(dist[v], check.counts[static_cast<std::size_t>(v - 1)]);
  score(1 - dist.total(), check.none);
  return check;
}

TightnessReport tightness_scan(int delta, std::span<const int> nprimes, std::uint64_t samples, std::uint64_t seed,
                               int exact_cap) {
  TightnessReport report{delta, perm_alpha(delta), {}, true};
  EnumerationLimits limits;
  limits.perm_cap = std::max(limits.perm_cap, exact_cap);
  const auto perm = Mechanism::get(MechanismId::Perm, limits);
  std::optional<Rational> previous;
  std::uint64_t stream = seed;
  for (int nprime : nprimes) {
    const auto g = lower_bound_family(delta, nprime);
    TightnessRow row{nprime, g.size(), g.size() <= exact_cap, std::nullopt, std::nullopt};
    if (row.exact) {
      const auto r = performance_ratio(g, perm.exact(g));
      if (r <= report.alpha || (previous && r >= *previous)) report.exact_rows_monotone = false;
      previous = r;
      row.exact_ratio = r;
    } else {
      stream = splitmix64(stream);
      row.estimate = estimate_ratio(perm, g, samples, stream);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace impsel
