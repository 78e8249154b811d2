#include "impsel/report_json.hpp"

#include "impsel/graph_io.hpp"

namespace impsel {

namespace {

const char* mode_name(CheckMode m) { return m == CheckMode::Exhaustive ? "exhaustive" : "sampled"; }

const char* high_name(HighVertexCase c) {
  switch (c) {
    case HighVertexCase::Single:
      return "single";
    case HighVertexCase::Multiple:
      return "multiple";
    case HighVertexCase::Any:
      break;
  }
  return "any";
}

template <typename T>
Json optional_json(const std::optional<T>& value) {
  return value ? to_json(*value) : Json(nullptr);
}

Json rationals(std::span<const Rational> values) {
  Json out = Json::array();
  for (const auto& q : values) out.push_back(to_json(q));
  return out;
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const NominationGraph& g) { return format_graph(g); }

Json to_json(const SelectionDistribution& d) {
  return {{"probabilities", rationals(d.probabilities())}, {"total", to_json(d.total())}};
}

Json to_json(const RatioReport& r) {
  return {{"graph", to_json(r.graph)},
          {"mechanism", r.mechanism},
          {"expected_indegree", to_json(r.expectation)},
          {"max_indegree", r.max_indegree},
          {"ratio", to_json(r.ratio)},
          {"ratio_decimal", to_decimal(r.ratio)}};
}

Json to_json(const ImpartialityReport& r) {
  Json j{{"check", "impartial"},       {"mechanism", r.mechanism},   {"n", r.n},
         {"mode", mode_name(r.mode)},  {"graphs", r.graphs},         {"deviations", r.deviations},
         {"violations", r.violations}, {"passed", r.passed()},       {"counterexample", nullptr}};
  if (const auto& c = r.counterexample) {
    j["counterexample"] = {{"graph", to_json(c->graph)},
                           {"deviated", to_json(c->deviated)},
                           {"vertex", c->vertex},
                           {"before", to_json(c->before)},
                           {"after", to_json(c->after)}};
  }
  return j;
}

Json to_json(const WorstCase& r) {
  return {{"mechanism", r.mechanism},
          {"n", r.n},
          {"graphs", r.graphs},
          {"min_ratio", to_json(r.min_ratio)},
          {"min_ratio_decimal", to_decimal(r.min_ratio)},
          {"witness", to_json(r.witness)},
          {"witness_max_indegree", r.witness.max_indegree()}};
}

Json to_json(const BoundCheckReport& r) {
  Json j{{"mechanism", r.mechanism},
         {"bound", r.description},
         {"n", r.n},
         {"graphs", r.graphs},
         {"in_scope", r.in_scope},
         {"violations", r.violations},
         {"passed", r.passed()},
         {"min_ratio", optional_json(r.min_ratio)},
         {"witness", optional_json(r.witness)},
         {"min_slack", optional_json(r.min_slack)},
         {"first_violation", nullptr}};
  if (const auto& v = r.first_violation) {
    j["first_violation"] = {{"graph", to_json(v->graph)}, {"ratio", to_json(v->ratio)}, {"bound", to_json(v->bound)}};
  }
  return j;
}

Json to_json(const MassReport& r) {
  return {{"check", "mass"},          {"mechanism", r.mechanism},
          {"n", r.n},                 {"graphs", r.graphs},
          {"violations", r.violations}, {"passed", r.passed()},
          {"counterexample", optional_json(r.counterexample)}};
}

Json to_json(const MaxLeftReport& r) {
  return {{"check", "lemma3"},  {"n", r.n},
          {"graphs", r.graphs}, {"runs", r.runs},
          {"violations", r.violations}, {"passed", r.passed()}};
}

Json to_json(const TightInstanceReport& r) {
  return {{"check", "below-31/45"},
          {"n", r.n},
          {"graphs", r.graphs},
          {"below_threshold", r.below_threshold},
          {"violations", r.violations},
          {"passed", r.passed()},
          {"counterexample", optional_json(r.counterexample)}};
}

Json to_json(const SymmetryReport& r) {
  Json j{{"mechanism", r.mechanism},
         {"graphs", r.graphs},
         {"relabelings", r.relabelings},
         {"passed", r.passed()},
         {"counterexample", nullptr}};
  if (const auto& c = r.counterexample) {
    const auto seq = c->relabeling.sequence();
    j["counterexample"] = {{"graph", to_json(c->graph)},
                           {"relabeling", std::vector<Vertex>(seq.begin(), seq.end())},
                           {"vertex", c->vertex},
                           {"original", to_json(c->original)},
                           {"relabeled", to_json(c->relabeled)}};
  }
  return j;
}

Json to_json(const CorrelationReport& r) {
  Json cells = Json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"i", c.i},
                     {"j", c.j},
                     {"given_j", optional_json(c.given_j)},
                     {"given_i", optional_json(c.given_i)},
                     {"status", c.vacuous() ? "vacuous" : (c.holds() ? "pass" : "fail")}});
  }
  return {{"check", "correlation"},
          {"graph", to_json(r.graph)},
          {"top_vertex", r.top_vertex},
          {"max_indegree", r.max_indegree},
          {"level_probability", rationals(r.level_probability)},
          {"uniform_levels", r.uniform_levels},
          {"violations", r.violations},
          {"vacuous", r.vacuous},
          {"passed", r.passed()},
          {"cells", cells}};
}

Json to_json(const UbChainReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"check", "ub-chain"},
          {"mechanism", r.mechanism},
          {"n", r.n},
          {"symmetry", to_json(r.symmetry)},
          {"checks", checks},
          {"x", rationals(r.x)},
          {"prime_ratios", rationals(r.prime_ratios)},
          {"min_prime_ratio", to_json(r.min_prime_ratio)},
          {"upper_bound", to_json(r.bound)},
          {"passed", r.passed()}};
}

Json to_json(const RatioEstimate& r) {
  return {{"samples", r.samples},
          {"mean", r.mean},
          {"std_error", r.std_error},
          {"ci_sigma", 3},
          {"ci_low", r.mean - r.half_width()},
          {"ci_high", r.mean + r.half_width()}};
}

Json to_json(const FrequencyCheck& r) {
  return {{"samples", r.samples},
          {"counts", r.counts},
          {"none", r.none},
          {"max_z", r.max_z},
          {"degenerate_mismatches", r.degenerate_mismatches}};
}

Json to_json(const TightnessReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"nprime", row.nprime},
                    {"n", row.n},
                    {"exact", row.exact},
                    {"ratio", optional_json(row.exact_ratio)},
                    {"estimate", optional_json(row.estimate)}});
  }
  return {{"check", "tightness"},
          {"delta", r.delta},
          {"alpha", to_json(r.alpha)},
          {"exact_rows_monotone", r.exact_rows_monotone},
          {"rows", rows}};
}

Json to_json(const BoundRow& r) {
  return {{"delta", r.delta},
          {"high_vertices", high_name(r.high_case)},
          {"perm", to_json(r.perm)},
          {"prugd", to_json(r.prugd)},
          {"mix", to_json(r.mix)}};
}

}  // namespace impsel
