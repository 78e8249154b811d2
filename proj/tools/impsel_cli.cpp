// impsel: generate nomination graphs, evaluate selection mechanisms, and run
// the verification checks from the command line.

#include "impsel/analysis.hpp"
#include "impsel/errors.hpp"
#include "impsel/generators.hpp"
#include "impsel/graph_io.hpp"
#include "impsel/mechanisms.hpp"
#include "impsel/report_json.hpp"
#include "impsel/rng.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

using namespace impsel;

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kCapacity = 3 };

struct RunConfig {
  std::string command;
  std::string check;
  std::string mechanism = "perm";
  std::string graph_file;
  std::vector<std::string> family;
  std::optional<std::uint64_t> seed;
  std::uint64_t samples = 0;
  bool exact = false;
  std::string format;
  int n = 0;
  int cap = 0;
  int jobs = 1;
  std::uint64_t budget = SweepOptions{}.budget;
  std::string mode = "exhaustive";
  int delta = 2;
  int delta_max = 15;
  std::vector<int> nprimes;
  double epsilon = 0.05;
  int random_graphs = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

EnumerationLimits limits_for(const RunConfig& cfg, int jobs) {
  EnumerationLimits limits;
  if (cfg.cap > 0) {
    limits.perm_cap = cfg.cap;
    limits.prugd_cap = cfg.cap;
  }
  limits.jobs = jobs;
  return limits;
}

SweepOptions sweep_for(const RunConfig& cfg) {
  SweepOptions options;
  options.jobs = cfg.jobs;
  options.budget = cfg.budget;
  options.limits = limits_for(cfg, 1);
  return options;
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("IMPARTIAL_SEED")) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used);
      if (used == std::string(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw UsageError("IMPARTIAL_SEED must be an unsigned 64-bit integer, got '" + std::string(env) + "'");
  }
  throw UsageError("sampling needs a seed: pass --seed or set IMPARTIAL_SEED");
}

Json config_json(const RunConfig& cfg, std::optional<std::uint64_t> seed) {
  Json j{{"command", cfg.command}};
  if (!cfg.check.empty()) j["check"] = cfg.check;
  j["mechanism"] = cfg.mechanism;
  if (!cfg.graph_file.empty()) j["graph_file"] = cfg.graph_file;
  if (!cfg.family.empty()) j["family"] = cfg.family;
  if (cfg.n) j["n"] = cfg.n;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["samples"] = cfg.samples;
  j["exact"] = cfg.exact;
  j["format"] = cfg.format;
  j["cap"] = cfg.cap;
  j["jobs"] = cfg.jobs;
  j["rng"] = Rng::kName;
  return j;
}

Json envelope(const RunConfig& cfg, std::optional<std::uint64_t> seed) {
  return {{"tool", "impsel"}, {"version", IMPSEL_VERSION}, {"config", config_json(cfg, seed)}};
}

std::string csv_preamble(const RunConfig& cfg, std::optional<std::uint64_t> seed) {
  return "# impsel " IMPSEL_VERSION " config=" + config_json(cfg, seed).dump() +
         "\n# decimal columns are rounded to 12 places (lossy); *_exact columns are exact\n";
}

std::string read_graph_text(const std::string& file) {
  std::string text;
  if (file.empty() || file == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(file);
    if (!in) throw UsageError("cannot read graph file '" + file + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  // First non-empty, non-comment line.
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return line;
  }
  throw UsageError("no graph found in " + (file.empty() || file == "-" ? std::string("stdin") : file));
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

int cmd_gen(const RunConfig& cfg) {
  std::string text;
  for (const auto& token : cfg.family) text += token + " ";
  const auto spec = parse_family_spec(text);
  const auto g = generate(spec);
  if (cfg.format == "json") {
    auto j = envelope(cfg, spec.kind == FamilyKind::Random ? std::optional(spec.seed) : std::nullopt);
    j["family"] = family_name(spec.kind);
    j["graph"] = to_json(g);
    j["n"] = g.size();
    j["max_indegree"] = g.max_indegree();
    print(j);
  } else {
    std::cout << format_graph(g) << '\n';
  }
  return kPass;
}

/// The five mechanisms plus the naive Perm variant, accepted as a negative control.
Mechanism resolve_mechanism(const std::string& name, const EnumerationLimits& limits) {
  const auto broken = Mechanism::broken_perm(limits);
  if (name == broken.name()) return broken;
  return Mechanism::get(parse_mechanism(name), limits);
}

int cmd_eval(const RunConfig& cfg) {
  const auto g = parse_graph(read_graph_text(cfg.graph_file));
  const auto mech = resolve_mechanism(cfg.mechanism, limits_for(cfg, cfg.jobs));
  const bool sampling = cfg.samples > 0 && !cfg.exact;
  const auto seed = sampling ? std::optional(resolve_seed(cfg)) : std::nullopt;

  if (!sampling) {
    const auto dist = mech.exact(g);
    const auto report = performance_ratio(g, dist);
    if (cfg.format == "csv") {
      std::cout << csv_preamble(cfg, seed) << "vertex,indegree,probability,probability_exact\n";
      for (Vertex v = 1; v <= g.size(); ++v) {
        std::cout << v << ',' << g.indegree(v) << ',' << to_decimal(dist[v]) << ',' << to_string(dist[v]) << '\n';
      }
      std::cout << "# ratio," << to_decimal(report) << ',' << to_string(report) << '\n';
      return kPass;
    }
    auto j = envelope(cfg, seed);
    j["graph"] = to_json(g);
    j["distribution"] = to_json(dist);
    j["ratio"] = to_json(ratio(mech, g));
    print(j);
    return kPass;
  }

  const auto freq = compare_sampler(mech, g, cfg.samples, *seed);
  const auto est = estimate_ratio(mech, g, cfg.samples, *seed);
  if (cfg.format == "csv") {
    std::cout << csv_preamble(cfg, seed) << "vertex,indegree,count,frequency\n";
    for (Vertex v = 1; v <= g.size(); ++v) {
      const auto c = freq.counts[static_cast<std::size_t>(v - 1)];
      std::cout << v << ',' << g.indegree(v) << ',' << c << ','
                << to_decimal(Rational(mpz_class(std::to_string(c)), mpz_class(std::to_string(cfg.samples)))) << '\n';
    }
    std::cout << "# none," << freq.none << "\n# ratio_mean," << est.mean << "\n# ratio_3sigma," << est.half_width()
              << '\n';
    return kPass;
  }
  auto j = envelope(cfg, seed);
  j["graph"] = to_json(g);
  Json freqs = Json::array();
  for (auto c : freq.counts) freqs.push_back(static_cast<double>(c) / static_cast<double>(cfg.samples));
  j["counts"] = freq.counts;
  j["none"] = freq.none;
  j["frequencies"] = freqs;
  j["ratio_estimate"] = to_json(est);
  print(j);
  return kPass;
}

int finish(Json j, bool passed) {
  j["passed"] = passed;
  print(j);
  return passed ? kPass : kFail;
}

int cmd_verify(const RunConfig& cfg) {
  const auto options = sweep_for(cfg);
  const auto& check = cfg.check;

  if (check == "impartial") {
    if (cfg.n < 2) throw UsageError("verify impartial needs --n >= 2");
    const bool sampled = cfg.mode == "sampled";
    const auto seed = sampled ? std::optional(resolve_seed(cfg)) : std::nullopt;
    const auto mech = resolve_mechanism(cfg.mechanism, options.limits);
    const auto report = check_impartial(mech, cfg.n, sampled ? CheckMode::Sampled : CheckMode::Exhaustive,
                                        seed.value_or(0), cfg.samples ? cfg.samples : 1000, options);
    auto j = envelope(cfg, seed);
    j["report"] = to_json(report);
    return finish(j, report.passed());
  }

  if (check == "bounds") {
    if (cfg.n < 2) throw UsageError("verify bounds needs --n >= 2");
    const auto id = parse_mechanism(cfg.mechanism);
    const auto mech = Mechanism::get(id, options.limits);
    auto j = envelope(cfg, std::nullopt);
    j["reports"] = Json::array();
    bool passed = true;
    for (const auto& claim : claimed_bounds(id, cfg.n)) {
      const auto report = check_bound(mech, cfg.n, claim.description, claim.bound, options);
      passed = passed && report.passed();
      j["reports"].push_back(to_json(report));
    }
    if (j["reports"].empty()) j["note"] = "no guarantee is claimed for " + cfg.mechanism;
    return finish(j, passed);
  }

  if (check == "correlation") {
    const int cap = cfg.cap > 0 ? cfg.cap : 10;
    std::vector<NominationGraph> graphs;
    std::optional<std::uint64_t> seed;
    if (cfg.random_graphs > 0) {
      if (cfg.n < 2) throw UsageError("verify correlation --random needs --n");
      seed = resolve_seed(cfg);
      Rng rng(*seed);
      for (int k = 0; k < cfg.random_graphs; ++k) graphs.push_back(random_graph(cfg.n, rng.next_u64()));
    } else if (!cfg.graph_file.empty()) {
      graphs.push_back(parse_graph(read_graph_text(cfg.graph_file)));
    } else {
      graphs.push_back(correlation_example_graph());
    }
    auto j = envelope(cfg, seed);
    j["reports"] = Json::array();
    bool passed = true;
    std::uint64_t violations = 0;
    for (const auto& g : graphs) {
      const auto report = verify_correlation_lemma(g, cap);
      passed = passed && report.passed();
      violations += report.violations;
      if (graphs.size() == 1 || !report.passed()) j["reports"].push_back(to_json(report));
    }
    j["graphs"] = graphs.size();
    j["violations"] = violations;
    return finish(j, passed);
  }

  if (check == "ub-chain") {
    const int n = cfg.n ? cfg.n : 6;
    const auto mech = resolve_mechanism(cfg.mechanism, options.limits);
    auto j = envelope(cfg, std::nullopt);
    try {
      const auto report = verify_ub_chain(mech, n);
      j["report"] = to_json(report);
      return finish(j, report.passed());
    } catch (const PreconditionError& e) {
      j["error"] = e.what();
      return finish(j, false);
    }
  }

  if (check == "tightness") {
    const auto seed = resolve_seed(cfg);
    const auto nprimes = cfg.nprimes.empty() ? std::vector<int>{1, 2, 3, 30} : cfg.nprimes;
    const auto samples = cfg.samples ? cfg.samples : 1'000'000;
    const auto report = tightness_scan(cfg.delta, nprimes, samples, seed, cfg.cap > 0 ? cfg.cap : 9);
    const double target = to_double(report.alpha) + cfg.epsilon;
    bool passed = report.exact_rows_monotone;
    for (const auto& row : report.rows) {
      if (row.estimate) passed = passed && row.estimate->mean + row.estimate->half_width() < target;
    }
    auto j = envelope(cfg, seed);
    j["epsilon"] = cfg.epsilon;
    j["report"] = to_json(report);
    return finish(j, passed);
  }

  if (check == "lemma3") {
    if (cfg.n < 2) throw UsageError("verify lemma3 needs --n >= 2");
    const auto report = check_max_indegree_from_left(cfg.n, options);
    auto j = envelope(cfg, std::nullopt);
    j["report"] = to_json(report);
    return finish(j, report.passed());
  }

  throw UsageError("unknown check '" + check + "' (impartial|bounds|correlation|ub-chain|tightness|lemma3)");
}

int cmd_figure3(const RunConfig& cfg) {
  if (cfg.format == "json") {
    auto j = envelope(cfg, std::nullopt);
    j["delta_max"] = cfg.delta_max;
    j["rows"] = Json::array();
    for (const auto& row : mix_alpha_table(2, cfg.delta_max)) j["rows"].push_back(to_json(row));
    j["mix_guarantee"] = to_json(mix_guarantee(cfg.delta_max));
    print(j);
  } else {
    std::cout << csv_preamble(cfg, std::nullopt) << figure3_csv(cfg.delta_max);
  }
  return kPass;
}

int cmd_worst_case(const RunConfig& cfg) {
  if (cfg.n < 2) throw UsageError("worst-case needs --n >= 2");
  const auto options = sweep_for(cfg);
  const auto mech = resolve_mechanism(cfg.mechanism, options.limits);
  const auto result = worst_case(mech, cfg.n, options);
  auto j = envelope(cfg, std::nullopt);
  j["report"] = to_json(result);
  print(j);
  return kPass;
}

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--cap", cfg.cap, "Largest n for exact enumeration");
  app->add_option("--jobs", cfg.jobs, "Worker threads (0 = all hardware threads)");
  app->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Impartial selection mechanisms on nomination graphs"};
  app.set_version_flag("--version", std::string("impsel ") + IMPSEL_VERSION);
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Print a graph from a named family, e.g. family=cycle n=7");
  gen->add_option("spec", cfg.family, "family=NAME and key=value parameters")->required();
  gen->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* eval = app.add_subcommand("eval", "Selection distribution and performance ratio of one graph");
  std::vector<std::string> eval_args;
  eval->add_option("args", eval_args, "[mechanism] [graph file] ('-' or absent graph: stdin)");
  eval->add_option("--mech", cfg.mechanism, "Mechanism (same as the positional argument)");
  eval->add_flag("--exact", cfg.exact, "Exact rational evaluation (default unless --samples is given)");
  eval->add_option("--samples", cfg.samples, "Monte Carlo draws");
  eval->add_option("--seed", cfg.seed, "Seed for sampling (fallback: IMPARTIAL_SEED)");
  add_common(eval, cfg);

  auto* verify = app.add_subcommand("verify", "Run a verification check; exit 0 iff it passes");
  verify->add_option("check", cfg.check, "impartial|bounds|correlation|ub-chain|tightness|lemma3")->required();
  verify->add_option("--mech", cfg.mechanism, "perm|rd|prug|prugd|mix, or perm-include-candidate-edge as a negative control");
  verify->add_option("--n", cfg.n, "Graph size");
  verify->add_option("--seed", cfg.seed, "Seed (fallback: IMPARTIAL_SEED)");
  verify->add_option("--samples", cfg.samples, "Samples for sampled checks");
  verify->add_option("--mode", cfg.mode, "impartial: exhaustive or sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  verify->add_option("--graph", cfg.graph_file, "correlation: graph file ('-' for stdin)");
  verify->add_option("--random", cfg.random_graphs, "correlation: check this many seeded random graphs of size --n");
  verify->add_option("--delta", cfg.delta, "tightness: maximum indegree of the family");
  verify->add_option("--nprime", cfg.nprimes, "tightness: values of n'")->delimiter(',');
  verify->add_option("--epsilon", cfg.epsilon, "tightness: margin above alpha for sampled rows");
  verify->add_option("--budget", cfg.budget, "Permutation-run budget for exhaustive sweeps");
  add_common(verify, cfg);

  auto* fig = app.add_subcommand("figure3", "Per-delta guarantees of Perm, PRUG^D and the mixture");
  fig->add_option("delta_max", cfg.delta_max, "Largest delta")->check(CLI::Range(2, 1000));
  fig->add_option("--delta-max", cfg.delta_max, "Largest delta")->check(CLI::Range(2, 1000));
  fig->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"json", "csv"}));

  auto* worst = app.add_subcommand("worst-case", "Minimum performance ratio over all graphs of size n");
  worst->add_option("mechanism", cfg.mechanism, "perm|rd|prug|prugd|mix");
  worst->add_option("--mech", cfg.mechanism, "Mechanism");
  worst->add_option("--n", cfg.n, "Graph size")->required();
  worst->add_option("--budget", cfg.budget, "Permutation-run budget");
  add_common(worst, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (gen->parsed()) {
      cfg.command = "gen";
      if (cfg.format.empty()) cfg.format = "text";
      return cmd_gen(cfg);
    }
    if (cfg.format.empty()) cfg.format = fig->parsed() ? "csv" : "json";
    if (eval->parsed()) {
      // With --mech the only positional is the graph file.
      std::size_t next = 0;
      if (eval->count("--mech") == 0 && next < eval_args.size()) cfg.mechanism = eval_args[next++];
      if (next < eval_args.size()) cfg.graph_file = eval_args[next++];
      if (next < eval_args.size()) throw UsageError("eval takes at most a mechanism and a graph file");
    }
    if (eval->parsed()) {
      cfg.command = "eval";
      return cmd_eval(cfg);
    }
    if (verify->parsed()) {
      cfg.command = "verify";
      return cmd_verify(cfg);
    }
    if (fig->parsed()) {
      cfg.command = "figure3";
      return cmd_figure3(cfg);
    }
    cfg.command = "worst-case";
    return cmd_worst_case(cfg);
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return kCapacity;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
}
