#include "impsel/generators.hpp"

#include "impsel/errors.hpp"
#include "impsel/rng.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace impsel {

namespace {

using EdgeSet = std::set<std::pair<Vertex, Vertex>>;

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError(message);
}

/// Turns an explicit edge set into a graph, insisting on out-degree exactly one.
NominationGraph from_edges(int n, const EdgeSet& edges) {
  std::vector<Vertex> out(static_cast<std::size_t>(n), kNoTarget);
  for (const auto& [u, v] : edges) {
    require(u >= 1 && u <= n && v >= 1 && v <= n,
            "edge (" + std::to_string(u) + "," + std::to_string(v) + ") leaves 1.." + std::to_string(n));
    auto& slot = out[static_cast<std::size_t>(u - 1)];
    require(slot == kNoTarget, "vertex " + std::to_string(u) + " has two outgoing edges");
    slot = v;
  }
  return NominationGraph(std::move(out));
}

}  // namespace

NominationGraph cycle(int n) {
  require(n >= 2, "cycle needs n >= 2, got " + std::to_string(n));
  EdgeSet edges{{1, n}};
  for (int v = 1; v <= n - 1; ++v) edges.insert({v + 1, v});
  return from_edges(n, edges);
}

NominationGraph two_cycle_path(int n) {
  require(n >= 4, "two_cycle_path needs n >= 4, got " + std::to_string(n));
  EdgeSet edges{{1, 2}, {2, 1}, {3, n}};
  for (int v = 3; v <= n - 1; ++v) edges.insert({v + 1, v});
  return from_edges(n, edges);
}

NominationGraph ub_family(int n, int i) {
  require(n >= 6, "ub_family needs n >= 6, got " + std::to_string(n));
  require(i >= 0 && i <= ub_family_max_index(n),
          "ub_family index i=" + std::to_string(i) + " outside 0.." + std::to_string(ub_family_max_index(n)));
  EdgeSet edges{{1, 2}, {3, i == 0 ? 2 : 1}, {i + 3, 2}};
  for (int v = 1; v <= n - 1; ++v) {
    if (v != 2 && v != i + 2) edges.insert({v + 1, v});
  }
  return from_edges(n, edges);
}

NominationGraph ub_family_prime(int n, int i) {
  require(n >= 6, "ub_family_prime needs n >= 6, got " + std::to_string(n));
  require(i >= 1 && i <= ub_family_max_index(n),
          "ub_family_prime index i=" + std::to_string(i) + " outside 1.." + std::to_string(ub_family_max_index(n)));
  return ub_family(n, i).with_target(2, n);
}

int lower_bound_family_size(int delta, int nprime) {
  require(delta >= 2, "lower_bound_family needs delta >= 2, got " + std::to_string(delta));
  require(nprime >= 1, "lower_bound_family needs nprime >= 1, got " + std::to_string(nprime));
  return delta + 1 + nprime * (delta / 2 + 1);
}

NominationGraph lower_bound_family(int delta, int nprime) {
  const int n = lower_bound_family_size(delta, nprime);
  const int half = delta / 2;
  EdgeSet edges;
  // Hubs point into their own leaves. With half == 1 the closed-form target
  // 2v + delta + nprime - 2 overruns n for v >= 3, so those hubs use their
  // (single) leaf instead; the two rules agree wherever both are defined.
  edges.insert({1, delta + nprime});
  for (int v = 2; v <= nprime + 1; ++v) {
    edges.insert({v, half >= 2 ? 2 * v + delta + nprime - 2 : nprime + delta + v});
  }
  for (int v = nprime + 2; v <= nprime + delta + 1; ++v) edges.insert({v, 1});
  for (int v = 2; v <= nprime + 1; ++v) {
    for (int u = nprime + delta + 2 + (v - 2) * half; u <= nprime + delta + 1 + (v - 1) * half; ++u) {
      edges.insert({u, v});
    }
  }
  return from_edges(n, edges);
}

int required_nprime(int delta, double epsilon) {
  require(delta >= 2, "required_nprime needs delta >= 2, got " + std::to_string(delta));
  require(epsilon > 0.0 && epsilon < 1.0, "required_nprime needs 0 < epsilon < 1");
  const auto half = static_cast<double>(delta / 2);
  const double numerator = std::log((delta - half) * (half + 1)) - std::log((delta + 1) * epsilon);
  const double denominator = std::log(2 * half + 2) - std::log(2 * half + 1);
  const double threshold = numerator / denominator;
  // Strictly greater: an integral threshold moves up by one.
  const int least = static_cast<int>(std::floor(threshold)) + 1;
  return std::max(1, least);
}

NominationGraph random_graph(int n, std::uint64_t seed) {
  require(n >= 2, "random_graph needs n >= 2, got " + std::to_string(n));
  Rng rng(seed);
  std::vector<Vertex> out(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) {
    auto t = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n - 1))) + 1;
    if (t >= v) ++t;
    out[static_cast<std::size_t>(v - 1)] = t;
  }
  return NominationGraph(std::move(out));
}

// ---------------------------------------------------------------------------

namespace {

const std::map<std::string, FamilyKind, std::less<>>& family_names() {
  static const std::map<std::string, FamilyKind, std::less<>> names{
      {"cycle", FamilyKind::Cycle},
      {"two_cycle_path", FamilyKind::TwoCyclePath},
      {"c2n", FamilyKind::TwoCyclePath},
      {"ub", FamilyKind::UbFamily},
      {"ub_family", FamilyKind::UbFamily},
      {"ub_family_i", FamilyKind::UbFamily},
      {"ub_prime", FamilyKind::UbFamilyPrime},
      {"ub_family_prime", FamilyKind::UbFamilyPrime},
      {"ub_family_prime_i", FamilyKind::UbFamilyPrime},
      {"lb", FamilyKind::LowerBound},
      {"lower_bound", FamilyKind::LowerBound},
      {"random", FamilyKind::Random},
  };
  return names;
}

template <typename Int>
Int parse_number(std::string_view key, std::string_view value) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  require(!value.empty() && ec == std::errc() && ptr == value.data() + value.size(),
          "parameter " + std::string(key) + "='" + std::string(value) + "' is not an integer");
  return out;
}

}  // namespace

std::string family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Cycle: return "cycle";
    case FamilyKind::TwoCyclePath: return "two_cycle_path";
    case FamilyKind::UbFamily: return "ub_family_i";
    case FamilyKind::UbFamilyPrime: return "ub_family_prime_i";
    case FamilyKind::LowerBound: return "lower_bound";
    case FamilyKind::Random: return "random";
  }
  return "?";
}

FamilySpec parse_family_spec(std::string_view text) {
  FamilySpec spec;
  bool have_family = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of(", \t", start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view token = text.substr(start, end - start);
    start = end + 1;
    if (token.empty()) continue;
    const auto eq = token.find('=');
    require(eq != std::string_view::npos, "expected key=value, got '" + std::string(token) + "'");
    const std::string_view key = token.substr(0, eq);
    const std::string_view value = token.substr(eq + 1);
    if (key == "family") {
      const auto it = family_names().find(value);
      require(it != family_names().end(), "unknown family '" + std::string(value) + "'");
      spec.kind = it->second;
      have_family = true;
    } else if (key == "n") {
      spec.n = parse_number<int>(key, value);
    } else if (key == "i") {
      spec.i = parse_number<int>(key, value);
    } else if (key == "delta") {
      spec.delta = parse_number<int>(key, value);
    } else if (key == "nprime") {
      spec.nprime = parse_number<int>(key, value);
    } else if (key == "seed") {
      spec.seed = parse_number<std::uint64_t>(key, value);
    } else {
      throw InputError("unknown family parameter '" + std::string(key) + "'");
    }
  }
  require(have_family, "family spec needs family=<name>");
  return spec;
}

NominationGraph generate(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::Cycle: return cycle(spec.n);
    case FamilyKind::TwoCyclePath: return two_cycle_path(spec.n);
    case FamilyKind::UbFamily: return ub_family(spec.n, spec.i);
    case FamilyKind::UbFamilyPrime: return ub_family_prime(spec.n, spec.i);
    case FamilyKind::LowerBound: return lower_bound_family(spec.delta, spec.nprime);
    case FamilyKind::Random: return random_graph(spec.n, spec.seed);
  }
  throw InputError("unknown family");
}

}  // namespace impsel
