#include "impsel/graph_io.hpp"

#include "impsel/errors.hpp"

#include <charconv>
#include <string>

namespace impsel {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int parse_int(std::string_view token, std::string_view line) {
  token = trim(token);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw InputError("malformed graph line '" + std::string(line) + "'");
  }
  return value;
}

}  // namespace

std::string format_graph(const PartialNominationGraph& g) {
  std::string out = std::to_string(g.size()) + "; ";
  for (int v = 1; v <= g.size(); ++v) {
    if (v > 1) out += ',';
    out += std::to_string(g.targets()[static_cast<std::size_t>(v - 1)]);
  }
  return out;
}

PartialNominationGraph parse_partial_graph(std::string_view line) {
  const std::string_view body = trim(line);
  const auto semi = body.find(';');
  if (semi == std::string_view::npos) {
    throw InputError("graph line '" + std::string(line) + "' lacks the 'n;' prefix");
  }
  const int n = parse_int(body.substr(0, semi), line);
  std::vector<Vertex> targets;
  std::string_view rest = body.substr(semi + 1);
  while (true) {
    const auto comma = rest.find(',');
    targets.push_back(parse_int(rest.substr(0, comma), line));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (static_cast<int>(targets.size()) != n) {
    throw InputError("graph line declares n=" + std::to_string(n) + " but lists " +
                     std::to_string(targets.size()) + " targets");
  }
  return PartialNominationGraph(std::move(targets));
}

NominationGraph parse_graph(std::string_view line) { return NominationGraph::from_partial(parse_partial_graph(line)); }

}  // namespace impsel
