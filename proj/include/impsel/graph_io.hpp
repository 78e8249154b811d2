#pragma once

#include "impsel/graph.hpp"

#include <string>
#include <string_view>

namespace impsel {

// Text form, one graph per line: "n; t1,t2,...,tn" with 1-based targets and
// 0 for an absent edge.

std::string format_graph(const PartialNominationGraph& g);
inline std::string format_graph(const NominationGraph& g) { return format_graph(g.as_partial()); }

PartialNominationGraph parse_partial_graph(std::string_view line);
/// Rejects absent edges.
NominationGraph parse_graph(std::string_view line);

}  // namespace impsel
