#pragma once

#include "impsel/analysis.hpp"
#include "impsel/distribution.hpp"
#include "impsel/graph.hpp"
#include "impsel/rational.hpp"

#include <json.hpp>

namespace impsel {

using Json = nlohmann::ordered_json;

/// Exact rationals serialize as "num/den" strings.
Json to_json(const Rational& q);
/// Graphs serialize in the text format, e.g. "3; 2,1,1".
Json to_json(const NominationGraph& g);
Json to_json(const SelectionDistribution& d);
Json to_json(const RatioReport& r);
Json to_json(const ImpartialityReport& r);
Json to_json(const WorstCase& r);
Json to_json(const BoundCheckReport& r);
Json to_json(const MassReport& r);
Json to_json(const MaxLeftReport& r);
Json to_json(const TightInstanceReport& r);
Json to_json(const SymmetryReport& r);
Json to_json(const CorrelationReport& r);
Json to_json(const UbChainReport& r);
Json to_json(const RatioEstimate& r);
Json to_json(const FrequencyCheck& r);
Json to_json(const TightnessReport& r);
Json to_json(const BoundRow& r);

}  // namespace impsel
