#pragma once

#include "impsel/distribution.hpp"
#include "impsel/enumerate.hpp"
#include "impsel/graph.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <string>

namespace testing {

inline oracle::Out to_oracle(const impsel::PartialNominationGraph& g) {
  oracle::Out out(1, 0);
  for (auto t : g.targets()) out.push_back(t);
  return out;
}

inline oracle::Out to_oracle(const impsel::NominationGraph& g) { return to_oracle(g.as_partial()); }

inline std::string show(const impsel::SelectionDistribution& d) {
  std::string s;
  for (const auto& p : d.probabilities()) s += impsel::to_string(p) + " ";
  return s;
}

inline std::string show(const oracle::Dist& d) {
  std::string s;
  for (std::size_t v = 1; v < d.size(); ++v) s += impsel::to_string(d[v]) + " ";
  return s;
}

inline bool same(const impsel::SelectionDistribution& d, const oracle::Dist& o) {
  if (static_cast<std::size_t>(d.size()) + 1 != o.size()) return false;
  for (impsel::Vertex v = 1; v <= d.size(); ++v) {
    if (d[v] != o[static_cast<std::size_t>(v)]) return false;
  }
  return true;
}

inline impsel::SelectionDistribution dist(std::initializer_list<impsel::Rational> values) {
  return impsel::SelectionDistribution(std::vector<impsel::Rational>(values));
}

inline impsel::Rational q(long num, long den = 1) { return impsel::make_rational(num, den); }

}  // namespace testing
