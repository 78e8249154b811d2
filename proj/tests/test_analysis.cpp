#include "helpers.hpp"

#include "impsel/analysis.hpp"
#include "impsel/errors.hpp"
#include "impsel/generators.hpp"
#include "impsel/graph_io.hpp"

#include <sstream>

using namespace impsel;
using testing::q;
using testing::to_oracle;

namespace {

// Impartial (vertex 1's edge decides everything, and 1 is never chosen) but
// tied to labels, so not symmetric.
Mechanism label_dictator() {
  return Mechanism(
      "label-dictator", true, false,
      [](const NominationGraph& g) {
        std::vector<Rational> p(static_cast<std::size_t>(g.size()), Rational(0));
        p[static_cast<std::size_t>(g.target(1) - 1)] = 1;
        return SelectionDistribution(std::move(p));
      },
      [](const NominationGraph& g, Rng&) { return std::optional<Vertex>(g.target(1)); });
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("closed-form guarantees") {
  CHECK(perm_alpha(1) == 1);
  CHECK(perm_alpha(2) == q(2, 3));
  CHECK(perm_alpha(3) == q(2, 3));
  CHECK(perm_alpha(4) == q(7, 10));
  CHECK(perm_alpha(100) == q(302, 404));
  CHECK(prugd_alpha(2) == q(1, 2) + q(5, 48));
  CHECK(prugd_alpha(5) == q(1, 2) + q(13, 195));
  CHECK(prugd_alpha_delta2() == q(65, 96));
  CHECK(prugd_alpha_delta3_single_high() == q(13, 18));
  CHECK(perm_alpha_multi_high() == q(31, 45));
  CHECK(prugd_alpha_delta3_multi_high() == q(25, 42));
  CHECK(mix_weight_perm() + mix_weight_prugd() == 1);
  CHECK(rd_alpha(5) == q(7, 10));
  CHECK_THROWS_AS(prugd_alpha(1), InputError);
  CHECK_THROWS_AS(upper_bound(5), InputError);
}

TEST_CASE("upper bound values and its minimum over n") {
  CHECK(upper_bound(6) == q(35, 48));
  CHECK(upper_bound(7) == q(76, 105));
  CHECK(upper_bound(8) == q(139, 192));
  Rational best = upper_bound(6);
  int arg = 6;
  for (int n = 7; n <= 200; ++n) {
    if (upper_bound(n) < best) {
      best = upper_bound(n);
      arg = n;
    }
    CHECK(upper_bound(n) < q(3, 4));
  }
  CHECK(arg == 7);
}

TEST_CASE("mixture table") {
  const auto rows = mix_alpha_table(2, 15);
  REQUIRE(rows.size() == 15);
  CHECK(rows[0].delta == 2);
  CHECK(rows[0].perm == q(2, 3));
  CHECK(rows[0].prugd == q(65, 96));
  CHECK(rows[0].mix == q(2105, 3147));
  CHECK(rows[1].high_case == HighVertexCase::Single);
  CHECK(rows[1].mix == q(6406, 9441));
  CHECK(rows[2].high_case == HighVertexCase::Multiple);
  CHECK(rows[2].perm == q(31, 45));
  CHECK(rows[2].prugd == q(25, 42));
  CHECK(rows[2].mix == q(2105, 3147));
  CHECK(rows[3].mix == q(21217, 31470));
  CHECK(rows[4].mix == q(21133, 31470));
  CHECK(mix_odd_delta_chain_bound(5) == q(7119, 10490));
  for (const auto& row : rows) {
    CHECK(row.mix == mix_weight_perm() * row.perm + mix_weight_prugd() * row.prugd);
    CHECK(row.mix >= q(2105, 3147));
  }
  CHECK(mix_guarantee() == q(2105, 3147));

  std::istringstream csv(figure3_csv(4));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "delta,high_vertices,perm,prugd,mix,perm_exact,prugd_exact,mix_exact,mix_chain_bound");
  int lines = 0;
  while (std::getline(csv, line)) ++lines;
  CHECK(lines == 4);
}

TEST_CASE("performance ratio") {
  const NominationGraph g({2, 1, 1});
  CHECK(performance_ratio(g, perm_exact(g)) == q(5, 6));
  CHECK(ratio(Mechanism::get(MechanismId::Perm), parse_graph("7; 2,7,1,2,4,5,6")).ratio == q(1693, 2520));
  const auto lb = lower_bound_family(2, 1);
  CHECK(performance_ratio(lb, perm_exact(lb)) == q(43, 60));
  CHECK(performance_ratio(lb, perm_exact(lb)) == oracle::ratio(to_oracle(lb), oracle::perm(to_oracle(lb))));
}

TEST_CASE("every mechanism is impartial on small graphs") {
  for (auto id : all_mechanisms()) {
    for (int n : {3, 4}) {
      const auto report = check_impartial(Mechanism::get(id), n, CheckMode::Exhaustive);
      CHECK(report.passed());
      CHECK(report.graphs == nomination_graph_count(n));
    }
  }
  const auto sampled = check_impartial(Mechanism::get(MechanismId::Perm), 7, CheckMode::Sampled, 3, 200);
  CHECK(sampled.passed());
  CHECK(sampled.deviations == 200);
  CHECK(check_impartial(label_dictator(), 4, CheckMode::Exhaustive).passed());
}

TEST_CASE("the naive Perm variant is caught") {
  const auto three = check_impartial(Mechanism::broken_perm(), 3, CheckMode::Exhaustive);
  CHECK(three.violations == 12);
  REQUIRE(three.counterexample);
  const auto& c = *three.counterexample;
  CHECK(c.before != c.after);
  CHECK(c.graph.with_target(c.vertex, c.deviated.target(c.vertex)) == c.deviated);
  CHECK(check_impartial(Mechanism::broken_perm(), 4, CheckMode::Exhaustive).violations == 336);
  CHECK_FALSE(check_impartial(Mechanism::broken_perm(), 6, CheckMode::Sampled, 1, 2000).passed());
}

TEST_CASE("random dictatorship worst cases") {
  for (int n = 2; n <= 5; ++n) CHECK(worst_case(Mechanism::get(MechanismId::Rd), n).min_ratio == rd_alpha(n));
  const auto w = worst_case(Mechanism::get(MechanismId::Rd), 5);
  CHECK(w.min_ratio == q(7, 10));
  CHECK(w.witness.max_indegree_and_top().max_indegree == 2);
  CHECK(w.graphs == nomination_graph_count(5));
}

TEST_CASE("claimed guarantees hold at n = 5") {
  for (auto id : all_mechanisms()) {
    for (const auto& claim : claimed_bounds(id, 5)) {
      const auto report = check_bound(Mechanism::get(id), 5, claim.description, claim.bound);
      CAPTURE(claim.description);
      CHECK(report.passed());
      CHECK(report.in_scope > 0);
      REQUIRE(report.min_slack);
      CHECK(*report.min_slack >= 0);
    }
  }
  CHECK(claimed_bounds(MechanismId::Prug, 5).empty());
  CHECK(claimed_bounds(MechanismId::PrugD, 6).size() == claimed_bounds(MechanismId::PrugD, 5).size() + 1);
}

TEST_CASE("PRUG^D on delta = 2 needs six vertices for 65/96") {
  const auto delta2 = [](const NominationGraph& g) -> std::optional<Rational> {
    if (g.max_indegree() != 2) return std::nullopt;
    return q(65, 96);
  };
  const auto five = check_bound(Mechanism::get(MechanismId::PrugD), 5, "delta = 2", delta2);
  CHECK_FALSE(five.passed());
  CHECK(five.min_ratio == q(2, 3));
}

TEST_CASE("a false bound reports its first violation") {
  const auto report = check_bound(Mechanism::get(MechanismId::Perm), 4, "too strong",
                                  [](const NominationGraph&) { return std::optional<Rational>(q(9, 10)); });
  CHECK_FALSE(report.passed());
  REQUIRE(report.first_violation);
  CHECK(report.first_violation->ratio < q(9, 10));
  CHECK(report.first_violation->bound == q(9, 10));
  CHECK(report.graphs == 81);
  CHECK(report.in_scope == 81);
}

TEST_CASE("k top vertices give Perm at least k/(k+1)") {
  for (int n : {3, 4, 5}) {
    const auto report = check_bound(Mechanism::get(MechanismId::Perm), n, "k/(k+1)", [](const NominationGraph& g) {
      const auto k = static_cast<long>(g.max_indegree_and_top().top.size());
      return std::optional<Rational>(q(k, k + 1));
    });
    CHECK(report.passed());
  }
}

TEST_CASE("mass, max-left and tight instances") {
  CHECK(check_mass(Mechanism::get(MechanismId::Prug), 4).passed());
  CHECK(check_mass(Mechanism::get(MechanismId::PrugD), 4).passed());
  const auto left = check_max_indegree_from_left(4);
  CHECK(left.passed());
  CHECK(left.runs == 81 * 24);
  const auto tight = check_tight_instances(5);
  CHECK(tight.passed());
}

TEST_CASE("symmetry") {
  std::vector<NominationGraph> graphs;
  for (std::uint64_t i = 0; i < nomination_graph_count(4); ++i) graphs.push_back(nomination_graph_at(4, i));
  for (auto id : all_mechanisms()) CHECK(check_symmetric(Mechanism::get(id), graphs).passed());

  const auto bad = check_symmetric(label_dictator(), graphs);
  REQUIRE_FALSE(bad.passed());
  const auto& c = *bad.counterexample;
  CHECK(c.original != c.relabeled);

  for (const auto& g : graphs) CHECK(symmetrize(Mechanism::get(MechanismId::Perm), g) == perm_exact(g));
  CHECK(symmetrize(label_dictator(), cycle(5)) == SelectionDistribution::uniform(5));
  CHECK_THROWS_AS(symmetrize(label_dictator(), cycle(7)), CapacityError);
}

TEST_CASE("upper-bound chain") {
  const auto report = verify_ub_chain(Mechanism::get(MechanismId::Perm), 6);
  CHECK(report.passed());
  CHECK(report.bound == q(35, 48));
  CHECK(report.min_prime_ratio == q(163, 240));
  CHECK(report.x.size() == 2);
  for (const auto& check : report.checks) {
    CAPTURE(check.name);
    CAPTURE(check.detail);
    CHECK(check.passed);
  }
  try {
    verify_ub_chain(label_dictator(), 6);
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("not symmetric") != std::string::npos);
  }
  CHECK_THROWS_AS(verify_ub_chain(Mechanism::get(MechanismId::Perm), 5), InputError);
}

TEST_CASE("correlation of indegrees from the left") {
  const auto fig = verify_correlation_lemma(correlation_example_graph());
  CHECK(fig.passed());
  CHECK(fig.top_vertex == 7);
  CHECK(fig.max_indegree == 3);
  CHECK(fig.cells.size() == 6);  // 1 + 2 + 3
  for (const auto& p : fig.level_probability) CHECK(p == q(1, 4));

  const auto lb = verify_correlation_lemma(lower_bound_family(2, 1));
  CHECK(lb.passed());
  CHECK(lb.level_probability.size() == 3);

  for (std::uint64_t seed = 0; seed < 10; ++seed) CHECK(verify_correlation_lemma(random_graph(6, seed)).passed());
}

TEST_CASE("Monte Carlo estimates") {
  const auto two = estimate_ratio(Mechanism::get(MechanismId::Perm), cycle(2), 1000, 1);
  CHECK(two.mean == 1.0);
  CHECK(two.std_error == 0.0);

  const auto g = correlation_example_graph();
  const auto est = estimate_ratio(Mechanism::get(MechanismId::Perm), g, 20000, 9);
  const double exact = to_double(performance_ratio(g, perm_exact(g)));
  CHECK(std::abs(est.mean - exact) <= est.half_width() + 1e-12);
  CHECK(estimate_ratio(Mechanism::get(MechanismId::Perm), g, 500, 4).mean ==
        estimate_ratio(Mechanism::get(MechanismId::Perm), g, 500, 4).mean);

  for (auto id : all_mechanisms()) {
    const auto freq = compare_sampler(Mechanism::get(id), g, 20000, 11);
    CAPTURE(traits(id).name);
    CHECK(freq.within(5.0));
    CHECK(freq.samples == 20000);
  }
  const auto prug = compare_sampler(Mechanism::get(MechanismId::Prug), lower_bound_family(2, 1), 20000, 2);
  CHECK(prug.none > 0);
}

TEST_CASE("tightness scan on the lower-bound family") {
  const std::vector<int> nprimes{1, 2, 3};
  const auto report = tightness_scan(2, nprimes, 0, 5);
  CHECK(report.alpha == q(2, 3));
  CHECK(report.exact_rows_monotone);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.rows[0].exact_ratio == q(43, 60));
  CHECK(report.rows[1].exact_ratio == q(29, 42));
  CHECK(report.rows[2].exact_ratio == q(49, 72));

  const std::vector<int> big{12};
  const auto sampled = tightness_scan(2, big, 20000, 5);
  REQUIRE(sampled.rows.size() == 1);
  CHECK_FALSE(sampled.rows[0].exact);
  REQUIRE(sampled.rows[0].estimate);
  CHECK(sampled.rows[0].estimate->mean > 0.6);
  CHECK(sampled.rows[0].estimate->mean < 0.75);
}

}  // TEST_SUITE
