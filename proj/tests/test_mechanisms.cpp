#include "helpers.hpp"

#include "impsel/enumerate.hpp"
#include "impsel/errors.hpp"
#include "impsel/generators.hpp"
#include "impsel/graph_io.hpp"
#include "impsel/mechanisms.hpp"

#include <set>

using namespace impsel;
using testing::dist;
using testing::q;
using testing::same;
using testing::show;
using testing::to_oracle;

TEST_SUITE("mechanisms") {

TEST_CASE("perm run traces") {
  const NominationGraph two({2, 1});
  CHECK(perm_run(two, Permutation({1, 2})).selected == 2);
  CHECK(perm_run(two, Permutation({2, 1})).selected == 1);

  const NominationGraph g({2, 1, 1});
  const auto trace = perm_run(g, Permutation({3, 2, 1}));
  CHECK(trace.selected == 1);
  CHECK(trace.selected_indegree == 2);
  REQUIRE(trace.steps.size() == 3);
  CHECK(trace.steps[0].candidate == 3);
  CHECK(trace.steps[1].candidate == 2);  // 0 >= 0 ties go to the newcomer
  CHECK(trace.steps[2].candidate == 1);
  CHECK(trace.steps[2].indegree_from_left == 2);
  CHECK_THROWS_AS(perm_run(g, Permutation::identity(2)), InputError);
}

TEST_CASE("frozen exact values") {
  CHECK(perm_exact(NominationGraph({2, 1, 1})) == dist({q(2, 3), q(1, 3), q(0)}));
  CHECK(prug_exact(NominationGraph({2, 1, 1, 1})) == dist({q(3, 4), q(0), q(0), q(0)}));
  CHECK(prugd_exact(NominationGraph({2, 1, 1, 1})) == dist({q(13, 16), q(3, 16), q(0), q(0)}));
  CHECK(prug_exact(NominationGraph({2, 1})) == dist({q(1, 2), q(1, 2)}));
  CHECK(prugd_exact(NominationGraph({2, 1})) == dist({q(1, 2), q(1, 2)}));
  CHECK(rd_exact(NominationGraph({2, 1, 1})) == dist({q(2, 3), q(1, 3), q(0)}));

  CHECK(perm_exact(parse_graph("7; 2,1,2,3,4,5,6")) ==
        dist({q(1, 7), q(131, 360), q(1, 7), q(5, 42), q(73, 630), q(97, 840), q(0)}));
  CHECK(perm_exact(parse_graph("7; 2,1,1,2,4,5,6")) ==
        dist({q(131, 360), q(433, 1260), q(0), q(5, 42), q(4, 45), q(71, 840), q(0)}));
  CHECK(perm_exact(parse_graph("7; 2,7,1,2,4,5,6")) ==
        dist({q(1, 7), q(433, 1260), q(0), q(1, 7), q(151, 1260), q(47, 420), q(5, 36)}));
  CHECK(perm_exact(NominationGraph({7, 3, 1, 7, 4, 7, 3})) ==
        dist({q(47, 420), q(0), q(49, 180), q(31, 315), q(0), q(0), q(163, 315)}));
}

TEST_CASE("perm, rd, prug, prugd agree with the oracle on all of G_3 and G_4") {
  for (int n : {2, 3, 4}) {
    for (std::uint64_t i = 0; i < nomination_graph_count(n); ++i) {
      const auto g = nomination_graph_at(n, i);
      const auto o = to_oracle(g);
      CAPTURE(format_graph(g));
      CHECK(same(perm_exact(g), oracle::perm(o)));
      CHECK(same(perm_exact(g, {}, CandidateEdgeRule::Include), oracle::perm(o, true)));
      CHECK(same(rd_exact(g), oracle::rd(o)));
      CHECK(same(prug_exact(g), oracle::prug(o)));
      CHECK(same(prugd_exact(g), oracle::prugd(o)));
      CHECK(same(mix_exact(g), oracle::mix(o)));
    }
  }
}

TEST_CASE("agreement with the oracle on random graphs of size 5 to 7") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 5 + static_cast<int>(seed % 3);
    const auto g = random_graph(n, seed);
    const auto o = to_oracle(g);
    CAPTURE(format_graph(g));
    CHECK(same(perm_exact(g), oracle::perm(o)));
    CHECK(same(prug_exact(g), oracle::prug(o)));
    if (n <= 6) {
      const auto mine = mix_exact(g);
      const auto theirs = oracle::mix(o);
      INFO(show(mine), " vs ", show(theirs));
      CHECK(same(mine, theirs));
    }
  }
}

TEST_CASE("partial graphs") {
  for (std::uint64_t i = 0; i < nomination_graph_count(4); ++i) {
    const auto g = nomination_graph_at(4, i);
    for (Vertex v = 1; v <= 4; ++v) {
      const auto h = g.without_out_edge(v);
      const auto o = to_oracle(h);
      CHECK(same(perm_exact(h), oracle::perm(o)));
      CHECK(same(prug_exact(h), oracle::prug(o)));
    }
  }
  CHECK(perm_exact(PartialNominationGraph({0, 1, 1})).is_exact());
}

TEST_CASE("single p(pi) totals are in {1/2, 3/4, 1, 5/4}") {
  const std::set<Rational> allowed{q(1, 2), q(3, 4), q(1), q(5, 4)};
  std::set<Rational> seen;
  for (std::uint64_t i = 0; i < nomination_graph_count(5); i += 7) {
    const auto g = nomination_graph_at(5, i);
    auto pi = Permutation::identity(5);
    do {
      Rational total = 0;
      for (const auto& p : prug_p_vector(g, pi)) total += p;
      CHECK(allowed.count(total) == 1);
      seen.insert(total);
    } while (pi.advance());
  }
  CHECK(seen.count(q(1, 2)) == 1);
  // 2-cycle with one extra edge into 1: both top vertices get paid.
  const auto p = prug_p_vector(NominationGraph({2, 1, 1}), Permutation({1, 2, 3}));
  CHECK(p[0] == q(3, 4));
  CHECK(p[1] == q(1, 2));
}

TEST_CASE("the default-vertex wrapper matches the fast PRUG^D path") {
  const InexactExact inner = [](const PartialNominationGraph& h) { return prug_exact(h); };
  for (std::uint64_t i = 0; i < nomination_graph_count(4); ++i) {
    const auto g = nomination_graph_at(4, i);
    CHECK(dv_wrap_exact(inner, g) == prugd_exact(g));
  }
  const auto g = random_graph(6, 77);
  CHECK(dv_wrap_exact(inner, g) == prugd_exact(g));
}

TEST_CASE("exact mechanisms sum to one; PRUG may fall short") {
  bool short_seen = false;
  for (std::uint64_t i = 0; i < nomination_graph_count(4); ++i) {
    const auto g = nomination_graph_at(4, i);
    CHECK(perm_exact(g).is_exact());
    CHECK(prugd_exact(g).is_exact());
    CHECK(mix_exact(g).is_exact());
    CHECK(prug_exact(g).total() <= 1);
    short_seen = short_seen || !prug_exact(g).is_exact();
  }
  CHECK(short_seen);
}

TEST_CASE("parallel enumeration gives identical counts") {
  const auto g = random_graph(8, 4);
  EnumerationLimits one;
  EnumerationLimits many;
  many.jobs = 3;
  const auto a = perm_tally(g, one);
  const auto b = perm_tally(g, many);
  CHECK(a.wins == b.wins);
  CHECK(a.runs == 40320);
  CHECK(b.runs == 40320);
  CHECK(prug_quarter_tally(g, one) == prug_quarter_tally(g, many));
  CHECK(prugd_exact(g, one) == prugd_exact(g, many));
}

TEST_CASE("selected vertex attains the maximum indegree from the left") {
  for (std::uint64_t i = 0; i < nomination_graph_count(5); ++i) {
    CHECK(perm_tally(nomination_graph_at(5, i)).max_left_violations == 0);
  }
}

TEST_CASE("capacity limits") {
  const auto big = cycle(11);
  try {
    perm_exact(big);
    FAIL("expected a capacity error");
  } catch (const CapacityError& e) {
    CHECK(e.limit() == 10);
    CHECK(std::string(e.what()).find("sampler") != std::string::npos);
  }
  CHECK_THROWS_AS(prugd_exact(cycle(9)), CapacityError);
  CHECK_THROWS_AS(mix_exact(cycle(9)), CapacityError);
  EnumerationLimits wide;
  wide.perm_cap = 11;
  CHECK(perm_exact(big, wide) == SelectionDistribution::uniform(11));
}

TEST_CASE("mixture weights and branches") {
  CHECK(mix_perm_weight() == q(825, 1049));
  const auto small = random_graph(5, 1);
  CHECK(mix_exact(small) == rd_exact(small));
  const auto g = random_graph(6, 1);
  CHECK(mix_exact(g) == mix(q(825, 1049), perm_exact(g), q(224, 1049), prugd_exact(g)));
}

TEST_CASE("samplers are deterministic and stay in the support") {
  const auto g = parse_graph("7; 7,3,1,7,4,7,3");
  for (auto id : all_mechanisms()) {
    const auto mech = Mechanism::get(id);
    const auto d = mech.exact(g);
    Rng a(123);
    Rng b(123);
    for (int k = 0; k < 300; ++k) {
      const auto x = mech.sample(g, a);
      CHECK(x == mech.sample(g, b));
      if (x) {
        CHECK(d[*x] > 0);
      } else {
        CHECK_FALSE(mech.is_exact());
      }
    }
  }
  CHECK(perm_sample(g, 5) == perm_sample(g, 5));
}

TEST_CASE("mechanism registry") {
  CHECK(parse_mechanism("prugd") == MechanismId::PrugD);
  CHECK_THROWS_AS(parse_mechanism("plurality"), InputError);
  CHECK(traits(MechanismId::Prug).exact == false);
  CHECK(traits(MechanismId::Perm).accepts_partial);
  CHECK(all_mechanisms().size() == 5);
  for (auto id : all_mechanisms()) CHECK(Mechanism::get(id).name() == traits(id).name);
  const auto broken = Mechanism::broken_perm();
  CHECK(broken.exact(NominationGraph({2, 1, 1})) != perm_exact(NominationGraph({2, 1, 1})));
}

}  // TEST_SUITE
