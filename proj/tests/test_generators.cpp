#include "helpers.hpp"

#include "impsel/errors.hpp"
#include "impsel/generators.hpp"
#include "impsel/graph_io.hpp"

using namespace impsel;

TEST_SUITE("generators") {

TEST_CASE("cycles") {
  CHECK(format_graph(cycle(7)) == "7; 7,1,2,3,4,5,6");
  CHECK(format_graph(cycle(2)) == "2; 2,1");
  CHECK(cycle(9).max_indegree() == 1);
  CHECK(format_graph(two_cycle_path(7)) == "7; 2,1,7,3,4,5,6");
  CHECK(two_cycle_path(4).max_indegree() == 1);
  CHECK_THROWS_AS(cycle(1), InputError);
  CHECK_THROWS_AS(two_cycle_path(3), InputError);
}

TEST_CASE("upper-bound family at n = 7") {
  CHECK(ub_family_max_index(7) == 2);
  CHECK(format_graph(ub_family(7, 0)) == "7; 2,1,2,3,4,5,6");
  CHECK(format_graph(ub_family(7, 1)) == "7; 2,1,1,2,4,5,6");
  CHECK(format_graph(ub_family(7, 2)) == "7; 2,1,1,3,2,5,6");
  CHECK(format_graph(ub_family_prime(7, 1)) == "7; 2,7,1,2,4,5,6");
  CHECK_THROWS_AS(ub_family(7, 3), InputError);
  CHECK_THROWS_AS(ub_family(5, 0), InputError);
  CHECK_THROWS_AS(ub_family_prime(7, 0), InputError);
}

TEST_CASE("upper-bound family structure") {
  for (int n = 6; n <= 12; ++n) {
    for (int i = 0; i <= ub_family_max_index(n); ++i) {
      const auto g = ub_family(n, i);
      CAPTURE(n);
      CAPTURE(i);
      CHECK(g.target(1) == 2);
      CHECK(g.target(2) == 1);
      CHECK(g.max_indegree() == 2);
      if (i >= 1) {
        const auto h = ub_family_prime(n, i);
        CHECK(h.indegree(2) == 2);
        CHECK(h.max_indegree_and_top().top == std::vector<Vertex>{2});
      }
    }
  }
}

TEST_CASE("lower-bound family") {
  CHECK(format_graph(lower_bound_family(2, 1)) == "5; 3,5,1,1,2");
  CHECK(format_graph(lower_bound_family(4, 2)) == "11; 6,8,10,1,1,1,1,2,2,3,3");
  CHECK(lower_bound_family_size(4, 2) == 11);
  CHECK(lower_bound_family_size(2, 30) == 63);
  for (int delta = 2; delta <= 7; ++delta) {
    for (int nprime = 1; nprime <= 5; ++nprime) {
      const auto g = lower_bound_family(delta, nprime);
      CAPTURE(delta);
      CAPTURE(nprime);
      CHECK(g.size() == lower_bound_family_size(delta, nprime));
      CHECK(g.indegree(1) == delta);
      CHECK(g.max_indegree_and_top().top == std::vector<Vertex>{1});
      for (Vertex v = 2; v <= nprime + 1; ++v) CHECK(g.indegree(v) == delta / 2);
      for (Vertex v = nprime + 2; v <= g.size(); ++v) CHECK(g.indegree(v) <= 1);
    }
  }
  CHECK_THROWS_AS(lower_bound_family(1, 1), InputError);
  CHECK_THROWS_AS(lower_bound_family(2, 0), InputError);
}

TEST_CASE("required n'") {
  CHECK(required_nprime(4, 0.1) == 14);
  CHECK(required_nprime(2, 0.1) == 7);
  CHECK(required_nprime(2, 0.9) == 1);
  CHECK_THROWS_AS(required_nprime(2, 0.0), InputError);
  CHECK_THROWS_AS(required_nprime(2, 1.0), InputError);
  CHECK_THROWS_AS(required_nprime(1, 0.1), InputError);
}

TEST_CASE("random graphs are valid and seeded") {
  CHECK(random_graph(9, 5) == random_graph(9, 5));
  CHECK_FALSE(random_graph(9, 5) == random_graph(9, 6));
  for (std::uint64_t s = 0; s < 50; ++s) CHECK_NOTHROW(random_graph(7, s));
}

TEST_CASE("family specs") {
  auto spec = parse_family_spec("family=cycle n=7");
  CHECK(spec.kind == FamilyKind::Cycle);
  CHECK(generate(spec) == cycle(7));
  CHECK(generate(parse_family_spec("family=ub,n=7,i=1")) == ub_family(7, 1));
  CHECK(generate(parse_family_spec("family=ub_prime n=7 i=1")) == ub_family_prime(7, 1));
  CHECK(generate(parse_family_spec("family=lb delta=4 nprime=2")).size() == 11);
  CHECK(generate(parse_family_spec("family=c2n n=6")) == two_cycle_path(6));
  CHECK(generate(parse_family_spec("family=random n=6 seed=3")) == random_graph(6, 3));
  CHECK(family_name(FamilyKind::LowerBound) == "lower_bound");
  CHECK_THROWS_AS(parse_family_spec("family=star n=5"), InputError);
  CHECK_THROWS_AS(parse_family_spec("family=cycle m=5"), InputError);
  CHECK_THROWS_AS(parse_family_spec("family=cycle n=x"), InputError);
  CHECK_THROWS_AS(generate(parse_family_spec("family=ub n=7 i=9")), InputError);
}

}  // TEST_SUITE
