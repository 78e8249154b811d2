#include "helpers.hpp"

#include "impsel/report_json.hpp"

using namespace impsel;
using testing::q;

TEST_SUITE("report") {

TEST_CASE("rationals and graphs are strings") {
  CHECK(to_json(q(2105, 3147)) == "2105/3147");
  CHECK(to_json(q(4, 2)) == "2/1");
  CHECK(to_json(NominationGraph({2, 1, 1})) == "3; 2,1,1");
  const auto d = to_json(testing::dist({q(2, 3), q(1, 3), q(0)}));
  CHECK(d.dump().find("\"2/3\"") != std::string::npos);
}

TEST_CASE("reports keep exact values exact") {
  const auto r = ratio(Mechanism::get(MechanismId::Perm), NominationGraph({2, 1, 1}));
  const auto j = to_json(r);
  CHECK(j.at("ratio") == "5/6");
  CHECK(j.at("max_indegree") == 2);

  const auto imp = to_json(check_impartial(Mechanism::broken_perm(), 3, CheckMode::Exhaustive));
  CHECK(imp.at("violations") == 12);
  CHECK_FALSE(imp.at("counterexample").is_null());

  for (const auto& row : mix_alpha_table(2, 4)) CHECK(to_json(row).at("mix").is_string());
}

}  // TEST_SUITE
