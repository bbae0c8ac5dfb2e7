#include "doctest.h"
#include "fixtures.hpp"
#include "sstrp/objective.hpp"
#include "sstrp/oracle.hpp"

using namespace sstrp;

TEST_SUITE("oracle") {
  TEST_CASE("T1 optimum") {
    const Instance inst = fx::t1();
    const OracleResult r = exact_solve(inst);
    REQUIRE(r.feasible);
    CHECK(r.best.penalized() == doctest::Approx(1.0));
    CHECK(r.best.solution.service[1] == doctest::Approx(3.0));
    CHECK(r.best.solution.service[2] == doctest::Approx(3.0));
    CHECK(r.best.solution.tankerRoute == std::vector<NodeId>{1});
    CHECK(check_feasibility(inst, r.best.solution, false).empty());
  }

  TEST_CASE("T1 with waiting allowed") {
    EvalOptions o;
    o.allowWaiting = true;
    CHECK(exact_solve(fx::t1(), {}, o).best.penalized() == doctest::Approx(1.0));
  }

  TEST_CASE("single node optimum") {
    const OracleResult r = exact_solve(fx::single_node());
    REQUIRE(r.feasible);
    CHECK(r.best.penalized() == doctest::Approx(0.0));
  }

  TEST_CASE("tiny horizon is infeasible") {
    InstanceParams p = fx::t1_params();
    p.horizon = 0.5;
    const Instance inst(Point{0, 0}, {{1, {1, 0}, 4, 8}, {2, {2, 0}, 4, 8}}, p);
    CHECK_FALSE(exact_solve(inst).feasible);
  }

  TEST_CASE("caps are enforced") {
    OracleCaps caps;
    caps.maxNodes = 1;
    CHECK_THROWS_AS(exact_solve(fx::t1(), caps), BudgetRefusal);
  }

  TEST_CASE("relaxed oracle") {
    const RelaxedResult r = exact_solve_relaxed(fx::t1());
    REQUIRE(r.feasible);
    CHECK(r.value == doctest::Approx(-1.0));
  }

  TEST_CASE("grid oracle refuses long refill sets") {
    std::vector<FieldNode> nodes;
    for (NodeId i = 1; i <= 5; ++i) nodes.push_back({i, {static_cast<double>(i), 0}, 4, 8});
    const Instance inst(Point{0, 0}, nodes, fx::t1_params());
    CHECK_THROWS_AS(grid_service_oracle(inst, {{1, 2, 3, 4, 5}}, {1, 2, 3, 4}, {1, 2, 3, 4}),
                    BudgetRefusal);
  }
}
