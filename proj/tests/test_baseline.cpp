#include "doctest.h"
#include "fixtures.hpp"
#include "sstrp/baseline.hpp"
#include "sstrp/io.hpp"
#include "sstrp/objective.hpp"
#include "sstrp/oracle.hpp"

using namespace sstrp;

TEST_SUITE("baseline") {
  TEST_CASE("practice policy on T1") {
    const Instance inst = fx::t1();
    const EvalResult r = practice_policy(inst);
    CHECK(r.penalized() == doctest::Approx(2.6));
    CHECK(r.solution.service[1] == doctest::Approx(2.2));
    CHECK(r.solution.service[2] == doctest::Approx(2.2));
    CHECK(r.solution.tankerRoute == std::vector<NodeId>{1});
    CHECK(check_feasibility(inst, r.solution, true).empty());
  }

  TEST_CASE("one node per sprayer") {
    InstanceParams p = fx::t1_params();
    p.numSprayers = 3;
    const Instance inst(Point{0, 0}, {{1, {1, 0}, 2, 4}, {2, {0, 1}, 2, 4}, {3, {-1, 0}, 2, 4}}, p);
    const EvalResult r = practice_policy(inst);
    REQUIRE(r.solution.routes.size() == 3);
    for (const Route& route : r.solution.routes) CHECK(route.size() == 1);
  }

  TEST_CASE("the oracle never loses to practice") {
    GeneratorProfile g;
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      g.seed = seed;
      const Instance inst = fx::truncated(generate(g), 6, 2);
      const OracleResult ex = exact_solve(inst);
      const EvalResult pr = practice_policy(inst);
      if (ex.feasible && !pr.hard_infeasible())
        CHECK(ex.best.penalized() <= pr.penalized() + 1e-9);
    }
  }

  TEST_CASE("waiting-allowed solve on T1") {
    SolveOptions o;
    o.iterations = 100;
    const SolveResult r = waiting_allowed_solve(fx::t1(), o);
    CHECK(r.best.penalized() == doctest::Approx(1.0));
  }
}
