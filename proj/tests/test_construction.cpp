#include "doctest.h"
#include "fixtures.hpp"
#include "sstrp/construction.hpp"
#include "sstrp/io.hpp"
#include "sstrp/objective.hpp"

using namespace sstrp;

TEST_SUITE("construction") {
  TEST_CASE("tsp on tiny inputs") {
    const Instance inst(Point{0, 0}, {{1, {1, 0}, 1, 2}, {2, {2, 0}, 1, 2}, {3, {3, 0}, 1, 2}},
                        fx::t1_params());
    CHECK(tsp_route(inst, {1}) == Route{1});
    CHECK(route_travel(inst, tsp_route(inst, {1})) == doctest::Approx(2));
    CHECK(tsp_route(inst, {3, 1, 2}) == Route{1, 2, 3});
    CHECK(route_travel(inst, tsp_route(inst, {1, 2, 3})) == doctest::Approx(6));
    CHECK_THROWS_AS(tsp_route(inst, {}), InputError);
  }

  TEST_CASE("exact tour never loses to 2-opt") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      GeneratorProfile p;
      p.seed = seed;
      const Instance inst = generate(p);
      const std::vector<NodeId> sub = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
      CHECK(route_travel(inst, tsp_exact(inst, sub)) <=
            route_travel(inst, tsp_two_opt(inst, sub)) + 1e-9);
    }
  }

  TEST_CASE("T1 constructions") {
    const Instance inst = fx::t1();
    CHECK(greedy_construct(inst).penalized() <= 3.0 + 1e-9);
    CHECK(cluster_construct(inst).penalized() == doctest::Approx(3));
    CHECK(cluster_construct(inst).solution.routes == RouteSet{{1, 2}});
  }

  TEST_CASE("single node") {
    const EvalResult r = construct(fx::single_node());
    CHECK(r.solution.routes == RouteSet{{1}});
    CHECK(r.penalized() == doctest::Approx(1));
  }

  TEST_CASE("one cluster is one tour") {
    GeneratorProfile p;
    p.seed = 4;
    p.numSprayers = 1;
    const Instance inst = generate(p);
    std::vector<NodeId> all;
    for (NodeId i = 1; i <= inst.num_nodes(); ++i) all.push_back(i);
    CHECK(cluster_construct(inst).solution.routes.front() == tsp_route(inst, all));
  }

  TEST_CASE("separated clouds become separate routes") {
    InstanceParams prm;
    prm.numSprayers = 2;
    std::vector<FieldNode> nodes;
    for (int i = 0; i < 4; ++i) nodes.push_back({i + 1, {1.0 + 0.1 * i, 1.0}, 1.5, 3.75});
    for (int i = 0; i < 4; ++i) nodes.push_back({i + 5, {1.0 + 0.1 * i, 101.0}, 1.5, 3.75});
    const Instance inst(Point{0, 0}, nodes, prm);
    const EvalResult r = cluster_construct(inst);
    for (const Route& route : r.solution.routes) {
      REQUIRE(route.size() == 4);
      const bool low = route.front() <= 4;
      for (NodeId i : route) CHECK((i <= 4) == low);
    }
  }

  TEST_CASE("constructions partition and are checkable") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      GeneratorProfile p;
      p.seed = seed;
      p.nodeCount = 15;
      const Instance inst = generate(p);
      for (const EvalResult& r : {greedy_construct(inst), cluster_construct(inst)}) {
        CHECK_NOTHROW(require_partition(inst, r.solution.routes));
        const ViolationReport rep = check_feasibility(inst, r.solution, false);
        CHECK((rep.empty() || !r.solution.feasible() || r.hard_infeasible()));
      }
      CHECK(greedy_construct(inst).solution.routes == greedy_construct(inst).solution.routes);
    }
  }
}
