#include "doctest.h"
#include "fixtures.hpp"
#include "sstrp/io.hpp"
#include "sstrp/objective.hpp"
#include "sstrp/schedule_eval.hpp"

using namespace sstrp;

namespace {

Instance random_instance(std::uint64_t seed, int n, int k) {
  GeneratorProfile p;
  p.seed = seed;
  p.nodeCount = n < 15 ? 15 : n;
  p.numSprayers = k;
  Instance full = generate(p);
  std::vector<FieldNode> nodes(full.nodes().begin(), full.nodes().begin() + n);
  return Instance(full.depot(), nodes, full.params());
}

RouteSet split_routes(int n, int k) {
  RouteSet r(static_cast<std::size_t>(k));
  for (NodeId i = 1; i <= n; ++i) r[static_cast<std::size_t>((i - 1) % k)].push_back(i);
  return r;
}

}  // namespace

TEST_SUITE("schedule_eval") {
  TEST_CASE("T1 at full tank") {
    const Instance inst = fx::t1();
    const EvalResult r = evaluate_at_alpha(inst, {{1, 2}}, 1.0);
    CHECK(r.penalized() == doctest::Approx(3));
    CHECK(r.solution.service[1] == doctest::Approx(2));
    CHECK(r.solution.service[2] == doctest::Approx(2));
    CHECK(r.solution.tankerRoute == std::vector<NodeId>{1});
    CHECK(r.totalWaiting == doctest::Approx(0));
    CHECK(check_feasibility(inst, r.solution, false).empty());
  }

  TEST_CASE("T1 at two thirds") {
    const EvalResult r = evaluate_at_alpha(fx::t1(), {{1, 2}}, 2.0 / 3.0);
    CHECK(r.solution.refill[1] == 1);
    CHECK(r.penalized() == doctest::Approx(3));
  }

  TEST_CASE("single node needs no tanker") {
    const Instance inst = fx::single_node();
    const EvalResult r = evaluate_at_alpha(inst, {{1}}, 1.0);
    CHECK(r.solution.tankerRoute.empty());
    CHECK(r.solution.service[1] == doctest::Approx(1));
    CHECK(r.penalized() == doctest::Approx(1));
    const EvalResult l = line_search(inst, {{1}});
    CHECK(l.solution.alpha == doctest::Approx(1.0));
    CHECK(l.penalized() == doctest::Approx(1));
  }

  TEST_CASE("line search is the grid minimum") {
    CHECK(line_search(fx::t1(), {{1, 2}}).penalized() <= 3.0 + 1e-9);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Instance inst = random_instance(seed, 10, 2);
      const RouteSet routes = split_routes(10, 2);
      const EvalResult best = line_search(inst, routes);
      double lo = std::numeric_limits<double>::infinity();
      for (double a : AlphaConfig{}.grid) lo = std::min(lo, rank_value(evaluate_at_alpha(inst, routes, a)));
      CHECK(rank_value(best) == doctest::Approx(lo));
      CHECK(quick_line_search(inst, routes).total == doctest::Approx(best.penalized()));
    }
  }

  TEST_CASE("evaluations stay within service bounds and pass the checker") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const Instance inst = random_instance(seed, 12, 2);
      const EvalResult r = line_search(inst, split_routes(12, 2));
      for (NodeId i = 1; i <= 12; ++i) {
        CHECK(r.solution.service[static_cast<std::size_t>(i)] >= inst.min_service(i) - 1e-9);
        CHECK(r.solution.service[static_cast<std::size_t>(i)] <= inst.max_service(i) + 1e-9);
      }
      const ViolationReport rep = check_feasibility(inst, r.solution, false);
      if (!r.waiting_infeasible() && !r.hard_infeasible()) {
        CHECK_MESSAGE(rep.empty(), rep.to_string());
      } else {
        for (const Violation& v : rep.violations) CHECK((v.equation == 17 || v.equation == 14));
      }
    }
  }

  TEST_CASE("evaluation is deterministic") {
    const Instance inst = random_instance(3, 12, 2);
    const EvalResult a = line_search(inst, split_routes(12, 2));
    const EvalResult b = line_search(inst, split_routes(12, 2));
    CHECK(a.penalized() == b.penalized());
    CHECK(a.solution.service == b.solution.service);
    CHECK(a.solution.tankerRoute == b.solution.tankerRoute);
  }

  TEST_CASE("routes must partition the nodes") {
    CHECK_THROWS_AS(evaluate_at_alpha(fx::t1(), {{1}}, 1.0), StructuralError);
    CHECK_THROWS_AS(evaluate_at_alpha(fx::t1(), {{1, 2, 1}}, 1.0), StructuralError);
    CHECK_THROWS_AS(evaluate_at_alpha(fx::t1(), {{1, 2}}, 0.0), InputError);
  }

  TEST_CASE("horizon overrun is hard infeasible") {
    InstanceParams p = fx::t1_params();
    p.horizon = 5.0;
    const Instance inst(Point{0, 0}, {{1, {1, 0}, 4, 8}, {2, {2, 0}, 4, 8}}, p);
    const EvalResult r = line_search(inst, {{1, 2}});
    CHECK(r.hard_infeasible());
    CHECK(r.horizonExcess > 0.0);
  }

  TEST_CASE("tanker capacity is enforced") {
    InstanceParams p = fx::t1_params();
    p.tankerCap = 6.5;
    const Instance inst(Point{0, 0},
                        {{1, {1, 0}, 4, 8}, {2, {2, 0}, 4, 8}, {3, {3, 0}, 4, 8}}, p);
    const EvalResult r = line_search(inst, {{1, 2, 3}});
    CHECK(r.hard_infeasible());
  }

  TEST_CASE("ranking prefers feasibility") {
    EvalSummary feasible;
    feasible.total = 100;
    EvalSummary late;
    late.total = -100;
    late.horizonExcess = 1;
    CHECK(better(feasible, late));
    CHECK(rank_value(late) > rank_value(feasible));
    EvalSummary bad;
    bad.capacityInvalid = true;
    CHECK(rank_value(bad) == std::numeric_limits<double>::infinity());
  }
}
