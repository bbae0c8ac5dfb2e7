#include "doctest.h"
#include "fixtures.hpp"
#include "sstrp/bounds.hpp"
#include "sstrp/io.hpp"
#include "sstrp/oracle.hpp"

using namespace sstrp;

TEST_SUITE("bounds") {
  TEST_CASE("T1 bounds") {
    const Instance inst = fx::t1();
    CHECK(composite_lower_bound(inst) == doctest::Approx(-4.0));
    CHECK(relaxed_exact_bound(inst) == doctest::Approx(-1.0));
    CHECK(service_upper_bound(inst) == doctest::Approx(8.0));
  }

  TEST_CASE("single node bounds") {
    const Instance inst = fx::single_node();
    CHECK(composite_lower_bound(inst) == doctest::Approx(0.0));
    CHECK(relaxed_exact_bound(inst) == doctest::Approx(0.0));
  }

  TEST_CASE("no service time when the horizon is tiny") {
    InstanceParams p = fx::t1_params();
    p.horizon = 0.5;
    const Instance inst(Point{0, 0}, {{1, {1, 0}, 4, 8}, {2, {2, 0}, 4, 8}}, p);
    CHECK(service_upper_bound(inst) == doctest::Approx(0.0));
  }

  TEST_CASE("bounds order on small instances") {
    GeneratorProfile g;
            for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      g.seed = seed;
      const Instance inst = fx::truncated(generate(g), 6, 2);
      const double comp = composite_lower_bound(inst);
      const double relax = relaxed_exact_bound(inst);
      CHECK(relax >= comp - 1e-9);
      const OracleResult ex = exact_solve(inst);
      if (ex.feasible) CHECK(ex.best.penalized() >= relax - 1e-9);
    }
  }

  TEST_CASE("gap") {
    CHECK(gap_percent(1.0, -1.0) == doctest::Approx(200.0));
    CHECK(gap_percent(110.0, 100.0) == doctest::Approx(10.0));
  }
}
