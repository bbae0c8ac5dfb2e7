#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "sstrp/io.hpp"
#include "sstrp/objective.hpp"
#include "sstrp/oracle.hpp"

using namespace sstrp;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> cells(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string c; std::getline(in, c, ',');) out.push_back(c);
  return out;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("generation is deterministic") {
    GeneratorProfile p;
    p.seed = 42;
    CHECK(instance_to_json(generate(p)) == instance_to_json(generate(p)));
    GeneratorProfile q = p;
    q.seed = 43;
    CHECK(instance_to_json(generate(p)) != instance_to_json(generate(q)));
  }

  TEST_CASE("generated instances follow the size classes") {
    for (SizeClass c : {SizeClass::Small, SizeClass::Medium, SizeClass::Large}) {
      GeneratorProfile p;
      p.sizeClass = c;
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        p.seed = seed;
        const Instance inst = generate(p);
        const int n = inst.num_nodes();
        if (c == SizeClass::Small) CHECK((n >= 15 && n <= 25));
        if (c == SizeClass::Medium) CHECK((n >= 25 && n <= 40));
        if (c == SizeClass::Large) CHECK((n >= 41 && n <= 60));
        for (const FieldNode& f : inst.nodes()) {
          CHECK(f.qMax == doctest::Approx(2.5 * f.qMin));
          CHECK(f.qMin >= 1.5);
          CHECK(f.qMin <= 3.5);
        }
        CHECK(inst.params().tankerCap == doctest::Approx(10 * inst.params().sprayerCap));
      }
    }
    CHECK(parse_size_class("medium") == SizeClass::Medium);
    CHECK_THROWS(parse_size_class("huge"));
  }

  TEST_CASE("instance round trip") {
    GeneratorProfile p;
    p.seed = 7;
    const Instance a = generate(p);
    const Instance b = instance_from_json(instance_to_json(a));
    CHECK(instance_to_json(a) == instance_to_json(b));
    REQUIRE(b.num_nodes() == a.num_nodes());
    for (NodeId i = 1; i <= a.num_nodes(); ++i) {
      CHECK(b.node(i).pos.x == a.node(i).pos.x);
      CHECK(b.node(i).qMax == a.node(i).qMax);
    }
  }

  TEST_CASE("solution round trip") {
    const Instance inst = fx::t1();
    const Solution sol = exact_solve(inst).best.solution;
    const Solution back = solution_from_json(inst, solution_to_json(inst, sol));
    CHECK(back.routes == sol.routes);
    CHECK(back.service == sol.service);
    CHECK(back.refill == sol.refill);
    CHECK(back.tankerRoute == sol.tankerRoute);
    CHECK(back.objective.total == doctest::Approx(1.0));
    CHECK(check_feasibility(inst, back, false).empty());
  }

  TEST_CASE("parse errors name the field") {
    const std::string good = instance_to_json(fx::t1());
    std::string bad = good;
    const auto at = bad.find("\"qMax\"");
    REQUIRE(at != std::string::npos);
    bad.replace(at, 6, "\"qmax\"");
    try {
      instance_from_json(bad);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("nodes[0].qMax") != std::string::npos);
    }
    CHECK_THROWS_AS(instance_from_json("{"), ParseError);
    std::string neg = good;
    const auto q = neg.find("\"qMin\":");
    REQUIRE(q != std::string::npos);
    neg.insert(q + 7, "-");
    CHECK_THROWS(instance_from_json(neg));
  }

  TEST_CASE("results csv") {
    std::ostringstream empty;
    write_results(empty, {});
    CHECK(lines(empty.str()).size() == 1);
    CHECK(cells(lines(empty.str())[0]).size() == 18);

    const Instance inst = fx::t1();
    RunRecord r = summarize(inst, exact_solve(inst).best.solution, "t1", 3, "exact");
    r.lowerBound = -1.0;
    CHECK(r.refills == 1);
    CHECK(r.servicePerSprayer == doctest::Approx(6.0));
    CHECK(r.routingPerSprayer == doctest::Approx(4.0));
    std::ostringstream one;
    write_results(one, {r});
    const auto ls = lines(one.str());
    REQUIRE(ls.size() == 5);
    const auto row = cells(ls[1]);
    CHECK(row[0] == "t1");
    CHECK(row[3] == "1");
    CHECK(row[11] == "200");
    const auto mean = cells(ls[2]);
    CHECK(mean[0] == "*mean");
    for (std::size_t c = 3; c < row.size(); ++c) CHECK(mean[c] == row[c]);
  }
}
