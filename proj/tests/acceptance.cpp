// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fixtures.hpp"
#include "sstrp/alns.hpp"
#include "sstrp/baseline.hpp"
#include "sstrp/bounds.hpp"
#include "sstrp/construction.hpp"
#include "sstrp/intensify.hpp"
#include "sstrp/io.hpp"
#include "sstrp/objective.hpp"
#include "sstrp/oracle.hpp"
#include "sstrp/phase3.hpp"
#include "sstrp/pipeline.hpp"

using namespace sstrp;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned budgets, sized for a single desktop core.
constexpr int kC1Instances = 50;
constexpr std::int64_t kC1Iters = 300;
constexpr int kC2Instances = 20;
constexpr int kC5Subproblems = 50;
constexpr int kC6RoundTrips = 10'000;
constexpr int kC7Instances = 30;
constexpr std::int64_t kC7Iters = 300;
constexpr int kC8Instances = 30;
constexpr std::int64_t kC8Iters = 300;
constexpr int kC9Instances = 20;
constexpr std::int64_t kC9Iters = 600;
constexpr double kPhase3Seconds = 10.0;

constexpr double kTol = 1e-6;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Phase3Options short_phase3() {
  Phase3Options p;
  p.seconds = kPhase3Seconds;
  p.lsBudget = SearchBudget{2.0, 100'000};
  return p;
}

Instance medium(std::uint64_t seed, int sprayers = 2) {
  GeneratorProfile p;
  p.sizeClass = SizeClass::Medium;
  p.numSprayers = sprayers;
  p.seed = seed;
  return generate(p);
}

// Tiny instances: the first n nodes of a generated small field.
std::vector<Instance> tiny_instances() {
  std::vector<Instance> out;
  for (int k = 0; k < kC2Instances; ++k) {
    GeneratorProfile p;
    p.seed = 2000 + static_cast<std::uint64_t>(k);
    out.push_back(fx::truncated(generate(p), 5 + k % 3, 2));
  }
  return out;
}

struct TinyRun {
  OracleResult oracle;
  double oracleSeconds = 0.0;
  EvalResult heuristic;
};

const std::vector<TinyRun>& tiny_runs() {
  static const std::vector<TinyRun> runs = [] {
    std::vector<TinyRun> r;
    for (const Instance& inst : tiny_instances()) {
      TinyRun t;
      const auto t0 = Clock::now();
      OracleCaps caps;
      caps.seconds = 60.0;
      t.oracle = exact_solve(inst, caps);
      t.oracleSeconds = seconds_since(t0);
      SolveOptions o;
      o.seed = 1;
      t.heuristic = solve(inst, o).best;
      r.push_back(std::move(t));
    }
    return r;
  }();
  return runs;
}

Outcome c1() {
  const auto t0 = Clock::now();
  int reported = 0;
  int clean = 0;
  for (int k = 0; k < kC1Instances; ++k) {
    GeneratorProfile p;
    p.seed = 1000 + static_cast<std::uint64_t>(k);
    p.numSprayers = 2 + k % 2;
    if (k % 2 == 1) {
      p.sizeClass = SizeClass::Medium;
      p.nodeCount = 25 + k % 6;
    }
    const Instance inst = generate(p);
    SolveOptions o;
    o.seed = static_cast<std::uint64_t>(k) + 1;
    o.iterations = kC1Iters;
    o.phase3Options = short_phase3();
    const EvalResult best = solve(inst, o).best;
    if (!best.solution.feasible()) continue;
    ++reported;
    if (check_feasibility(inst, best.solution, false).empty()) ++clean;
  }
  const double secs = seconds_since(t0);
  return {reported > 0 && clean == reported && secs <= 1800.0,
          fmt("%d/%d reported-feasible solutions pass the checker, %d instances, %.1f s", clean,
              reported, kC1Instances, secs)};
}

Outcome c2() {
  int feasible = 0, below = 0, within = 0, mismatch = 0;
  double slowest = 0.0;
  for (const TinyRun& t : tiny_runs()) {
    slowest = std::max(slowest, t.oracleSeconds);
    if (!t.oracle.feasible) {
      if (!t.heuristic.hard_infeasible()) ++mismatch;
      continue;
    }
    ++feasible;
    const double opt = t.oracle.best.penalized();
    const double z = t.heuristic.penalized();
    if (t.heuristic.hard_infeasible() || z < opt - kTol) ++below;
    if (!t.heuristic.hard_infeasible() && z <= opt + 0.05 * std::abs(opt) + kTol) ++within;
  }
  const int need = (16 * feasible + 19) / 20;
  return {below == 0 && mismatch == 0 && within >= need && slowest < 60.0,
          fmt("%d/%d within 5%% of optimum (need %d), %d below optimum, %d infeasible "
              "mismatches, slowest oracle %.2f s",
              within, feasible, need, below, mismatch, slowest)};
}

Outcome c3() {
  const std::vector<Instance> insts = tiny_instances();
  int exceptions = 0, checked = 0;
  for (std::size_t k = 0; k < insts.size(); ++k) {
    const Instance& inst = insts[k];
    const TinyRun& t = tiny_runs()[k];
    const double comp = composite_lower_bound(inst);
    const double relax = relaxed_exact_bound(inst);
    if (comp > relax + kTol) ++exceptions;
    if (!t.oracle.feasible) continue;
    ++checked;
    if (relax > t.oracle.best.penalized() + kTol) ++exceptions;
    const double sp = service_upper_bound(inst);
    for (const Route& r : t.oracle.best.solution.routes) {
      double s = 0.0;
      for (NodeId i : r) s += t.oracle.best.solution.service[static_cast<std::size_t>(i)];
      if (s > sp + kTol) ++exceptions;
    }
  }
  return {exceptions == 0, fmt("%d exceptions over %d instances (%d with an optimum)", exceptions,
                               static_cast<int>(insts.size()), checked)};
}

Outcome c4() {
  using Ids = std::vector<NodeId>;
  const Instance inst = fx::removal_example_instance();
  const Solution sol = fx::removal_example_solution();
  int bad = 0;
  auto expect = [&](const char* name, Ids got, Ids want) {
    if (fx::sorted(std::move(got)) != fx::sorted(std::move(want))) {
      ++bad;
      std::printf("  mismatch: %s\n", name);
    }
  };
  // The reference list for operator 2 omits node 9, which its route serves.
  expect("op2", remove_route(sol, 0), {16, 18, 19, 3, 20, 13, 5, 14, 9, 2, 11, 24, 4, 10});
  expect("op6", remove_zone(inst, sol, fx::removal_example_zone_center(), inst.params().zoneRadius),
         {7, 17, 22, 23});
  expect("op7", remove_refills(sol), {1, 3, 4, 7, 9});
  expect("op8", remove_refill_neighbors(sol, 1),
         {19, 3, 20, 14, 9, 2, 24, 4, 10, 22, 7, 17, 25, 1, 8});
  expect("op9", remove_refill_neighbors(sol, 2),
         {23, 22, 7, 17, 21, 15, 25, 1, 8, 6, 18, 19, 3, 20, 13, 5, 14, 9, 2, 11, 24, 4, 10});
  expect("op10", remove_subtour_prior(sol, {1, 9}), {17, 21, 15, 25, 1, 20, 13, 5, 14, 9});
  expect("op11", remove_subtour_following(sol, {4, 7}), {4, 10, 7, 17, 21, 15, 25});
  const Solution f5 = fx::candidate_example_solution();
  expect("kappa0", candidate_set(f5, 0), {1, 3, 4, 7, 9});
  expect("kappa1", candidate_set(f5, 1), {1, 2, 3, 4, 5, 7, 9, 10, 11, 12, 13, 14, 15, 24, 25});
  return {bad == 0, fmt("%d of 9 fixture lists differ", bad)};
}

Outcome c5() {
  const auto t0 = Clock::now();
  int compared = 0, agree = 0, solved = 0, seed = 3000;
  double worst = 0.0;
  while (compared < kC5Subproblems) {
    GeneratorProfile p;
    p.seed = static_cast<std::uint64_t>(seed++);
    const Instance inst = fx::truncated(generate(p), 6 + seed % 7, 1 + seed % 2);
    Rng rng(p.seed);
    RouteSet routes = construct(inst).solution.routes;
    for (Route& r : routes)
      for (std::size_t q = r.size(); q > 1; --q) std::swap(r[q - 1], r[rng.index(q)]);
    std::vector<NodeId> all(static_cast<std::size_t>(inst.num_nodes()));
    std::iota(all.begin(), all.end(), 1);
    for (std::size_t q = all.size(); q > 1; --q) std::swap(all[q - 1], all[rng.index(q)]);
    const std::vector<NodeId> refills(all.begin(), all.begin() + 1 + rng.index(3));
    const std::vector<NodeId>& order = refills;
    const ServiceOptResult lp = optimize_service_times(inst, routes, refills, order);
    const GridResult grid = grid_service_oracle(inst, routes, refills, order);
    ++compared;
    if (lp.feasible != grid.feasible) continue;
    if (!lp.feasible) {
      ++agree;
      continue;
    }
    ++solved;
    const double d = std::abs(lp.eval.penalized() - grid.objective);
    worst = std::max(worst, d);
    if (d <= 0.02) ++agree;
  }
  const double secs = seconds_since(t0);
  return {agree == compared && secs <= 300.0,
          fmt("%d/%d subproblems agree (%d feasible), worst difference %.4f, %.1f s", agree,
              compared, solved, worst, secs)};
}

Outcome c6() {
  int failures = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    GeneratorProfile p;
    p.seed = 4000 + seed;
    const Instance inst = generate(p);
    AlnsConfig cfg;
    cfg.seed = seed;
    cfg.maxIter = 1000;
    const AlnsResult r = run_alns(inst, construct(inst), cfg);
    for (std::size_t q = 0; q < r.trace.size(); ++q) {
      const TraceRow& t = r.trace[q];
      if (q > 0 && t.fBest > r.trace[q - 1].fBest + 1e-12) ++failures;
      const double want = r.tem0 * std::pow(cfg.cooling, static_cast<double>(t.iteration));
      if (std::abs(t.temperature - want) > 1e-9 * std::max(1.0, want)) ++failures;
    }
    for (const OperatorStats& s : r.segmentHistory) {
      const double sum = std::accumulate(s.weight.begin(), s.weight.end(), 0.0);
      if (std::abs(sum - 1.0) > 1e-9) ++failures;
    }
    if (r.segmentHistory.size() != 5) ++failures;
  }

  int trips = 0;
  AlnsConfig cfg;
  for (std::uint64_t seed = 1; trips < kC6RoundTrips; ++seed) {
    GeneratorProfile p;
    p.seed = 5000 + seed;
    p.numSprayers = 2 + static_cast<int>(seed % 3);
    const Instance inst = generate(p);
    Rng rng(seed);
    EvalResult cur = construct(inst);
    for (int q = 0; q < 500 && trips < kC6RoundTrips; ++q, ++trips) {
      const int op = 1 + trips % kNumDestroy;
      const RepairOp rop = (trips / kNumDestroy) % 2 == 0 ? RepairOp::Greedy : RepairOp::Regret;
      const Destroyed d =
          destroy(op, inst, cur.solution, rng, cfg, position_costs(inst, cur.solution));
      const RepairResult rr = repair(rop, inst, d.partial, d.removed, cfg);
      if (!rr.ok) continue;
      try {
        require_partition(inst, rr.eval.solution.routes);
      } catch (const StructuralError&) {
        ++failures;
        continue;
      }
      cur = rr.eval;
    }
  }
  return {failures == 0, fmt("%d failures over 3 traced runs and %d round trips", failures, trips)};
}

Outcome c7() {
  const auto t0 = Clock::now();
  double gapK1 = 0.0, gapNone = 0.0;
  for (int k = 0; k < kC7Instances; ++k) {
    const Instance inst = medium(6000 + static_cast<std::uint64_t>(k));
    const double lb = composite_lower_bound(inst);
    SolveOptions o;
    o.seed = static_cast<std::uint64_t>(k) + 1;
    o.iterations = kC7Iters;
    o.phase3 = false;
    o.localSearch = LsStrategy::Kappa1;
    gapK1 += gap_percent(solve(inst, o).best.penalized(), lb);
    o.localSearch = LsStrategy::None;
    gapNone += gap_percent(solve(inst, o).best.penalized(), lb);
  }
  gapK1 /= kC7Instances;
  gapNone /= kC7Instances;
  return {gapK1 <= gapNone,
          fmt("mean gap %.2f%% with kappa=1 vs %.2f%% without search (%.1f%% relative), %.1f s",
              gapK1, gapNone, 100.0 * (gapNone - gapK1) / std::max(gapNone, 1e-12),
              seconds_since(t0))};
}

Outcome c8() {
  const auto t0 = Clock::now();
  int wins = 0;
  double routeH = 0.0, routeP = 0.0;
  for (int k = 0; k < kC8Instances; ++k) {
    GeneratorProfile p;
    p.seed = 7000 + static_cast<std::uint64_t>(k);
    p.numSprayers = 3 + k % 2;
    p.sizeClass = k % 2 == 0 ? SizeClass::Small : SizeClass::Medium;
    const Instance inst = generate(p);
    SolveOptions o;
    o.seed = static_cast<std::uint64_t>(k) + 1;
    o.iterations = kC8Iters;
    o.phase3Options = short_phase3();
    const EvalResult h = solve(inst, o).best;
    const EvalResult pr = practice_policy(inst);
    if (h.penalized() <= pr.penalized() + kTol) ++wins;
    routeH += summarize(inst, h.solution, "", 0, "").routingPerSprayer;
    routeP += summarize(inst, pr.solution, "", 0, "").routingPerSprayer;
  }
  routeH /= kC8Instances;
  routeP /= kC8Instances;
  const int need = (9 * kC8Instances + 9) / 10;
  return {wins >= need && routeH < routeP,
          fmt("matheuristic wins %d/%d (need %d), routing per sprayer %.2f vs %.2f (%.1f%% saved), "
              "%.1f s",
              wins, kC8Instances, need, routeH, routeP, 100.0 * (routeP - routeH) / routeP,
              seconds_since(t0))};
}

Outcome c9() {
  const auto t0 = Clock::now();
  int worse = 0, strictly = 0;
  for (int k = 0; k < kC9Instances; ++k) {
    const Instance inst = medium(8000 + static_cast<std::uint64_t>(k));
    SolveOptions o;
    o.seed = static_cast<std::uint64_t>(k) + 1;
    o.iterations = kC9Iters;
    o.localSearch = LsStrategy::Hybrid;
    o.phase3Options = short_phase3();
    const SolveResult r = solve(inst, o);
    const double p2 = r.phase2.penalized();
    const double p3 = r.best.penalized();
    if (p3 > p2 + 1e-9) ++worse;
    if (p3 < p2 - 1e-9) ++strictly;
  }
  const int need = (20 * kC9Instances + 99) / 100;
  return {worse == 0 && strictly >= need,
          fmt("phase 3 worse on %d, strictly better on %d/%d (need %d), %.1f s", worse, strictly,
              kC9Instances, need, seconds_since(t0))};
}

Outcome c10() {
  GeneratorProfile p;
  p.nodeCount = 25;
  p.seed = 9001;
  const Instance inst = generate(p);
  auto t0 = Clock::now();
  SolveOptions o;
  o.localSearch = LsStrategy::Hybrid;
  const SolveResult big = solve(inst, o);
  const double bigSecs = seconds_since(t0);

  t0 = Clock::now();
  const Instance t1 = fx::t1();
  SolveOptions q;
  q.phase3 = true;
  const SolveResult small = solve(t1, q);
  const bool ok = check_feasibility(t1, small.best.solution, false).empty();
  const double t1Secs = seconds_since(t0);
  return {bigSecs < 300.0 && t1Secs < 5.0 && ok && big.alns.iterations == 200 * 25,
          fmt("25-node solve %.1f s (%lld iterations), T1 end to end %.3f s with objective %g",
              bigSecs, static_cast<long long>(big.alns.iterations), t1Secs,
              small.best.penalized())};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  std::vector<int> only;
  app.add_option("--only", only, "Criteria to run (default: all)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"feasibility cross-validation", c1}, {"oracle optimality", c2},
      {"bound sandwich", c3},               {"worked-example operators", c4},
      {"LP verification", c5},              {"ALNS mechanics", c6},
      {"local-search dominance", c7},       {"policy comparison", c8},
      {"phase-3 value", c9},                {"performance", c10},
  };
  const std::set<int> chosen(only.begin(), only.end());
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!chosen.empty() && !chosen.count(id)) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
