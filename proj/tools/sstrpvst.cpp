#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "sstrp/baseline.hpp"
#include "sstrp/bounds.hpp"
#include "sstrp/io.hpp"
#include "sstrp/objective.hpp"
#include "sstrp/oracle.hpp"
#include "sstrp/pipeline.hpp"

using namespace sstrp;

namespace {

enum Exit { kOk = 0, kInfeasible = 1, kInputError = 2, kRefusal = 3 };

LsStrategy parse_ls(const std::string& s) {
  if (s == "none") return LsStrategy::None;
  if (s == "k0") return LsStrategy::Kappa0;
  if (s == "k1") return LsStrategy::Kappa1;
  if (s == "hybrid") return LsStrategy::Hybrid;
  throw InputError("--ls must be none|k0|k1|hybrid");
}

void print_breakdown(const Solution& sol) {
  const ObjectiveBreakdown& o = sol.objective;
  std::printf("objective %.9g\n", o.total);
  std::printf("  sprayer travel %.9g\n  tanker travel %.9g\n  refill term %.9g\n", o.sprayerTravel,
              o.tankerTravel, o.refillTerm);
  std::printf("  service term %.9g\n  waiting penalty %.9g\n", o.serviceTerm, o.waitingPenalty);
  std::printf("refills %d\n", sol.refill_count());
}

unsigned worker_count() {
  unsigned n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SSTRPVST_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) n = std::min(n, static_cast<unsigned>(v));
  }
  return n;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct BenchJob {
  std::string name;
  Instance inst;
  std::uint64_t seed = 1;
};

std::vector<RunRecord> bench_one(const BenchJob& job, const SolveOptions& base) {
  SolveOptions opts = base;
  opts.seed = job.seed;
  const double lb = job.inst.num_nodes() <= 8 && job.inst.num_sprayers() <= 2
                        ? relaxed_exact_bound(job.inst)
                        : composite_lower_bound(job.inst);
  const SolveResult res = solve(job.inst, opts);
  std::vector<RunRecord> out;
  auto add = [&](const Solution& sol, const char* method, double t1, double t2, double t3) {
    RunRecord r = summarize(job.inst, sol, job.name, job.seed, method);
    r.lowerBound = lb;
    r.seconds1 = t1;
    r.seconds2 = t2;
    r.seconds3 = t3;
    out.push_back(r);
  };
  add(res.phase1.solution, "construction", res.seconds1, 0.0, 0.0);
  add(res.phase2.solution, "phase2", res.seconds1, res.seconds2, 0.0);
  if (res.phase3Ran) add(res.best.solution, "phase3", res.seconds1, res.seconds2, res.seconds3);
  add(practice_policy(job.inst).solution, "practice", 0.0, 0.0, 0.0);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synchronized sprayer-tanker routing with variable service time"};
  app.require_subcommand(1);

  std::string instancePath, solutionPath, outPath, tracePath, resultsPath;
  std::uint64_t seed = 1;
  std::int64_t iters = -1;
  std::string ls = "hybrid";
  bool phase3 = false;
  bool waiting = false;
  double phase3Seconds = 120.0;
  double lsSeconds = 60.0;

  auto* gen = app.add_subcommand("generate", "Write generated instances");
  std::string profile = "small";
  int count = 1;
  int sprayers = 2;
  int nodes = 0;
  std::string outDir = ".";
  gen->add_option("--profile", profile, "small|medium|large")->capture_default_str();
  gen->add_option("--count", count)->capture_default_str();
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("--sprayers", sprayers)->capture_default_str();
  gen->add_option("--nodes", nodes, "0 draws from the class range")->capture_default_str();
  gen->add_option("--out", outDir)->capture_default_str();

  auto* sol = app.add_subcommand("solve", "Run the matheuristic");
  sol->add_option("instance", instancePath)->required();
  sol->add_option("--seed", seed)->capture_default_str();
  sol->add_option("--iters", iters, "-1 means 200 per field node")->capture_default_str();
  sol->add_option("--ls", ls, "none|k0|k1|hybrid")->capture_default_str();
  sol->add_flag("--phase3", phase3);
  sol->add_option("--phase3-seconds", phase3Seconds)->capture_default_str();
  sol->add_option("--ls-seconds", lsSeconds)->capture_default_str();
  sol->add_flag("--waiting-allowed", waiting);
  sol->add_option("--out", outPath, "solution JSON");
  sol->add_option("--trace", tracePath, "ALNS trace CSV");
  sol->add_option("--results", resultsPath, "result row CSV");

  auto* ev = app.add_subcommand("evaluate", "Check a solution");
  ev->add_option("instance", instancePath)->required();
  ev->add_option("solution", solutionPath)->required();
  ev->add_flag("--waiting-allowed", waiting);

  auto* orc = app.add_subcommand("oracle", "Exact solve of a tiny instance");
  orc->add_option("instance", instancePath)->required();
  orc->add_option("--out", outPath);
  orc->add_flag("--waiting-allowed", waiting);

  auto* bnd = app.add_subcommand("bounds", "Lower bounds and the service upper bound");
  bnd->add_option("instance", instancePath)->required();

  auto* base = app.add_subcommand("baseline", "Practice policy");
  base->add_option("instance", instancePath)->required();
  base->add_option("--out", outPath);

  auto* bench = app.add_subcommand("bench", "Compare methods on generated instances");
  std::string profiles = "small";
  std::string seeds = "1";
  int replicates = 1;
  bench->add_option("--profiles", profiles, "comma list of size classes")->capture_default_str();
  bench->add_option("--replicates", replicates)->capture_default_str();
  bench->add_option("--seeds", seeds, "comma list of solver seeds")->capture_default_str();
  bench->add_option("--sprayers", sprayers)->capture_default_str();
  bench->add_option("--nodes", nodes)->capture_default_str();
  bench->add_option("--iters", iters)->capture_default_str();
  bench->add_option("--ls", ls)->capture_default_str();
  bench->add_flag("--phase3", phase3);
  bench->add_option("--phase3-seconds", phase3Seconds)->capture_default_str();
  bench->add_option("--out", outPath, "results CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      std::filesystem::create_directories(outDir);
      for (int c = 0; c < count; ++c) {
        GeneratorProfile p;
        p.sizeClass = parse_size_class(profile);
        p.numSprayers = sprayers;
        p.nodeCount = nodes;
        p.seed = seed + static_cast<std::uint64_t>(c);
        const Instance inst = generate(p);
        const std::string path =
            (std::filesystem::path(outDir) / (profile + "_" + std::to_string(p.seed) + ".json"))
                .string();
        save_instance(inst, path);
        std::printf("%s (%d nodes, %d sprayers)\n", path.c_str(), inst.num_nodes(),
                    inst.num_sprayers());
      }
      return kOk;
    }

    if (*sol) {
      const Instance inst = load_instance(instancePath);
      SolveOptions opts;
      opts.seed = seed;
      opts.iterations = iters;
      opts.localSearch = parse_ls(ls);
      opts.lsBudget.seconds = lsSeconds;
      opts.phase3 = phase3;
      opts.phase3Options.seconds = phase3Seconds;
      opts.allowWaiting = waiting;
      const SolveResult res = solve(inst, opts);
      const Solution& best = res.best.solution;
      if (!outPath.empty()) save_solution(inst, best, outPath);
      if (!tracePath.empty()) {
        std::ofstream t(tracePath);
        write_trace_csv(t, res.alns.trace);
      }
      if (!resultsPath.empty()) {
        RunRecord r = summarize(inst, best, instancePath, seed, phase3 ? "phase3" : "phase2");
        r.lowerBound = composite_lower_bound(inst);
        r.seconds1 = res.seconds1;
        r.seconds2 = res.seconds2;
        r.seconds3 = res.seconds3;
        write_results({r}, resultsPath);
      }
      std::printf("construction %.9g\nphase2 %.9g\n", res.phase1.penalized(),
                  res.phase2.penalized());
      print_breakdown(best);
      const ViolationReport rep = check_feasibility(inst, best, waiting);
      std::printf("feasible %s\n", rep.empty() ? "yes" : "no");
      if (!rep.empty()) std::printf("%s", rep.to_string().c_str());
      return rep.empty() ? kOk : kInfeasible;
    }

    if (*ev) {
      const Instance inst = load_instance(instancePath);
      const Solution s = load_solution(inst, solutionPath);
      const ViolationReport rep = check_feasibility(inst, s, waiting);
      Solution shown = s;
      shown.objective = objective(inst, s, waiting ? 0.0 : kWaitingPenalty);
      print_breakdown(shown);
      std::printf("feasible %s\n", rep.empty() ? "yes" : "no");
      if (!rep.empty()) std::printf("%s", rep.to_string().c_str());
      return rep.empty() ? kOk : kInfeasible;
    }

    if (*orc) {
      const Instance inst = load_instance(instancePath);
      const OracleResult r = exact_solve(inst, {}, EvalOptions{waiting});
      if (!r.feasible) {
        std::printf("infeasible (proven, %lld route sets)\n", static_cast<long long>(r.routeSets));
        return kInfeasible;
      }
      if (!outPath.empty()) save_solution(inst, r.best.solution, outPath);
      print_breakdown(r.best.solution);
      return kOk;
    }

    if (*bnd) {
      const Instance inst = load_instance(instancePath);
      std::printf("composite %.9g\n", composite_lower_bound(inst));
      try {
        std::printf("relaxed %.9g\n", relaxed_exact_bound(inst));
      } catch (const BudgetRefusal& e) {
        std::printf("relaxed n/a (%s)\n", e.what());
      }
      std::printf("service_upper %.9g\n", service_upper_bound(inst));
      return kOk;
    }

    if (*base) {
      const Instance inst = load_instance(instancePath);
      const EvalResult r = practice_policy(inst);
      if (!outPath.empty()) save_solution(inst, r.solution, outPath);
      print_breakdown(r.solution);
      std::printf("feasible %s\n", r.solution.feasible() ? "yes" : "no");
      return r.solution.feasible() ? kOk : kInfeasible;
    }

    if (*bench) {
      SolveOptions opts;
      opts.iterations = iters;
      opts.localSearch = parse_ls(ls);
      opts.phase3 = phase3;
      opts.phase3Options.seconds = phase3Seconds;
      std::vector<BenchJob> jobs;
      for (const std::string& prof : split(profiles))
        for (int r = 0; r < replicates; ++r) {
          GeneratorProfile p;
          p.sizeClass = parse_size_class(prof);
          p.numSprayers = sprayers;
          p.nodeCount = nodes;
          p.seed = static_cast<std::uint64_t>(r + 1);
          const Instance inst = generate(p);
          for (const std::string& s : split(seeds))
            jobs.push_back({prof + "_" + std::to_string(p.seed), inst, std::stoull(s)});
        }
      std::vector<std::vector<RunRecord>> results(jobs.size());
      std::atomic<std::size_t> next{0};
      std::mutex errMutex;
      std::string firstError;
      std::vector<std::thread> pool;
      const unsigned workers = std::min<unsigned>(worker_count(), static_cast<unsigned>(jobs.size()));
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
          for (std::size_t q; (q = next++) < jobs.size();) {
            try {
              results[q] = bench_one(jobs[q], opts);
            } catch (const std::exception& e) {
              std::lock_guard<std::mutex> lock(errMutex);
              if (firstError.empty()) firstError = jobs[q].name + ": " + e.what();
            }
          }
        });
      for (auto& t : pool) t.join();
      if (!firstError.empty()) throw std::runtime_error(firstError);
      std::vector<RunRecord> all;
      for (auto& r : results) all.insert(all.end(), r.begin(), r.end());
      write_results(all, outPath);
      std::printf("%zu rows -> %s\n", all.size(), outPath.c_str());
      return kOk;
    }
  } catch (const BudgetRefusal& e) {
    std::fprintf(stderr, "refused: %s\n", e.what());
    return kRefusal;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInputError;
  }
  return kOk;
}
