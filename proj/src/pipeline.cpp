#include "sstrp/pipeline.hpp"

#include <chrono>

#include "sstrp/construction.hpp"

namespace sstrp {

namespace {

double since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

}  // namespace

SolveResult solve(const Instance& inst, const SolveOptions& opts) {
  const EvalOptions eval{opts.allowWaiting};
  SolveResult out;

  auto t = std::chrono::steady_clock::now();
  out.phase1 = construct(inst, opts.alpha, eval);
  out.seconds1 = since(t);

  t = std::chrono::steady_clock::now();
  AlnsConfig cfg;
  cfg.maxIter = opts.iterations;
  cfg.seed = opts.seed;
  cfg.localSearch = opts.localSearch;
  cfg.lsBudget = opts.lsBudget;
  cfg.alpha = opts.alpha;
  cfg.eval = eval;
  out.alns = run_alns(inst, out.phase1, cfg);
  out.phase2 = out.alns.best;
  out.seconds2 = since(t);

  out.best = out.phase2;
  if (opts.phase3) {
    t = std::chrono::steady_clock::now();
    Phase3Options p3 = opts.phase3Options;
    p3.seed = opts.seed;
    p3.alpha = opts.alpha;
    p3.eval = eval;
    out.best = phase3_improve(inst, out.alns.pool, out.phase2, p3).best;
    out.phase3Ran = true;
    out.seconds3 = since(t);
  }
  return out;
}

}  // namespace sstrp
