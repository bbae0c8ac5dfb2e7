#pragma once

#include <cstdint>
#include <limits>

#include "sstrp/alns.hpp"
#include "sstrp/intensify.hpp"
#include "sstrp/model.hpp"
#include "sstrp/schedule_eval.hpp"

namespace sstrp {

struct Phase3Options {
  std::int64_t maxNodes = 200'000;  // DFS expansions before falling back
  double seconds = 60.0;
  SearchBudget lsBudget{5.0, 200'000};
  std::int64_t fallbackIters = -1;  // -1: 50 * |N^f|
  std::uint64_t seed = 1;
  AlphaConfig alpha{};
  EvalOptions eval{};
};

struct Phase3Result {
  EvalResult best;
  bool improved = false;
  bool exhaustive = false;    // DFS over pool routes finished within budget
  bool usedFallback = false;  // pool-restricted ALNS ran
  std::int64_t candidates = 0;  // local_search calls
  std::int64_t nodes = 0;
};

/// Searches route sets built only from pool arcs, evaluating each complete
/// candidate with local_search(kappa = 1). Exhaustive depth-first search with
/// (visited set, endpoint) dominance when it fits the budget, pool-restricted
/// ALNS otherwise. Never returns anything worse than `incumbent`.
Phase3Result phase3_improve(const Instance& inst, const ArcPool& pool, const EvalResult& incumbent,
                            const Phase3Options& opts = {});

/// Lower bound on the objective of any schedule over fixed routes, ignoring
/// tanker travel.
double routes_lower_bound(const Instance& inst, const RouteSet& routes);

}  // namespace sstrp
