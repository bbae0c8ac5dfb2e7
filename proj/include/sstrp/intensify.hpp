#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "sstrp/model.hpp"
#include "sstrp/schedule_eval.hpp"

namespace sstrp {

/// Refill candidates: every current refill node plus up to kappa route
/// neighbors on each side. Sorted ascending.
std::vector<NodeId> candidate_set(const Solution& sol, int kappa);

struct ServiceOptResult {
  bool feasible = false;
  std::vector<double> service;  // indexed by node id
  EvalResult eval;              // full evaluation when feasible
};

/// Maximizes total service for fixed routes, refill nodes and tanker order:
/// box bounds, refill-to-full tank segments, tanker timing with no waiting
/// (waiting becomes a variable when opts.allowWaiting), horizon, tanker tank.
/// Throws InputError when the refill set or tanker order is malformed.
ServiceOptResult optimize_service_times(const Instance& inst, const RouteSet& routes,
                                        const std::vector<NodeId>& refillSet,
                                        const std::vector<NodeId>& tankerOrder,
                                        const EvalOptions& opts = {});

struct SearchBudget {
  double seconds = 60.0;
  std::int64_t maxNodes = 1'000'000;
};

struct LocalSearchResult {
  EvalResult best;
  bool improved = false;
  bool budgetExhausted = false;
  bool orderApproximated = false;  // some refill set used earliest-start tanker order only
  std::int64_t nodes = 0;
};

/// Exact search over refill subsets of candidate_set(kappa) (never at a route's
/// last node) and tanker orders, each solved by optimize_service_times.
/// Returns the input unless something strictly better than both the input
/// and `cutoff` is found.
LocalSearchResult local_search(const Instance& inst, const EvalResult& start, int kappa,
                               const SearchBudget& budget = {}, const EvalOptions& opts = {},
                               double cutoff = std::numeric_limits<double>::infinity());

/// Same search over an explicit candidate list, with an optional incumbent.
/// Without one, `best` holds the first improvement found and `improved` tells
/// whether anything feasible below `cutoff` exists.
LocalSearchResult refill_search(const Instance& inst, const RouteSet& routes,
                                const std::vector<NodeId>& candidates, const SearchBudget& budget,
                                const EvalOptions& opts, double cutoff, const EvalResult* start);

/// Convenience overload re-evaluating a stored solution.
LocalSearchResult local_search(const Instance& inst, const Solution& start, int kappa,
                               const SearchBudget& budget = {}, const EvalOptions& opts = {});

/// All interleavings of per-sprayer refill sequences, each kept in route order.
std::vector<std::vector<NodeId>> tanker_merges(const std::vector<std::vector<NodeId>>& perRoute,
                                               std::size_t limit = 1'000'000);

}  // namespace sstrp
