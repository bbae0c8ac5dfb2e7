#pragma once

#include <cstdint>
#include <vector>

#include "sstrp/model.hpp"
#include "sstrp/schedule_eval.hpp"

namespace sstrp {

struct OracleCaps {
  int maxNodes = 8;
  int maxSprayers = 2;
  double seconds = 120.0;
};

struct OracleResult {
  bool feasible = false;  // false: proven infeasible
  EvalResult best;
  std::int64_t routeSets = 0;  // route configurations examined
};

/// Exhaustive optimum: node partitions (up to sprayer relabeling), route
/// orders, refill subsets and tanker orders, with service times from the LP.
/// Throws BudgetRefusal when the instance exceeds the caps or time runs out.
OracleResult exact_solve(const Instance& inst, const OracleCaps& caps = {},
                         const EvalOptions& opts = {});

struct RelaxedResult {
  bool feasible = false;
  double value = 0.0;
};

/// Optimum with the tanker removed: refills cost xi but need no tanker.
RelaxedResult exact_solve_relaxed(const Instance& inst, const OracleCaps& caps = {});

struct GridResult {
  bool feasible = false;
  std::vector<double> service;  // indexed by node id
  double objective = 0.0;       // penalized total of the resulting solution
};

/// Grid search over service times (step in time units) for fixed routes,
/// refills and tanker order. Only segment sums matter, so the grid runs over
/// the refill-ended segments; at most 3 refills, otherwise BudgetRefusal.
GridResult grid_service_oracle(const Instance& inst, const RouteSet& routes,
                               const std::vector<NodeId>& refillSet,
                               const std::vector<NodeId>& tankerOrder, double step = 0.01);

}  // namespace sstrp
