#pragma once

#include <limits>
#include <vector>

#include "sstrp/model.hpp"

namespace sstrp {

/// Tank fractions tried by the line search.
struct AlphaConfig {
  std::vector<double> grid{0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 1.00};

  /// Throws InputError unless strictly increasing and within (0,1].
  void validate() const;
};

struct EvalOptions {
  bool allowWaiting = false;  // waiting carries no penalty
};

/// Scalar outcome of one evaluation; enough to rank candidates.
struct EvalSummary {
  double alpha = 1.0;
  double total = 0.0;  // penalized objective
  double horizonExcess = 0.0;
  double totalWaiting = 0.0;
  bool capacityInvalid = false;  // some qMin exceeds the alpha-scaled tank
  bool tankerOverdrawn = false;

  bool hard_infeasible() const {
    return capacityInvalid || tankerOverdrawn || horizonExcess > kFeasTol;
  }
};

struct EvalResult {
  Solution solution;  // routes, service, refills, tanker route, schedule, objective, alpha
  bool capacityInvalid = false;
  bool tankerOverdrawn = false;
  double horizonExcess = 0.0;
  double totalWaiting = 0.0;

  bool hard_infeasible() const {
    return capacityInvalid || tankerOverdrawn || horizonExcess > kFeasTol;
  }
  bool waiting_infeasible() const { return solution.waitingInfeasible; }
  double penalized() const { return solution.objective.total; }
  EvalSummary summary() const;
};

/// Ranking used by every comparison of evaluated solutions: hard-feasible
/// first, then least horizon excess, then penalized objective.
bool better(const EvalSummary& a, const EvalSummary& b);
bool better(const EvalResult& a, const EvalResult& b);

/// Scalar version of the ranking: f, plus 1e6 + 1e3 * excess when hard
/// infeasible, infinity when the tank fraction cannot cover some qMin.
double rank_value(const EvalSummary& r);
double rank_value(const EvalResult& r);

/// Service times, refill points and tanker route for fixed routes at one tank
/// fraction. Requires the routes to partition the field nodes.
EvalResult evaluate_at_alpha(const Instance& inst, const RouteSet& routes, double alpha,
                             const EvalOptions& opts = {});

/// Best evaluation over the alpha grid; ties go to the larger alpha.
EvalResult line_search(const Instance& inst, const RouteSet& routes,
                       const AlphaConfig& cfg = {}, const EvalOptions& opts = {});

/// Same procedures for route sets that cover only part of the field nodes
/// (used while inserting nodes). No partition check.
EvalResult evaluate_partial(const Instance& inst, const RouteSet& routes, double alpha,
                            const EvalOptions& opts = {});
EvalResult line_search_partial(const Instance& inst, const RouteSet& routes,
                               const AlphaConfig& cfg = {}, const EvalOptions& opts = {});

/// Summary of line_search_partial without building the schedule.
EvalSummary quick_line_search(const Instance& inst, const RouteSet& routes,
                              const AlphaConfig& cfg = {}, const EvalOptions& opts = {});

/// Tanker ordering and gap absorption for given service times and refill
/// flags. Gaps are absorbed by stretching the segment before each refill, up
/// to `bufferTime` in total per segment and within qMax and the physical tank.
EvalResult synchronize_schedule(const Instance& inst, const RouteSet& routes,
                                std::vector<double> service, std::vector<char> refill,
                                double bufferTime = std::numeric_limits<double>::infinity(),
                                const EvalOptions& opts = {});

/// Builds a complete Solution (schedule, objective, flags) from explicit
/// decisions. Refills are taken from the tanker route.
Solution assemble_solution(const Instance& inst, const RouteSet& routes,
                           std::vector<double> service, const std::vector<NodeId>& tankerRoute,
                           const EvalOptions& opts = {});

/// Full evaluation of explicit decisions, with the ranking fields filled.
EvalResult evaluate_decisions(const Instance& inst, const RouteSet& routes,
                              std::vector<double> service, std::vector<char> refill,
                              std::vector<NodeId> tankerRoute, const EvalOptions& opts = {});

}  // namespace sstrp
