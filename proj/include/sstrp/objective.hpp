#pragma once

#include <string>
#include <vector>

#include "sstrp/model.hpp"

namespace sstrp {

/// Outcome of simulating fixed routes, service times, refills and tanker order.
struct Realization {
  Schedule schedule;
  double totalWaiting = 0.0;
  double horizonExcess = 0.0;  // sum over sprayers of max(0, return time - tMax)
  bool tankerOrderInconsistent = false;
  bool tankNegative = false;
  bool tankerOverdrawn = false;

  bool hard_infeasible() const {
    return horizonExcess > kFeasTol || tankerOrderInconsistent || tankNegative || tankerOverdrawn;
  }
};

/// Forward simulation shared by the evaluators. Each sprayer starts full, refills
/// to capacity, and starts its refill at max(tanker arrival, service end); the
/// difference is recorded as waiting.
Realization realize_schedule(const Instance& inst, const RouteSet& routes,
                             const std::vector<double>& service,
                             const std::vector<char>& refill,
                             const std::vector<NodeId>& tankerRoute);

/// Objective with the waiting term weighted by `waitingWeight` (10 for the
/// penalized form, 0 when waiting is allowed). Uses schedule.waiting as stored.
/// Throws StructuralError unless routes partition the field nodes.
ObjectiveBreakdown objective(const Instance& inst, const Solution& sol,
                             double waitingWeight = kWaitingPenalty);

/// Same, without the partition requirement (partial solutions during repair).
ObjectiveBreakdown objective_unchecked(const Instance& inst, const RouteSet& routes,
                                       const std::vector<double>& service,
                                       const std::vector<char>& refill,
                                       const std::vector<NodeId>& tankerRoute,
                                       const std::vector<double>& waiting, double waitingWeight);

struct Violation {
  int equation = 0;  // constraint family number of the MIP
  std::string what;
  std::vector<NodeId> nodes;
  int sprayer = -1;
  double magnitude = 0.0;
};

struct ViolationReport {
  std::vector<Violation> violations;

  bool empty() const { return violations.empty(); }
  bool has(int equation) const;
  std::string to_string() const;
};

/// Independent constraint checker. Recomputes every timing and tank quantity
/// from routes, service times, refill flags and the tanker route, checks the
/// constraint families, and compares any stored schedule against the
/// recomputation. With allowWaiting the zero-waiting family is not reported.
ViolationReport check_feasibility(const Instance& inst, const Solution& sol, bool allowWaiting);

}  // namespace sstrp
