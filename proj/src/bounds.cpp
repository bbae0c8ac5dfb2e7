#include "sstrp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sstrp/oracle.hpp"

namespace sstrp {

double composite_lower_bound(const Instance& inst) {
  const auto& prm = inst.params();
  const int N = inst.num_nodes();
  double travel = 0.0;
  for (NodeId i = 0; i <= N; ++i) {
    double in = std::numeric_limits<double>::infinity();
    for (NodeId j = 0; j <= N; ++j)
      if (j != i) in = std::min(in, inst.travel(j, i));
    // Symmetric metric: cheapest incoming equals cheapest outgoing.
    travel += in;
  }
  double qMinSum = 0.0;
  double serviceMax = 0.0;
  for (const FieldNode& n : inst.nodes()) {
    qMinSum += n.qMin;
    serviceMax += n.qMax / prm.sprayRate;
  }
  const double excess = (qMinSum - prm.numSprayers * prm.sprayerCap) / prm.sprayerCap;
  const double refills = std::max(0.0, std::ceil(excess - 1e-9));
  return travel + prm.refillTime * refills - serviceMax;
}

double relaxed_exact_bound(const Instance& inst, int sizeCap) {
  OracleCaps caps;
  caps.maxNodes = sizeCap;
  caps.maxSprayers = 2;
  const RelaxedResult r = exact_solve_relaxed(inst, caps);
  if (!r.feasible) return std::numeric_limits<double>::infinity();
  return r.value;
}

double service_upper_bound_exact(const Instance& inst) {
  const auto& prm = inst.params();
  const int N = inst.num_nodes();
  if (N > 20) throw BudgetRefusal("exact service bound limited to 20 nodes");
  const auto n = static_cast<std::size_t>(N);
  const std::size_t full = std::size_t{1} << n;
  const double inf = std::numeric_limits<double>::infinity();
  // Shortest depot-anchored path through each subset, ending at each node.
  std::vector<double> dp(full * n, inf);
  for (std::size_t i = 0; i < n; ++i)
    dp[(std::size_t{1} << i) * n + i] = inst.travel(kDepot, static_cast<NodeId>(i + 1));
  double best = 0.0;
  const double cap = prm.sprayerCap / prm.sprayRate;
  for (std::size_t mask = 1; mask < full; ++mask) {
    double tour = inf;
    double hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1U)) continue;
      hi += inst.max_service(static_cast<NodeId>(i + 1));
      const double cur = dp[mask * n + i];
      if (cur == inf) continue;
      tour = std::min(tour, cur + inst.travel(static_cast<NodeId>(i + 1), kDepot));
      for (std::size_t j = 0; j < n; ++j) {
        if (mask >> j & 1U) continue;
        const std::size_t nm = mask | (std::size_t{1} << j);
        dp[nm * n + j] = std::min(dp[nm * n + j],
                                  cur + inst.travel(static_cast<NodeId>(i + 1),
                                                    static_cast<NodeId>(j + 1)));
      }
    }
    const double budget = prm.horizon - tour;
    if (budget < 0.0) continue;
    // numF tanks of service; each costs xi of time.
    for (int numF = 0;; ++numF) {
      const double time = budget - prm.refillTime * numF;
      if (time < 0.0) break;
      best = std::max(best, std::min({numF * cap, time, hi}));
      if (numF * cap >= hi) break;
    }
  }
  return best;
}

double service_upper_bound_analytic(const Instance& inst) {
  const auto& prm = inst.params();
  double nearest = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const FieldNode& n : inst.nodes()) {
    nearest = std::min(nearest, inst.travel(kDepot, n.id));
    hi += n.qMax / prm.sprayRate;
  }
  const double budget = prm.horizon - 2.0 * nearest;
  if (budget < 0.0) return 0.0;
  const double cap = prm.sprayerCap / prm.sprayRate;
  double best = 0.0;
  for (int refills = 0;; ++refills) {
    const double time = budget - prm.refillTime * refills;
    if (time < 0.0) break;
    best = std::max(best, std::min((refills + 1) * cap, time));
    if ((refills + 1) * cap >= hi) break;
  }
  return std::min(best, hi);
}

double service_upper_bound(const Instance& inst) {
  return inst.num_nodes() <= 15 ? service_upper_bound_exact(inst)
                                : service_upper_bound_analytic(inst);
}

double gap_percent(double z, double lb) {
  if (lb == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (z - lb) / std::abs(lb) * 100.0;
}

}  // namespace sstrp
