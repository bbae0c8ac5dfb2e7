#include "sstrp/baseline.hpp"

#include <algorithm>
#include <numeric>

#include "sstrp/construction.hpp"

namespace sstrp {

EvalResult practice_policy(const Instance& inst) {
  const int n = inst.num_nodes();
  const auto K = static_cast<std::size_t>(inst.num_sprayers());
  std::vector<NodeId> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 1);
  const Route tour = tsp_route(inst, all);

  RouteSet routes(K);
  for (std::size_t q = 0; q < tour.size(); ++q) routes[q % K].push_back(tour[q]);

  const InstanceParams& prm = inst.params();
  std::vector<double> service(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<char> refill(static_cast<std::size_t>(n + 1), 0);
  for (NodeId i = 1; i <= n; ++i)
    service[static_cast<std::size_t>(i)] =
        std::min(1.1 * inst.min_service(i), inst.max_service(i));
  for (const Route& r : routes) {
    double tank = prm.sprayerCap;
    for (std::size_t q = 0; q < r.size(); ++q) {
      const auto u = static_cast<std::size_t>(r[q]);
      tank -= prm.sprayRate * service[u];
      if (q + 1 == r.size()) break;
      const double nextQty = prm.sprayRate * service[static_cast<std::size_t>(r[q + 1])];
      if (tank < nextQty - kFeasTol) {
        refill[u] = 1;
        tank = prm.sprayerCap;
      }
    }
  }
  return synchronize_schedule(inst, routes, std::move(service), std::move(refill));
}

SolveResult waiting_allowed_solve(const Instance& inst, SolveOptions opts) {
  opts.allowWaiting = true;
  return solve(inst, opts);
}

}  // namespace sstrp
