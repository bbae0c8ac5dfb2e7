#include "sstrp/schedule_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sstrp/objective.hpp"

namespace sstrp {

void AlphaConfig::validate() const {
  if (grid.empty()) throw InputError("alpha grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] <= 1.0)) throw InputError("alpha values must lie in (0,1]");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw InputError("alpha grid must be strictly increasing");
  }
}

EvalSummary EvalResult::summary() const {
  EvalSummary s;
  s.alpha = solution.alpha;
  s.total = solution.objective.total;
  s.horizonExcess = horizonExcess;
  s.totalWaiting = totalWaiting;
  s.capacityInvalid = capacityInvalid;
  s.tankerOverdrawn = tankerOverdrawn;
  return s;
}

namespace {

int hard_class(const EvalSummary& r) {
  if (r.capacityInvalid) return 2;
  if (r.hard_infeasible()) return 1;
  return 0;
}

struct Workspace {
  std::vector<double> service;
  std::vector<char> refill;
  std::vector<NodeId> tanker;
  std::vector<int> owner;
  std::vector<std::size_t> pos;
  std::vector<std::pair<double, NodeId>> starts;
  std::vector<std::size_t> segStart;
  std::vector<double> segTime;
};

Workspace& workspace() {
  thread_local Workspace ws;
  return ws;
}

void index_routes(const Instance& inst, const RouteSet& routes, Workspace& ws) {
  const auto n1 = static_cast<std::size_t>(inst.num_nodes() + 1);
  ws.owner.assign(n1, -1);
  ws.pos.assign(n1, 0);
  for (std::size_t k = 0; k < routes.size(); ++k)
    for (std::size_t p = 0; p < routes[k].size(); ++p) {
      ws.owner[static_cast<std::size_t>(routes[k][p])] = static_cast<int>(k);
      ws.pos[static_cast<std::size_t>(routes[k][p])] = p;
    }
}

// Minimum service everywhere; refill whenever the alpha-scaled tank cannot
// cover the next node. Returns true when some qMin exceeds the scaled tank.
bool plan_min_service(const Instance& inst, const RouteSet& routes, double alpha, Workspace& ws) {
  const auto& prm = inst.params();
  const double qbar = alpha * prm.sprayerCap;
  const auto n1 = static_cast<std::size_t>(inst.num_nodes() + 1);
  ws.service.assign(n1, 0.0);
  ws.refill.assign(n1, 0);
  bool invalid = false;
  for (const Route& r : routes) {
    double level = qbar;
    for (std::size_t p = 0; p < r.size(); ++p) {
      const NodeId i = r[p];
      const double q = inst.node(i).qMin;
      if (q > level + 1e-12) invalid = true;
      ws.service[static_cast<std::size_t>(i)] = q / prm.sprayRate;
      level -= q;
      if (p + 1 < r.size() && level < inst.node(r[p + 1]).qMin) {
        ws.refill[static_cast<std::size_t>(i)] = 1;
        level = qbar;
      }
    }
  }
  return invalid;
}

// Orders the tanker, absorbs gaps into service times and returns the scalar
// outcome. Requires index_routes and ws.service / ws.refill.
EvalSummary sync_core(const Instance& inst, const RouteSet& routes, Workspace& ws,
                      double bufferTime, const EvalOptions& opts) {
  const auto& prm = inst.params();
  const std::size_t K = routes.size();
  EvalSummary out;

  ws.starts.clear();
  for (const Route& r : routes) {
    if (r.empty()) continue;
    double clock = inst.travel(kDepot, r.front());
    for (std::size_t p = 0; p < r.size(); ++p) {
      const auto ui = static_cast<std::size_t>(r[p]);
      double depart = clock + ws.service[ui];
      if (ws.refill[ui]) {
        ws.starts.emplace_back(depart, r[p]);
        depart += prm.refillTime;
      }
      if (p + 1 < r.size()) clock = depart + inst.travel(r[p], r[p + 1]);
    }
  }
  std::sort(ws.starts.begin(), ws.starts.end());
  ws.tanker.clear();
  for (const auto& st : ws.starts) ws.tanker.push_back(st.second);

  ws.segStart.assign(K, 0);
  ws.segTime.assign(K, 0.0);
  for (std::size_t k = 0; k < K; ++k)
    if (!routes[k].empty()) ws.segTime[k] = inst.travel(kDepot, routes[k].front());

  double tankerLevel = prm.tankerCap;
  double prevTheta = 0.0;
  NodeId prev = kDepot;
  for (std::size_t t = 0; t < ws.tanker.size(); ++t) {
    const NodeId j = ws.tanker[t];
    const auto uj = static_cast<std::size_t>(j);
    const auto k = static_cast<std::size_t>(ws.owner[uj]);
    const Route& r = routes[k];
    const std::size_t from = ws.segStart[k];
    const std::size_t to = ws.pos[uj];

    double finish = ws.segTime[k];
    double used = 0.0;
    double slack = 0.0;
    for (std::size_t p = from; p <= to; ++p) {
      const auto ui = static_cast<std::size_t>(r[p]);
      finish += ws.service[ui];
      if (p < to) finish += inst.travel(r[p], r[p + 1]);
      used += prm.sprayRate * ws.service[ui];
      slack += std::max(0.0, inst.max_service(r[p]) - ws.service[ui]);
    }
    const double w = (t == 0) ? inst.tanker_travel(kDepot, j)
                              : prevTheta + prm.refillTime + inst.tanker_travel(prev, j);
    const double gap = w - finish;
    if (gap > 0.0 && slack > 0.0) {
      const double room = std::max(0.0, (prm.sprayerCap - used) / prm.sprayRate);
      const double ext = std::min({gap, bufferTime, slack, room});
      if (ext > 0.0) {
        for (std::size_t p = from; p <= to; ++p) {
          const auto ui = static_cast<std::size_t>(r[p]);
          const double hi = inst.max_service(r[p]);
          const double sl = std::max(0.0, hi - ws.service[ui]);
          const double before = ws.service[ui];
          ws.service[ui] = std::min(hi, before + ext * sl / slack);
          finish += ws.service[ui] - before;
          used += prm.sprayRate * (ws.service[ui] - before);
        }
      }
    }
    if (used > prm.sprayerCap + kFeasTol) out.tankerOverdrawn = true;
    const double theta = std::max(w, finish);
    out.totalWaiting += theta - finish;
    tankerLevel -= used;
    if (tankerLevel < -kFeasTol) out.tankerOverdrawn = true;
    ws.segStart[k] = to + 1;
    if (to + 1 < r.size()) ws.segTime[k] = theta + prm.refillTime + inst.travel(j, r[to + 1]);
    prevTheta = theta;
    prev = j;
  }

  double sprayerTravel = 0.0;
  double serviceSum = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const Route& r = routes[k];
    if (r.empty()) continue;
    sprayerTravel += route_travel(inst, r);
    for (NodeId i : r) serviceSum += ws.service[static_cast<std::size_t>(i)];
    double clock = ws.segTime[k];
    double used = 0.0;
    for (std::size_t p = ws.segStart[k]; p < r.size(); ++p) {
      const auto ui = static_cast<std::size_t>(r[p]);
      clock += ws.service[ui];
      used += prm.sprayRate * ws.service[ui];
      clock += inst.travel(r[p], p + 1 < r.size() ? r[p + 1] : kDepot);
    }
    if (used > prm.sprayerCap + kFeasTol) out.tankerOverdrawn = true;
    out.horizonExcess += std::max(0.0, clock - prm.horizon);
  }
  const double weight = opts.allowWaiting ? 0.0 : kWaitingPenalty;
  out.total = sprayerTravel + tanker_route_travel(inst, ws.tanker) +
              prm.refillTime * static_cast<double>(ws.tanker.size()) - serviceSum +
              weight * out.totalWaiting;
  return out;
}

EvalSummary quick_at_alpha(const Instance& inst, const RouteSet& routes, double alpha,
                           const EvalOptions& opts, Workspace& ws) {
  const bool invalid = plan_min_service(inst, routes, alpha, ws);
  const double bufferTime = (1.0 - alpha) * inst.params().sprayerCap / inst.params().sprayRate;
  EvalSummary s = sync_core(inst, routes, ws, bufferTime, opts);
  s.capacityInvalid = invalid;
  s.alpha = alpha;
  return s;
}

}  // namespace

bool better(const EvalSummary& a, const EvalSummary& b) {
  const int ca = hard_class(a);
  const int cb = hard_class(b);
  if (ca != cb) return ca < cb;
  if (ca == 1 && std::abs(a.horizonExcess - b.horizonExcess) > 1e-12)
    return a.horizonExcess < b.horizonExcess;
  return a.total < b.total - 1e-12;
}

bool better(const EvalResult& a, const EvalResult& b) { return better(a.summary(), b.summary()); }

double rank_value(const EvalSummary& r) {
  switch (hard_class(r)) {
    case 0: return r.total;
    case 1: return r.total + 1e6 + 1e3 * r.horizonExcess;
    default: return std::numeric_limits<double>::infinity();
  }
}

double rank_value(const EvalResult& r) { return rank_value(r.summary()); }

EvalResult evaluate_decisions(const Instance& inst, const RouteSet& routes,
                              std::vector<double> service, std::vector<char> refill,
                              std::vector<NodeId> tankerRoute, const EvalOptions& opts) {
  EvalResult res;
  Realization real = realize_schedule(inst, routes, service, refill, tankerRoute);
  Solution& sol = res.solution;
  sol.routes = routes;
  sol.service = std::move(service);
  sol.refill = std::move(refill);
  sol.tankerRoute = std::move(tankerRoute);
  sol.schedule = std::move(real.schedule);
  res.horizonExcess = real.horizonExcess;
  res.totalWaiting = real.totalWaiting;
  res.tankerOverdrawn = real.tankerOverdrawn || real.tankNegative || real.tankerOrderInconsistent;
  sol.horizonInfeasible = real.hard_infeasible();
  sol.waitingInfeasible = !opts.allowWaiting && real.totalWaiting > kFeasTol;
  sol.schedule.feasible = sol.feasible();
  sol.objective = objective_unchecked(inst, sol.routes, sol.service, sol.refill, sol.tankerRoute,
                                      sol.schedule.waiting,
                                      opts.allowWaiting ? 0.0 : kWaitingPenalty);
  return res;
}

EvalResult synchronize_schedule(const Instance& inst, const RouteSet& routes,
                                std::vector<double> service, std::vector<char> refill,
                                double bufferTime, const EvalOptions& opts) {
  Workspace& ws = workspace();
  index_routes(inst, routes, ws);
  ws.service = std::move(service);
  ws.refill = std::move(refill);
  sync_core(inst, routes, ws, bufferTime, opts);
  return evaluate_decisions(inst, routes, ws.service, ws.refill, ws.tanker, opts);
}

EvalResult evaluate_partial(const Instance& inst, const RouteSet& routes, double alpha,
                            const EvalOptions& opts) {
  Workspace& ws = workspace();
  route_owner(inst, routes);
  index_routes(inst, routes, ws);
  const EvalSummary s = quick_at_alpha(inst, routes, alpha, opts, ws);
  EvalResult res = evaluate_decisions(inst, routes, ws.service, ws.refill, ws.tanker, opts);
  res.capacityInvalid = s.capacityInvalid;
  res.solution.alpha = alpha;
  if (s.capacityInvalid) res.solution.horizonInfeasible = true;
  return res;
}

EvalResult evaluate_at_alpha(const Instance& inst, const RouteSet& routes, double alpha,
                             const EvalOptions& opts) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InputError("alpha must lie in (0,1]");
  require_partition(inst, routes);
  return evaluate_partial(inst, routes, alpha, opts);
}

EvalSummary quick_line_search(const Instance& inst, const RouteSet& routes, const AlphaConfig& cfg,
                              const EvalOptions& opts) {
  Workspace& ws = workspace();
  index_routes(inst, routes, ws);
  EvalSummary best;
  bool have = false;
  for (auto it = cfg.grid.rbegin(); it != cfg.grid.rend(); ++it) {
    const EvalSummary cand = quick_at_alpha(inst, routes, *it, opts, ws);
    if (!have || better(cand, best)) {
      best = cand;
      have = true;
    }
  }
  return best;
}

EvalResult line_search_partial(const Instance& inst, const RouteSet& routes, const AlphaConfig& cfg,
                               const EvalOptions& opts) {
  route_owner(inst, routes);
  const EvalSummary best = quick_line_search(inst, routes, cfg, opts);
  return evaluate_partial(inst, routes, best.alpha, opts);
}

EvalResult line_search(const Instance& inst, const RouteSet& routes, const AlphaConfig& cfg,
                       const EvalOptions& opts) {
  cfg.validate();
  require_partition(inst, routes);
  return line_search_partial(inst, routes, cfg, opts);
}

Solution assemble_solution(const Instance& inst, const RouteSet& routes, std::vector<double> service,
                           const std::vector<NodeId>& tankerRoute, const EvalOptions& opts) {
  std::vector<char> refill(static_cast<std::size_t>(inst.num_nodes() + 1), 0);
  for (NodeId j : tankerRoute) refill[static_cast<std::size_t>(j)] = 1;
  return evaluate_decisions(inst, routes, std::move(service), std::move(refill), tankerRoute, opts)
      .solution;
}

}  // namespace sstrp
