#include "sstrp/objective.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sstrp {

Realization realize_schedule(const Instance& inst, const RouteSet& routes,
                             const std::vector<double>& service,
                             const std::vector<char>& refill,
                             const std::vector<NodeId>& tankerRoute) {
  const auto& prm = inst.params();
  Realization out;
  Schedule& sch = out.schedule;
  sch.resize(inst.num_nodes());

  const std::size_t K = routes.size();
  std::vector<std::size_t> cursor(K, 0);
  std::vector<double> clock(K, 0.0);  // arrival time at routes[k][cursor[k]]
  std::vector<double> tank(K, prm.sprayerCap);
  std::vector<int> owner(static_cast<std::size_t>(inst.num_nodes() + 1), -1);
  std::vector<std::size_t> pos(static_cast<std::size_t>(inst.num_nodes() + 1), 0);
  for (std::size_t k = 0; k < K; ++k) {
    if (!routes[k].empty()) clock[k] = inst.travel(kDepot, routes[k].front());
    for (std::size_t p = 0; p < routes[k].size(); ++p) {
      owner[static_cast<std::size_t>(routes[k][p])] = static_cast<int>(k);
      pos[static_cast<std::size_t>(routes[k][p])] = p;
    }
  }

  // Serves plain nodes of route k up to (excluding) position `stop`.
  auto advance = [&](std::size_t k, std::size_t stop) {
    const Route& r = routes[k];
    while (cursor[k] < stop) {
      const NodeId i = r[cursor[k]];
      const auto ui = static_cast<std::size_t>(i);
      if (refill[ui]) {
        out.tankerOrderInconsistent = true;  // refill node the tanker never reaches in time
      }
      sch.arrival[ui] = clock[k];
      sch.sprayerTank[ui] = tank[k];
      tank[k] -= prm.sprayRate * service[ui];
      if (tank[k] < -kFeasTol) out.tankNegative = true;
      const double depart = clock[k] + service[ui];
      ++cursor[k];
      if (cursor[k] < r.size()) clock[k] = depart + inst.travel(i, r[cursor[k]]);
    }
  };

  double tankerLevel = prm.tankerCap;
  double prevTheta = 0.0;
  NodeId prevStop = kDepot;
  for (std::size_t t = 0; t < tankerRoute.size(); ++t) {
    const NodeId j = tankerRoute[t];
    const auto uj = static_cast<std::size_t>(j);
    const int k = owner[uj];
    if (k < 0 || !refill[uj] || cursor[static_cast<std::size_t>(k)] > pos[uj]) {
      out.tankerOrderInconsistent = true;
      continue;
    }
    const auto uk = static_cast<std::size_t>(k);
    advance(uk, pos[uj]);
    sch.arrival[uj] = clock[uk];
    sch.sprayerTank[uj] = tank[uk];
    const double afterService = tank[uk] - prm.sprayRate * service[uj];
    if (afterService < -kFeasTol) out.tankNegative = true;
    const double finish = clock[uk] + service[uj];
    const double w = (t == 0) ? inst.tanker_travel(kDepot, j)
                              : prevTheta + prm.refillTime + inst.tanker_travel(prevStop, j);
    const double theta = std::max(w, finish);
    sch.tankerArrival[uj] = w;
    sch.refillStart[uj] = theta;
    sch.waiting[uj] = theta - finish;
    out.totalWaiting += theta - finish;
    const double qty = prm.sprayerCap - afterService;
    sch.refillQty[uj] = qty;
    sch.tankerTank[uj] = tankerLevel;
    tankerLevel -= qty;
    if (tankerLevel < -kFeasTol) out.tankerOverdrawn = true;
    prevTheta = theta;
    prevStop = j;

    tank[uk] = prm.sprayerCap;
    ++cursor[uk];
    if (cursor[uk] < routes[uk].size())
      clock[uk] = theta + prm.refillTime + inst.travel(j, routes[uk][cursor[uk]]);
  }

  for (std::size_t k = 0; k < K; ++k) {
    const Route& r = routes[k];
    advance(k, r.size());
    if (r.empty()) continue;
    const NodeId last = r.back();
    const auto ul = static_cast<std::size_t>(last);
    const double ret = sch.arrival[ul] + service[ul] + inst.travel(last, kDepot);
    out.horizonExcess += std::max(0.0, ret - prm.horizon);
  }
  sch.feasible = !out.hard_infeasible() && out.totalWaiting <= kFeasTol;
  return out;
}

ObjectiveBreakdown objective_unchecked(const Instance& inst, const RouteSet& routes,
                                       const std::vector<double>& service,
                                       const std::vector<char>& refill,
                                       const std::vector<NodeId>& tankerRoute,
                                       const std::vector<double>& waiting, double waitingWeight) {
  ObjectiveBreakdown ob;
  for (const auto& r : routes) {
    ob.sprayerTravel += route_travel(inst, r);
    for (NodeId i : r) {
      const auto ui = static_cast<std::size_t>(i);
      ob.serviceTerm += service[ui];
      if (refill[ui]) ob.refillTerm += inst.params().refillTime;
      if (ui < waiting.size()) ob.waitingPenalty += waiting[ui];
    }
  }
  ob.waitingPenalty *= waitingWeight;
  ob.tankerTravel = tanker_route_travel(inst, tankerRoute);
  ob.total = ob.sprayerTravel + ob.tankerTravel + ob.refillTerm - ob.serviceTerm + ob.waitingPenalty;
  return ob;
}

ObjectiveBreakdown objective(const Instance& inst, const Solution& sol, double waitingWeight) {
  require_partition(inst, sol.routes);
  const auto n = static_cast<std::size_t>(inst.num_nodes() + 1);
  if (sol.service.size() != n || sol.refill.size() != n)
    throw StructuralError("service/refill arrays must be indexed by node id 0..N");
  return objective_unchecked(inst, sol.routes, sol.service, sol.refill, sol.tankerRoute,
                             sol.schedule.waiting, waitingWeight);
}

bool ViolationReport::has(int equation) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.equation == equation; });
}

std::string ViolationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << "Eq. (" << v.equation << ") " << v.what;
    if (v.sprayer >= 0) os << " [sprayer " << v.sprayer << "]";
    if (!v.nodes.empty()) {
      os << " nodes {";
      for (std::size_t i = 0; i < v.nodes.size(); ++i) os << (i ? "," : "") << v.nodes[i];
      os << "}";
    }
    if (v.magnitude != 0.0) os << " magnitude " << v.magnitude;
    os << '\n';
  }
  return os.str();
}

namespace {

// Own recomputation for the checker; deliberately not shared with realize_schedule.
struct CheckState {
  std::vector<double> y, theta, w, m, l, h, v;
};

}  // namespace

ViolationReport check_feasibility(const Instance& inst, const Solution& sol, bool allowWaiting) {
  ViolationReport rep;
  auto add = [&](int eq, std::string what, std::vector<NodeId> nodes, int k, double mag) {
    rep.violations.push_back(Violation{eq, std::move(what), std::move(nodes), k, mag});
  };
  const auto& prm = inst.params();
  const int N = inst.num_nodes();
  const auto n1 = static_cast<std::size_t>(N + 1);

  // Structure: routes, partition, depot placement.
  if (static_cast<int>(sol.routes.size()) != inst.num_sprayers())
    add(5, "number of sprayer routes differs from K", {}, -1,
        std::abs(static_cast<double>(sol.routes.size()) - inst.num_sprayers()));
  std::vector<int> owner(n1, -1);
  std::vector<std::size_t> pos(n1, 0);
  bool structural = false;
  for (std::size_t k = 0; k < sol.routes.size(); ++k) {
    const Route& r = sol.routes[k];
    for (std::size_t p = 0; p < r.size(); ++p) {
      const NodeId i = r[p];
      if (i == kDepot) {
        add(p == 0 ? 5 : 6, "depot appears inside a sprayer route", {i}, static_cast<int>(k), 0);
        structural = true;
        continue;
      }
      if (i < 0 || i > N) {
        add(2, "unknown node id in route", {i}, static_cast<int>(k), 0);
        structural = true;
        continue;
      }
      const auto ui = static_cast<std::size_t>(i);
      if (owner[ui] != -1) {
        add(2, "node visited more than once", {i}, static_cast<int>(k), 0);
        structural = true;
        continue;
      }
      owner[ui] = static_cast<int>(k);
      pos[ui] = p;
    }
  }
  for (NodeId i = 1; i <= N; ++i)
    if (owner[static_cast<std::size_t>(i)] == -1) {
      add(2, "node not visited by any sprayer", {i}, -1, 0);
      structural = true;
    }
  if (sol.service.size() != n1 || sol.refill.size() != n1) {
    add(2, "service/refill arrays not indexed by node id", {}, -1, 0);
    return rep;
  }
  if (structural) return rep;

  // Tanker route visits exactly the refill nodes, once each.
  std::vector<int> tankerVisits(n1, 0);
  for (NodeId j : sol.tankerRoute) {
    if (j < 1 || j > N) {
      add(7, "tanker visits a non-field node", {j}, -1, 0);
      continue;
    }
    ++tankerVisits[static_cast<std::size_t>(j)];
  }
  for (NodeId i = 1; i <= N; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (tankerVisits[ui] > 1) add(8, "tanker visits node more than once", {i}, -1, tankerVisits[ui]);
    if ((tankerVisits[ui] > 0) != (sol.refill[ui] != 0))
      add(7, "tanker visit does not match refill flag", {i}, owner[ui], 0);
  }

  // Service bounds.
  for (NodeId i = 1; i <= N; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double q = prm.sprayRate * sol.service[ui];
    const FieldNode& nd = inst.node(i);
    if (q > nd.qMax + kFeasTol) add(18, "applied quantity exceeds qMax", {i}, owner[ui], q - nd.qMax);
    if (q < nd.qMin - kFeasTol) add(19, "applied quantity below qMin", {i}, owner[ui], nd.qMin - q);
  }
  if (rep.has(7) || rep.has(8)) return rep;

  // Refills of one sprayer must be served by the tanker in route order;
  // otherwise the sprayer waits forever at the earlier one.
  for (std::size_t t = 0; t < sol.tankerRoute.size(); ++t) {
    const auto uj = static_cast<std::size_t>(sol.tankerRoute[t]);
    for (std::size_t u = t + 1; u < sol.tankerRoute.size(); ++u) {
      const auto uu = static_cast<std::size_t>(sol.tankerRoute[u]);
      if (owner[uu] == owner[uj] && pos[uu] < pos[uj])
        add(16, "tanker visits refill nodes of one sprayer out of route order",
            {sol.tankerRoute[t], sol.tankerRoute[u]}, owner[uj], 0);
    }
  }
  if (rep.has(16)) return rep;

  CheckState st;
  for (auto* v : {&st.y, &st.theta, &st.w, &st.m, &st.l, &st.h, &st.v}) v->assign(n1, 0.0);
  // Walks route k from the depot, using refill starts already fixed, and
  // returns the arrival time at position `upto`.
  auto walk = [&](std::size_t k, std::size_t upto) {
    const Route& r = sol.routes[k];
    double clock = inst.travel(kDepot, r.front());
    for (std::size_t p = 0;; ++p) {
      const auto ui = static_cast<std::size_t>(r[p]);
      st.y[ui] = clock;
      if (p == upto) return clock;
      double depart = clock + sol.service[ui];
      if (sol.refill[ui]) {
        st.m[ui] = st.theta[ui] - depart;
        depart = st.theta[ui] + prm.refillTime;
      }
      clock = depart + inst.travel(r[p], r[p + 1]);
    }
  };
  double prevTheta = 0.0;
  NodeId prev = kDepot;
  for (std::size_t t = 0; t < sol.tankerRoute.size(); ++t) {
    const NodeId j = sol.tankerRoute[t];
    const auto uj = static_cast<std::size_t>(j);
    const double w = (t == 0) ? inst.travel(kDepot, j) / prm.speedFactor
                              : prevTheta + prm.refillTime + inst.travel(prev, j) / prm.speedFactor;
    const double done = walk(static_cast<std::size_t>(owner[uj]), pos[uj]) + sol.service[uj];
    st.w[uj] = w;
    st.theta[uj] = std::max(w, done);
    st.m[uj] = st.theta[uj] - done;
    prevTheta = st.theta[uj];
    prev = j;
  }
  for (std::size_t k = 0; k < sol.routes.size(); ++k)
    if (!sol.routes[k].empty()) walk(k, sol.routes[k].size() - 1);

  // Waiting, tanks, horizon.
  double tankerLevel = prm.tankerCap;
  for (NodeId j : sol.tankerRoute) {
    const auto uj = static_cast<std::size_t>(j);
    if (st.w[uj] > st.theta[uj] + kFeasTol)
      add(16, "tanker arrives after refill start", {j}, owner[uj], st.w[uj] - st.theta[uj]);
    if (!allowWaiting && st.m[uj] > kFeasTol)
      add(17, "sprayer waits for the tanker", {j}, owner[uj], st.m[uj]);
  }
  for (std::size_t k = 0; k < sol.routes.size(); ++k) {
    const Route& r = sol.routes[k];
    double level = prm.sprayerCap;
    for (std::size_t p = 0; p < r.size(); ++p) {
      const NodeId i = r[p];
      const auto ui = static_cast<std::size_t>(i);
      st.l[ui] = level;
      const double after = level - prm.sprayRate * sol.service[ui];
      if (after < -kFeasTol)
        add(26, "sprayer tank level negative after service", {i}, static_cast<int>(k), -after);
      if (sol.refill[ui]) {
        st.v[ui] = prm.sprayerCap - after;
        level = prm.sprayerCap;
      } else {
        level = after;
      }
      const double done = st.y[ui] + sol.service[ui];
      const double limit =
          prm.horizon - (p + 1 == r.size() ? inst.travel(i, kDepot) : 0.0);
      if (done > limit + kFeasTol)
        add(14, "sprayer workload exceeds tMax", {i}, static_cast<int>(k), done - limit);
    }
  }
  for (NodeId j : sol.tankerRoute) {
    const auto uj = static_cast<std::size_t>(j);
    st.h[uj] = tankerLevel;
    tankerLevel -= st.v[uj];
    if (tankerLevel < -kFeasTol)
      add(24, "tanker tank level negative", {j}, owner[uj], -tankerLevel);
  }

  // Stored schedule, when present, must agree with the recomputation.
  const Schedule& s = sol.schedule;
  if (s.arrival.size() == n1 && s.waiting.size() == n1 && s.sprayerTank.size() == n1) {
    for (NodeId i = 1; i <= N; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (std::abs(s.arrival[ui] - st.y[ui]) > kFeasTol)
        add(10, "stored arrival time inconsistent with route timing", {i}, owner[ui],
            std::abs(s.arrival[ui] - st.y[ui]));
      if (std::abs(s.waiting[ui] - st.m[ui]) > kFeasTol)
        add(17, "stored waiting time inconsistent with synchronization", {i}, owner[ui],
            std::abs(s.waiting[ui] - st.m[ui]));
      if (std::abs(s.sprayerTank[ui] - st.l[ui]) > kFeasTol)
        add(20, "stored tank level inconsistent with tank flow", {i}, owner[ui],
            std::abs(s.sprayerTank[ui] - st.l[ui]));
      if (sol.refill[ui] && s.refillStart.size() == n1 &&
          std::abs(s.refillStart[ui] - st.theta[ui]) > kFeasTol)
        add(9, "stored refill start inconsistent with service end", {i}, owner[ui],
            std::abs(s.refillStart[ui] - st.theta[ui]));
    }
  }
  return rep;
}

}  // namespace sstrp
