#include "sstrp/intensify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "sstrp/lp.hpp"

namespace sstrp {

std::vector<NodeId> candidate_set(const Solution& sol, int kappa) {
  if (kappa < 0) throw InputError("kappa must be non-negative");
  std::set<NodeId> c;
  for (const Route& r : sol.routes) {
    const auto len = static_cast<long>(r.size());
    for (long p = 0; p < len; ++p) {
      const auto ui = static_cast<std::size_t>(r[static_cast<std::size_t>(p)]);
      if (ui >= sol.refill.size() || !sol.refill[ui]) continue;
      for (long q = std::max(0L, p - kappa); q <= std::min(len - 1, p + kappa); ++q)
        c.insert(r[static_cast<std::size_t>(q)]);
    }
  }
  return {c.begin(), c.end()};
}

std::vector<std::vector<NodeId>> tanker_merges(const std::vector<std::vector<NodeId>>& perRoute,
                                               std::size_t limit) {
  std::vector<std::vector<NodeId>> out;
  std::vector<std::size_t> cursor(perRoute.size(), 0);
  std::size_t total = 0;
  for (const auto& r : perRoute) total += r.size();
  std::vector<NodeId> cur;
  cur.reserve(total);
  auto rec = [&](auto&& self) -> void {
    if (out.size() >= limit) return;
    if (cur.size() == total) {
      out.push_back(cur);
      return;
    }
    for (std::size_t k = 0; k < perRoute.size(); ++k) {
      if (cursor[k] == perRoute[k].size()) continue;
      cur.push_back(perRoute[k][cursor[k]++]);
      self(self);
      --cursor[k];
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

namespace {

struct Expr {
  double c = 0.0;
  std::vector<double> a;
};

}  // namespace

ServiceOptResult optimize_service_times(const Instance& inst, const RouteSet& routes,
                                        const std::vector<NodeId>& refillSet,
                                        const std::vector<NodeId>& tankerOrder,
                                        const EvalOptions& opts) {
  const auto& prm = inst.params();
  const auto n1 = static_cast<std::size_t>(inst.num_nodes() + 1);
  const auto owner = route_owner(inst, routes);
  std::vector<char> refill(n1, 0);
  for (NodeId j : refillSet) {
    if (j < 1 || j > inst.num_nodes() || owner[static_cast<std::size_t>(j)] < 0)
      throw InputError("refill node " + std::to_string(j) + " is not on any route");
    if (refill[static_cast<std::size_t>(j)])
      throw InputError("refill node " + std::to_string(j) + " listed twice");
    refill[static_cast<std::size_t>(j)] = 1;
  }
  {
    std::vector<NodeId> a = refillSet;
    std::vector<NodeId> b = tankerOrder;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw InputError("tanker order must be a permutation of the refill set");
  }

  ServiceOptResult res;
  std::vector<std::size_t> pos(n1, 0);
  for (const Route& r : routes)
    for (std::size_t p = 0; p < r.size(); ++p) pos[static_cast<std::size_t>(r[p])] = p;
  {
    std::vector<long> lastPos(routes.size(), -1);
    for (NodeId j : tankerOrder) {
      const auto k = static_cast<std::size_t>(owner[static_cast<std::size_t>(j)]);
      if (static_cast<long>(pos[static_cast<std::size_t>(j)]) < lastPos[k]) return res;
      lastPos[k] = static_cast<long>(pos[static_cast<std::size_t>(j)]);
    }
  }

  // Variables: u_i = s_i - lo_i for routed nodes, then m_j for refills when waiting is allowed.
  std::vector<int> var(n1, -1);
  std::vector<int> mvar(n1, -1);
  int nv = 0;
  for (const Route& r : routes)
    for (NodeId i : r) var[static_cast<std::size_t>(i)] = nv++;
  if (opts.allowWaiting)
    for (NodeId j : tankerOrder) mvar[static_cast<std::size_t>(j)] = nv++;
  const auto nvs = static_cast<std::size_t>(nv);

  std::vector<std::vector<double>> A;
  std::vector<double> b;
  auto add_le = [&](const Expr& e, double rhs) {  // e <= rhs
    A.push_back(e.a);
    b.push_back(rhs - e.c);
  };

  std::vector<Expr> theta(n1);
  double qtUse = 0.0;
  std::vector<double> qtRow(nvs, 0.0);
  for (const Route& r : routes) {
    if (r.empty()) continue;
    Expr t{inst.travel(kDepot, r.front()), std::vector<double>(nvs, 0.0)};
    Expr seg{0.0, std::vector<double>(nvs, 0.0)};
    for (std::size_t p = 0; p < r.size(); ++p) {
      const NodeId i = r[p];
      const auto ui = static_cast<std::size_t>(i);
      const double lo = inst.min_service(i);
      const double hi = inst.max_service(i);
      {
        Expr box{0.0, std::vector<double>(nvs, 0.0)};
        box.a[static_cast<std::size_t>(var[ui])] = 1.0;
        add_le(box, hi - lo);
      }
      t.c += lo;
      t.a[static_cast<std::size_t>(var[ui])] += 1.0;
      seg.c += prm.sprayRate * lo;
      seg.a[static_cast<std::size_t>(var[ui])] += prm.sprayRate;
      const bool last = p + 1 == r.size();
      if (refill[ui] || last) {
        add_le(seg, prm.sprayerCap);
        if (refill[ui]) {
          qtUse += seg.c;
          for (std::size_t v = 0; v < nvs; ++v) qtRow[v] += seg.a[v];
        }
        seg = Expr{0.0, std::vector<double>(nvs, 0.0)};
      }
      if (refill[ui]) {
        if (mvar[ui] >= 0) t.a[static_cast<std::size_t>(mvar[ui])] += 1.0;
        theta[ui] = t;
        t.c += prm.refillTime;
      }
      if (last) {
        Expr h = t;
        if (refill[ui]) h.c -= prm.refillTime;
        if (refill[ui] && mvar[ui] >= 0) h.a[static_cast<std::size_t>(mvar[ui])] -= 1.0;
        h.c += inst.travel(i, kDepot);
        add_le(h, prm.horizon);
      } else {
        t.c += inst.travel(i, r[p + 1]);
      }
    }
  }
  if (!tankerOrder.empty()) add_le(Expr{qtUse, qtRow}, prm.tankerCap);
  for (std::size_t q = 0; q < tankerOrder.size(); ++q) {
    const auto uj = static_cast<std::size_t>(tankerOrder[q]);
    Expr e;
    if (q == 0) {
      // t0j/beta - theta_j <= 0
      e.a.assign(nvs, 0.0);
      e.c = inst.tanker_travel(kDepot, tankerOrder[q]);
    } else {
      const auto up = static_cast<std::size_t>(tankerOrder[q - 1]);
      e = theta[up];
      e.c += prm.refillTime + inst.tanker_travel(tankerOrder[q - 1], tankerOrder[q]);
    }
    e.c -= theta[uj].c;
    for (std::size_t v = 0; v < nvs; ++v) e.a[v] -= theta[uj].a[v];
    add_le(e, 0.0);
  }

  std::vector<double> c(nvs, 0.0);
  for (std::size_t v = 0; v < nvs; ++v) c[v] = 1.0;
  for (std::size_t j = 0; j < n1; ++j)
    if (mvar[j] >= 0) c[static_cast<std::size_t>(mvar[j])] = -1e-6;

  const LpResult lp = lp_maximize(A, b, c);
  if (lp.status != LpStatus::Optimal) return res;

  res.service.assign(n1, 0.0);
  for (const Route& r : routes)
    for (NodeId i : r) {
      const auto ui = static_cast<std::size_t>(i);
      res.service[ui] = std::clamp(inst.min_service(i) + lp.x[static_cast<std::size_t>(var[ui])],
                                   inst.min_service(i), inst.max_service(i));
    }
  res.eval = evaluate_decisions(inst, routes, res.service, refill, tankerOrder, opts);
  res.eval.solution.alpha = 1.0;
  res.feasible = !res.eval.hard_infeasible() && !res.eval.solution.waitingInfeasible;
  return res;
}

namespace {

using Clock = std::chrono::steady_clock;

struct RouteChoice {
  double lb = 0.0;  // travel + xi*|R_k| - service upper bound
  double serviceUb = 0.0;
  double minQt = 0.0;  // qMin volume of refill-ended segments
  std::vector<NodeId> refills;
};

bool strictly_better(const EvalResult& a, const EvalResult& b) {
  if (!better(a, b)) return false;
  if (a.hard_infeasible() != b.hard_infeasible()) return true;
  return a.penalized() < b.penalized() - 1e-9 || a.horizonExcess < b.horizonExcess - 1e-9;
}

}  // namespace

LocalSearchResult refill_search(const Instance& inst, const RouteSet& routes,
                                const std::vector<NodeId>& candidates, const SearchBudget& budget,
                                const EvalOptions& opts, double cutoff, const EvalResult* start) {
  const auto& prm = inst.params();
  LocalSearchResult out;
  bool haveBest = start != nullptr;
  if (start) out.best = *start;
  const auto t0 = Clock::now();
  const auto n1 = static_cast<std::size_t>(inst.num_nodes() + 1);

  std::vector<char> cand(n1, 0);
  for (NodeId i : candidates) cand[static_cast<std::size_t>(i)] = 1;

  auto out_of_budget = [&]() {
    if (out.nodes >= budget.maxNodes) return true;
    if ((out.nodes & 63) == 0 &&
        std::chrono::duration<double>(Clock::now() - t0).count() > budget.seconds)
      return true;
    return false;
  };

  // Feasible refill choices per route, by depth-first search over positions.
  const double capTime = prm.sprayerCap / prm.sprayRate;
  std::vector<std::vector<RouteChoice>> choices(routes.size());
  for (std::size_t k = 0; k < routes.size(); ++k) {
    const Route& r = routes[k];
    const double travel = route_travel(inst, r);
    if (r.empty()) {
      choices[k].push_back(RouteChoice{});
      continue;
    }
    double loSum = 0.0;
    for (NodeId i : r) loSum += inst.min_service(i);
    std::vector<NodeId> picked;
    auto dfs = [&](auto&& self, std::size_t p, double segQ, double segHi, double ubSoFar,
                   double qtSoFar) -> void {
      if (out.budgetExhausted) return;
      const NodeId i = r[p];
      segQ += inst.node(i).qMin;
      segHi += inst.max_service(i);
      if (segQ > prm.sprayerCap + kFeasTol) return;
      ++out.nodes;
      if (out_of_budget()) {
        out.budgetExhausted = true;
        return;
      }
      if (p + 1 == r.size()) {
        const double ub =
            std::min(ubSoFar + std::min(segHi, capTime),
                     prm.horizon - travel - prm.refillTime * static_cast<double>(picked.size()));
        if (ub < loSum - kFeasTol) return;
        RouteChoice rc;
        rc.serviceUb = ub;
        rc.lb = travel + prm.refillTime * static_cast<double>(picked.size()) - ub;
        rc.minQt = qtSoFar;
        rc.refills = picked;
        choices[k].push_back(std::move(rc));
        return;
      }
      self(self, p + 1, segQ, segHi, ubSoFar, qtSoFar);
      if (cand[static_cast<std::size_t>(i)]) {
        picked.push_back(i);
        self(self, p + 1, 0.0, 0.0, ubSoFar + std::min(segHi, capTime), qtSoFar + segQ);
        picked.pop_back();
      }
    };
    dfs(dfs, 0, 0.0, 0.0, 0.0, 0.0);
    std::sort(choices[k].begin(), choices[k].end(), [](const RouteChoice& a, const RouteChoice& b) {
      if (a.lb != b.lb) return a.lb < b.lb;
      return a.refills < b.refills;
    });
    if (choices[k].empty()) return out;
  }

  std::vector<double> suffixMin(routes.size() + 1, 0.0);
  for (std::size_t k = routes.size(); k-- > 0;)
    suffixMin[k] = suffixMin[k + 1] + choices[k].front().lb;

  auto threshold = [&]() {
    double thr = cutoff;
    if (haveBest && !out.best.hard_infeasible()) thr = std::min(thr, out.best.penalized());
    return thr;
  };

  // Earliest refill starts at minimum service, ignoring the tanker.
  auto earliest_order = [&](const std::vector<std::vector<NodeId>>& perRoute) {
    std::vector<std::pair<double, NodeId>> st;
    for (std::size_t k = 0; k < routes.size(); ++k) {
      const Route& r = routes[k];
      if (perRoute[k].empty()) continue;
      std::size_t next = 0;
      double clock = inst.travel(kDepot, r.front());
      for (std::size_t p = 0; p < r.size() && next < perRoute[k].size(); ++p) {
        double depart = clock + inst.min_service(r[p]);
        if (r[p] == perRoute[k][next]) {
          st.emplace_back(depart, r[p]);
          ++next;
          depart += prm.refillTime;
        }
        if (p + 1 < r.size()) clock = depart + inst.travel(r[p], r[p + 1]);
      }
    }
    std::sort(st.begin(), st.end());
    std::vector<NodeId> order;
    for (const auto& s : st) order.push_back(s.second);
    return order;
  };

  std::vector<std::size_t> pickIdx(routes.size(), 0);
  auto leaf = [&](double sumLb, double sumQt) {
    if (sumQt > prm.tankerCap + kFeasTol) return;
    std::vector<std::vector<NodeId>> perRoute(routes.size());
    std::vector<NodeId> all;
    double far = 0.0;
    for (std::size_t k = 0; k < routes.size(); ++k) {
      perRoute[k] = choices[k][pickIdx[k]].refills;
      for (NodeId j : perRoute[k]) {
        all.push_back(j);
        far = std::max(far, inst.travel(kDepot, j));
      }
    }
    if (sumLb + 2.0 * far >= threshold() - 1e-9) return;
    std::vector<std::vector<NodeId>> orders;
    if (all.size() <= 7) {
      orders = tanker_merges(perRoute);
    } else {
      orders.push_back(earliest_order(perRoute));
      out.orderApproximated = true;
    }
    for (const auto& order : orders) {
      ++out.nodes;
      if (out_of_budget()) {
        out.budgetExhausted = true;
        return;
      }
      if (sumLb + tanker_route_travel(inst, order) >= threshold() - 1e-9) continue;
      ServiceOptResult so = optimize_service_times(inst, routes, all, order, opts);
      if (!so.feasible) continue;
      if (so.eval.penalized() >= cutoff - 1e-9) continue;
      if (!haveBest || strictly_better(so.eval, out.best)) {
        out.best = std::move(so.eval);
        out.improved = true;
        haveBest = true;
      }
    }
  };

  auto combine = [&](auto&& self, std::size_t k, double sumLb, double sumQt) -> void {
    if (out.budgetExhausted) return;
    if (k == routes.size()) {
      leaf(sumLb, sumQt);
      return;
    }
    for (std::size_t c = 0; c < choices[k].size(); ++c) {
      const double lb = sumLb + choices[k][c].lb;
      if (lb + suffixMin[k + 1] >= threshold() - 1e-9) break;
      pickIdx[k] = c;
      self(self, k + 1, lb, sumQt + choices[k][c].minQt);
      if (out.budgetExhausted) return;
    }
  };
  combine(combine, 0, 0.0, 0.0);
  return out;
}

LocalSearchResult local_search(const Instance& inst, const EvalResult& start, int kappa,
                               const SearchBudget& budget, const EvalOptions& opts,
                               double cutoff) {
  return refill_search(inst, start.solution.routes, candidate_set(start.solution, kappa), budget,
                       opts, cutoff, &start);
}

LocalSearchResult local_search(const Instance& inst, const Solution& start, int kappa,
                               const SearchBudget& budget, const EvalOptions& opts) {
  require_partition(inst, start.routes);
  EvalResult ev = evaluate_decisions(inst, start.routes, start.service, start.refill,
                                     start.tankerRoute, opts);
  ev.solution.alpha = start.alpha;
  return local_search(inst, ev, kappa, budget, opts);
}

}  // namespace sstrp
