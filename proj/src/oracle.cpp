#include "sstrp/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "sstrp/intensify.hpp"

namespace sstrp {

namespace {

using Clock = std::chrono::steady_clock;

void check_caps(const Instance& inst, const OracleCaps& caps) {
  if (inst.num_nodes() > caps.maxNodes)
    throw BudgetRefusal("oracle refuses: " + std::to_string(inst.num_nodes()) +
                        " field nodes exceed the cap of " + std::to_string(caps.maxNodes));
  if (inst.num_sprayers() > caps.maxSprayers)
    throw BudgetRefusal("oracle refuses: " + std::to_string(inst.num_sprayers()) +
                        " sprayers exceed the cap of " + std::to_string(caps.maxSprayers));
}

// Restricted growth strings: canonical partitions of 1..N into at most maxBlocks blocks.
template <class F>
void for_each_partition(int N, int maxBlocks, F&& f) {
  std::vector<int> label(static_cast<std::size_t>(N), 0);
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (i == N) {
      std::vector<std::vector<NodeId>> blocks(static_cast<std::size_t>(used));
      for (int v = 0; v < N; ++v) blocks[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])].push_back(v + 1);
      f(blocks);
      return;
    }
    for (int b = 0; b <= std::min(used, maxBlocks - 1); ++b) {
      label[static_cast<std::size_t>(i)] = b;
      self(self, i + 1, std::max(used, b + 1));
    }
  };
  rec(rec, 0, 0);
}

struct Deadline {
  Clock::time_point end;
  double seconds;
  bool passed() const { return Clock::now() > end; }
  double remaining() const {
    return std::max(0.0, std::chrono::duration<double>(end - Clock::now()).count());
  }
};

}  // namespace

OracleResult exact_solve(const Instance& inst, const OracleCaps& caps, const EvalOptions& opts) {
  check_caps(inst, caps);
  const Deadline dl{Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                       std::chrono::duration<double>(caps.seconds)),
                    caps.seconds};
  const int N = inst.num_nodes();
  const auto K = static_cast<std::size_t>(inst.num_sprayers());

  struct Config {
    double travel;
    RouteSet routes;
  };
  std::vector<Config> configs;
  for_each_partition(N, inst.num_sprayers(), [&](std::vector<std::vector<NodeId>> blocks) {
    RouteSet rs(K);
    auto rec = [&](auto&& self, std::size_t b, double travel) -> void {
      if (b == blocks.size()) {
        configs.push_back(Config{travel, rs});
        return;
      }
      std::vector<NodeId> perm = blocks[b];
      do {
        rs[b] = perm;
        self(self, b + 1, travel + route_travel(inst, perm));
      } while (std::next_permutation(perm.begin(), perm.end()));
      rs[b].clear();
    };
    rec(rec, 0, 0.0);
  });
  std::stable_sort(configs.begin(), configs.end(),
                   [](const Config& a, const Config& b) { return a.travel < b.travel; });

  double hiSum = 0.0;
  for (NodeId i = 1; i <= N; ++i) hiSum += inst.max_service(i);
  std::vector<NodeId> all(static_cast<std::size_t>(N));
  std::iota(all.begin(), all.end(), 1);

  OracleResult res;
  for (const Config& cfg : configs) {
    if (res.feasible && cfg.travel - hiSum >= res.best.penalized() - 1e-9) break;
    if (dl.passed()) throw BudgetRefusal("oracle refuses: time budget exhausted");
    ++res.routeSets;
    SearchBudget budget;
    budget.seconds = dl.remaining();
    budget.maxNodes = std::numeric_limits<std::int64_t>::max();
    const double cutoff =
        res.feasible ? res.best.penalized() : std::numeric_limits<double>::infinity();
    LocalSearchResult rs = refill_search(inst, cfg.routes, all, budget, opts, cutoff, nullptr);
    if (rs.budgetExhausted) throw BudgetRefusal("oracle refuses: time budget exhausted");
    if (rs.improved) {
      res.best = std::move(rs.best);
      res.feasible = true;
    }
  }
  return res;
}

RelaxedResult exact_solve_relaxed(const Instance& inst, const OracleCaps& caps) {
  check_caps(inst, caps);
  const auto& prm = inst.params();
  const auto end = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(caps.seconds));
  const int N = inst.num_nodes();
  const double cap = prm.sprayerCap / prm.sprayRate;
  const double inf = std::numeric_limits<double>::infinity();

  // Best value of a single route over a block, by bitmask.
  std::vector<double> memo(std::size_t{1} << N, std::numeric_limits<double>::quiet_NaN());
  auto block_value = [&](const std::vector<NodeId>& block) {
    std::size_t mask = 0;
    for (NodeId i : block) mask |= std::size_t{1} << static_cast<std::size_t>(i - 1);
    if (!std::isnan(memo[mask])) return memo[mask];
    double best = inf;
    double hi = 0.0;
    double lo = 0.0;
    for (NodeId i : block) {
      hi += inst.max_service(i);
      lo += inst.min_service(i);
    }
    std::vector<NodeId> perm = block;
    const std::size_t n = perm.size();
    do {
      if (Clock::now() > end) throw BudgetRefusal("oracle refuses: time budget exhausted");
      const double travel = route_travel(inst, perm);
      if (travel - hi >= best) continue;
      for (std::size_t sub = 0; sub < (std::size_t{1} << (n - 1)); ++sub) {
        double segQ = 0.0;
        double segHi = 0.0;
        double ub = 0.0;
        int r = 0;
        bool ok = true;
        for (std::size_t p = 0; p < n && ok; ++p) {
          segQ += inst.node(perm[p]).qMin;
          segHi += inst.max_service(perm[p]);
          if (segQ > prm.sprayerCap + kFeasTol) ok = false;
          if (p + 1 == n || (sub >> p & 1U)) {
            ub += std::min(segHi, cap);
            segQ = segHi = 0.0;
            if (p + 1 < n) ++r;
          }
        }
        if (!ok) continue;
        ub = std::min(ub, prm.horizon - travel - prm.refillTime * r);
        if (ub < lo - kFeasTol) continue;
        best = std::min(best, travel + prm.refillTime * r - ub);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    memo[mask] = best;
    return best;
  };

  RelaxedResult res;
  double best = inf;
  for_each_partition(N, inst.num_sprayers(), [&](const std::vector<std::vector<NodeId>>& blocks) {
    double v = 0.0;
    for (const auto& b : blocks) {
      v += block_value(b);
      if (v == inf) return;
    }
    best = std::min(best, v);
  });
  if (best < inf) {
    res.feasible = true;
    res.value = best;
  }
  return res;
}

GridResult grid_service_oracle(const Instance& inst, const RouteSet& routes,
                               const std::vector<NodeId>& refillSet,
                               const std::vector<NodeId>& tankerOrder, double step) {
  if (!(step > 0.0)) throw InputError("grid step must be positive");
  if (refillSet.size() > 3)
    throw BudgetRefusal("grid oracle refuses: more than 3 refill segments");
  const auto& prm = inst.params();
  const auto n1 = static_cast<std::size_t>(inst.num_nodes() + 1);
  const auto owner = route_owner(inst, routes);
  std::vector<char> refill(n1, 0);
  for (NodeId j : refillSet) {
    if (j < 1 || j > inst.num_nodes() || owner[static_cast<std::size_t>(j)] < 0 ||
        refill[static_cast<std::size_t>(j)])
      throw InputError("malformed refill set");
    refill[static_cast<std::size_t>(j)] = 1;
  }
  {
    std::vector<NodeId> a = refillSet;
    std::vector<NodeId> b = tankerOrder;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw InputError("tanker order must be a permutation of the refill set");
  }
  const double cap = prm.sprayerCap / prm.sprayRate;

  // Segments: node position range, bounds on the service sum, inner travel.
  struct Segment {
    std::size_t route = 0, from = 0, to = 0;
    double lo = 0.0, hi = 0.0, inner = 0.0;
  };
  std::vector<Segment> refillSeg(n1);
  std::vector<Segment> lastSeg(routes.size());
  std::vector<bool> hasLast(routes.size(), false);
  std::vector<std::size_t> pos(n1, 0);
  for (std::size_t k = 0; k < routes.size(); ++k) {
    const Route& r = routes[k];
    std::size_t from = 0;
    for (std::size_t p = 0; p < r.size(); ++p) {
      pos[static_cast<std::size_t>(r[p])] = p;
      const bool closes = refill[static_cast<std::size_t>(r[p])] != 0;
      if (closes || p + 1 == r.size()) {
        Segment s{k, from, p, 0.0, 0.0, 0.0};
        for (std::size_t q = from; q <= p; ++q) {
          s.lo += inst.min_service(r[q]);
          s.hi += inst.max_service(r[q]);
          if (q < p) s.inner += inst.travel(r[q], r[q + 1]);
        }
        s.hi = std::min(s.hi, cap);
        if (closes) {
          refillSeg[static_cast<std::size_t>(r[p])] = s;
        } else {
          lastSeg[k] = s;
          hasLast[k] = true;
        }
        from = p + 1;
      }
    }
  }

  GridResult res;
  for (NodeId j : refillSet)
    if (refillSeg[static_cast<std::size_t>(j)].lo > refillSeg[static_cast<std::size_t>(j)].hi + kFeasTol)
      return res;
  for (std::size_t k = 0; k < routes.size(); ++k)
    if (hasLast[k] && lastSeg[k].lo > lastSeg[k].hi + kFeasTol) return res;
  {
    std::vector<long> lastPos(routes.size(), -1);
    for (NodeId j : tankerOrder) {
      const auto k = static_cast<std::size_t>(owner[static_cast<std::size_t>(j)]);
      if (static_cast<long>(pos[static_cast<std::size_t>(j)]) < lastPos[k]) return res;
      lastPos[k] = static_cast<long>(pos[static_cast<std::size_t>(j)]);
    }
  }

  // Arrival time at the start of each route's current segment.
  std::vector<double> segStart(routes.size(), 0.0);
  for (std::size_t k = 0; k < routes.size(); ++k)
    if (!routes[k].empty()) segStart[k] = inst.travel(kDepot, routes[k].front());

  // Minimal time from the start of position p of route k to the depot return,
  // at minimum service, counting refill time for later refills.
  std::vector<std::vector<double>> tailMin(routes.size());
  for (std::size_t k = 0; k < routes.size(); ++k) {
    const Route& r = routes[k];
    tailMin[k].assign(r.size() + 1, 0.0);
    for (std::size_t p = r.size(); p-- > 0;) {
      const NodeId i = r[p];
      double t = inst.min_service(i);
      t += (p + 1 < r.size()) ? inst.travel(i, r[p + 1]) : inst.travel(i, kDepot);
      if (refill[static_cast<std::size_t>(i)] && p + 1 < r.size()) t += prm.refillTime;
      tailMin[k][p] = t + tailMin[k][p + 1];
    }
  }

  double lastUbSum = 0.0;
  for (std::size_t k = 0; k < routes.size(); ++k)
    if (hasLast[k]) lastUbSum += lastSeg[k].hi;
  std::vector<double> remainingUb(tankerOrder.size() + 1, 0.0);
  for (std::size_t q = tankerOrder.size(); q-- > 0;)
    remainingUb[q] = remainingUb[q + 1] + refillSeg[static_cast<std::size_t>(tankerOrder[q])].hi;

  std::vector<double> chosen(n1, 0.0);
  std::vector<double> bestChosen;
  std::vector<double> bestLast;
  double bestTotal = -std::numeric_limits<double>::infinity();

  auto finish = [&](double sum) {
    std::vector<double> last(routes.size(), 0.0);
    double total = sum;
    for (std::size_t k = 0; k < routes.size(); ++k) {
      const Route& r = routes[k];
      if (r.empty()) continue;
      if (!hasLast[k]) continue;
      const Segment& s = lastSeg[k];
      const double avail =
          prm.horizon - segStart[k] - s.inner - inst.travel(r.back(), kDepot);
      const double L = std::min(s.hi, avail);
      if (L < s.lo - kFeasTol) return;
      last[k] = std::max(L, s.lo);
      total += last[k];
    }
    if (total > bestTotal + 1e-12) {
      bestTotal = total;
      bestChosen = chosen;
      bestLast = last;
    }
  };

  auto dfs = [&](auto&& self, std::size_t q, double sum, double prevTheta, double qtUsed) -> void {
    if (sum + remainingUb[q] + lastUbSum <= bestTotal + 1e-12) return;
    if (q == tankerOrder.size()) {
      finish(sum);
      return;
    }
    const NodeId j = tankerOrder[q];
    const auto uj = static_cast<std::size_t>(j);
    const Segment& s = refillSeg[uj];
    const std::size_t k = s.route;
    const Route& r = routes[k];
    const double w = q == 0 ? inst.tanker_travel(kDepot, j)
                            : prevTheta + prm.refillTime +
                                  inst.tanker_travel(tankerOrder[q - 1], j);
    const double savedStart = segStart[k];
    std::vector<double> values;
    const auto count = static_cast<long>(std::floor((s.hi - s.lo) / step + 1e-9));
    for (long c = 0; c <= count; ++c) values.push_back(s.hi - static_cast<double>(c) * step);
    if (values.empty() || values.back() > s.lo + 1e-12) values.push_back(s.lo);
    for (const double S : values) {
      if (sum + S + remainingUb[q + 1] + lastUbSum <= bestTotal + 1e-12) break;
      const double theta = savedStart + s.inner + S;
      if (theta < w - kFeasTol) break;
      const double qt = qtUsed + prm.sprayRate * S;
      if (qt > prm.tankerCap + kFeasTol) continue;
      const std::size_t nextPos = s.to + 1;
      if (nextPos < r.size()) {
        const double leg = inst.travel(j, r[nextPos]);
        if (theta + prm.refillTime + leg + tailMin[k][nextPos] > prm.horizon + kFeasTol) continue;
        segStart[k] = theta + prm.refillTime + leg;
      } else {
        if (theta + inst.travel(j, kDepot) > prm.horizon + kFeasTol) continue;
      }
      chosen[uj] = S;
      self(self, q + 1, sum + S, theta, qt);
      segStart[k] = savedStart;
    }
    chosen[uj] = 0.0;
  };
  dfs(dfs, 0, 0.0, 0.0, 0.0);
  if (bestChosen.empty()) return res;

  // Distribute each segment sum from the minimum upward in route order.
  res.service.assign(n1, 0.0);
  auto fill = [&](const Route& r, std::size_t from, std::size_t to, double S) {
    double extra = S;
    for (std::size_t q = from; q <= to; ++q) {
      res.service[static_cast<std::size_t>(r[q])] = inst.min_service(r[q]);
      extra -= inst.min_service(r[q]);
    }
    for (std::size_t q = from; q <= to && extra > 0.0; ++q) {
      const auto ui = static_cast<std::size_t>(r[q]);
      const double add = std::min(extra, inst.max_service(r[q]) - res.service[ui]);
      res.service[ui] += add;
      extra -= add;
    }
  };
  for (NodeId j : refillSet) {
    const Segment& s = refillSeg[static_cast<std::size_t>(j)];
    fill(routes[s.route], s.from, s.to, bestChosen[static_cast<std::size_t>(j)]);
  }
  for (std::size_t k = 0; k < routes.size(); ++k)
    if (hasLast[k]) fill(routes[k], lastSeg[k].from, lastSeg[k].to, bestLast[k]);

  EvalResult ev = evaluate_decisions(inst, routes, res.service, refill, tankerOrder);
  res.feasible = !ev.hard_infeasible() && !ev.solution.waitingInfeasible;
  res.objective = ev.penalized();
  return res;
}

}  // namespace sstrp
