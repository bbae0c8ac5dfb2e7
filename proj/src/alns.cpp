#include "sstrp/alns.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "sstrp/objective.hpp"

namespace sstrp {

namespace {

constexpr double kImproveEps = 1e-9;

NodeId prev_of(const Route& r, std::size_t q) { return q == 0 ? kDepot : r[q - 1]; }
NodeId next_of(const Route& r, std::size_t q) { return q + 1 == r.size() ? kDepot : r[q + 1]; }

std::size_t removal_count(std::size_t n, double frac) {
  const auto p = static_cast<std::size_t>(std::ceil(frac * static_cast<double>(n) - 1e-12));
  return std::clamp<std::size_t>(p, 1, std::max<std::size_t>(n, 1));
}

void push_unique(std::vector<NodeId>& out, std::vector<char>& seen, NodeId i) {
  if (seen[static_cast<std::size_t>(i)]) return;
  seen[static_cast<std::size_t>(i)] = 1;
  out.push_back(i);
}

std::vector<char> seen_mask(const Solution& sol) {
  std::size_t n = 1;
  for (const Route& r : sol.routes)
    for (NodeId i : r) n = std::max(n, static_cast<std::size_t>(i) + 1);
  return std::vector<char>(n, 0);
}

bool is_refill(const Solution& sol, NodeId i) {
  const auto u = static_cast<std::size_t>(i);
  return u < sol.refill.size() && sol.refill[u];
}

std::vector<NodeId> refill_nodes(const Solution& sol) {
  std::vector<NodeId> out;
  for (const Route& r : sol.routes)
    for (NodeId i : r)
      if (is_refill(sol, i)) out.push_back(i);
  return out;
}

bool strictly_better(const EvalResult& a, const EvalResult& b) {
  if (!better(a, b)) return false;
  if (a.hard_infeasible() != b.hard_infeasible()) return true;
  if (std::abs(a.horizonExcess - b.horizonExcess) > kFeasTol) return true;
  return a.penalized() < b.penalized() - kImproveEps;
}

bool insertion_allowed(const ArcPool* pool, const Route& r, std::size_t p, NodeId i) {
  if (pool == nullptr) return true;
  const NodeId a = p == 0 ? kDepot : r[p - 1];
  const NodeId b = p == r.size() ? kDepot : r[p];
  return pool->contains(a, i) && pool->contains(i, b);
}

struct Candidate {
  double best = std::numeric_limits<double>::infinity();
  double second = std::numeric_limits<double>::infinity();
  EvalSummary bestSummary;
  bool any = false;
  std::size_t route = 0;
  std::size_t pos = 0;
};

Candidate scan_positions(const Instance& inst, RouteSet& routes, NodeId i, const AlphaConfig& alpha,
                         const EvalOptions& opts, const ArcPool* pool) {
  Candidate c;
  bool emptyTried = false;
  for (std::size_t k = 0; k < routes.size(); ++k) {
    if (routes[k].empty()) {
      if (emptyTried) continue;
      emptyTried = true;
    }
    for (std::size_t p = 0; p <= routes[k].size(); ++p) {
      if (!insertion_allowed(pool, routes[k], p, i)) continue;
      routes[k].insert(routes[k].begin() + static_cast<std::ptrdiff_t>(p), i);
      const EvalSummary s = quick_line_search(inst, routes, alpha, opts);
      routes[k].erase(routes[k].begin() + static_cast<std::ptrdiff_t>(p));
      const double v = rank_value(s);
      if (!c.any || better(s, c.bestSummary)) {
        if (c.any) c.second = std::min(c.second, c.best);
        c.best = v;
        c.bestSummary = s;
        c.route = k;
        c.pos = p;
        c.any = true;
      } else {
        c.second = std::min(c.second, v);
      }
    }
  }
  return c;
}

double regret_of(const Candidate& c) {
  const double inf = std::numeric_limits<double>::infinity();
  if (c.second == inf) return c.best == inf ? 0.0 : inf;
  return c.second - c.best;
}

}  // namespace

void ArcPool::add(const RouteSet& routes) {
  for (const Route& r : routes) {
    if (r.empty()) continue;
    NodeId prev = kDepot;
    for (NodeId i : r) {
      arcs_.insert({prev, i});
      prev = i;
    }
    arcs_.insert({prev, kDepot});
  }
}

OperatorStats::OperatorStats() {
  chi.fill(1.0);
  weight.fill(1.0 / kNumDestroy);
  uses.fill(0);
  newBest.fill(0);
}

void AlnsConfig::validate() const {
  if (segmentLength <= 0) throw InputError("segmentLength must be positive");
  if (!(scores[0] >= scores[1] && scores[1] >= scores[2] && scores[2] >= scores[3] &&
        scores[3] > 0.0))
    throw InputError("scores must be non-increasing and positive");
  if (!(mu > 0.0 && mu < 1.0)) throw InputError("mu must lie in (0,1)");
  if (!(cooling > 0.0 && cooling < 1.0)) throw InputError("cooling rate must lie in (0,1)");
  if (!(tempFactor > 0.0)) throw InputError("tempFactor must be positive");
  if (maxNoImprov <= 0) throw InputError("maxNoImprov must be positive");
  if (!(0.0 <= randomFracLo && randomFracLo <= randomFracHi && randomFracHi <= 1.0) ||
      !(0.0 <= longestFracLo && longestFracLo <= longestFracHi && longestFracHi <= 1.0))
    throw InputError("removal fractions must satisfy 0 <= lo <= hi <= 1");
  if (kappaDestroy < 0) throw InputError("kappaDestroy must be non-negative");
  alpha.validate();
}

std::vector<NodeId> remove_random(const Solution& sol, std::size_t p, Rng& rng) {
  std::vector<NodeId> pool;
  for (const Route& r : sol.routes) pool.insert(pool.end(), r.begin(), r.end());
  std::sort(pool.begin(), pool.end());
  std::vector<NodeId> out;
  while (out.size() < p && !pool.empty()) {
    const std::size_t q = rng.index(pool.size());
    out.push_back(pool[q]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(q));
  }
  return out;
}

std::vector<NodeId> remove_route(const Solution& sol, std::size_t k) {
  if (k >= sol.routes.size()) throw InputError("remove_route: no such sprayer");
  std::vector<NodeId> out = sol.routes[k];
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> position_costs(const Instance& inst, const Solution& sol) {
  std::vector<double> pi(static_cast<std::size_t>(inst.num_nodes() + 1), 0.0);
  for (const Route& r : sol.routes)
    for (std::size_t q = 0; q < r.size(); ++q) {
      const auto u = static_cast<std::size_t>(r[q]);
      const double s = u < sol.service.size() ? sol.service[u] : 0.0;
      pi[u] = inst.travel(prev_of(r, q), r[q]) + inst.travel(r[q], next_of(r, q)) - s;
    }
  return pi;
}

namespace {

std::vector<NodeId> top_by(const Instance& inst, const Solution& sol,
                           const std::vector<double>& score, std::size_t p) {
  std::vector<NodeId> nodes;
  for (const Route& r : sol.routes) nodes.insert(nodes.end(), r.begin(), r.end());
  std::sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) {
    const double sa = score[static_cast<std::size_t>(a)];
    const double sb = score[static_cast<std::size_t>(b)];
    return sa != sb ? sa > sb : a < b;
  });
  (void)inst;
  if (nodes.size() > p) nodes.resize(p);
  return nodes;
}

}  // namespace

std::vector<NodeId> remove_longest_distance_service(const Instance& inst, const Solution& sol,
                                                    std::size_t p) {
  return top_by(inst, sol, position_costs(inst, sol), p);
}

std::vector<NodeId> remove_worst_distance(const Instance& inst, const Solution& sol,
                                          std::size_t p) {
  RouteSet routes = sol.routes;
  std::vector<NodeId> out;
  while (out.size() < p) {
    double worst = -1.0;
    std::size_t wk = 0;
    std::size_t wq = 0;
    bool found = false;
    for (std::size_t k = 0; k < routes.size(); ++k)
      for (std::size_t q = 0; q < routes[k].size(); ++q) {
        const Route& r = routes[k];
        const double saving = inst.travel(prev_of(r, q), r[q]) + inst.travel(r[q], next_of(r, q));
        if (!found || saving > worst + 1e-12 ||
            (std::abs(saving - worst) <= 1e-12 && r[q] < routes[wk][wq])) {
          worst = saving;
          wk = k;
          wq = q;
          found = true;
        }
      }
    if (!found) break;
    out.push_back(routes[wk][wq]);
    routes[wk].erase(routes[wk].begin() + static_cast<std::ptrdiff_t>(wq));
  }
  return out;
}

std::vector<NodeId> remove_historical(const Instance& inst, const Solution& sol,
                                      const std::vector<double>& bestPositionCost, std::size_t p) {
  const std::vector<double> pi = position_costs(inst, sol);
  std::vector<double> excess(pi.size(), 0.0);
  for (std::size_t u = 1; u < pi.size(); ++u) {
    const double ref = u < bestPositionCost.size() && std::isfinite(bestPositionCost[u])
                           ? bestPositionCost[u]
                           : pi[u];
    excess[u] = pi[u] - ref;
  }
  return top_by(inst, sol, excess, p);
}

std::vector<NodeId> remove_zone(const Instance& inst, const Solution& sol, Point center,
                                double radius) {
  std::vector<NodeId> out;
  for (const Route& r : sol.routes)
    for (NodeId i : r) {
      const Point& q = inst.position(i);
      if (std::hypot(q.x - center.x, q.y - center.y) <= radius + 1e-12) out.push_back(i);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> remove_refills(const Solution& sol) {
  std::vector<NodeId> out = refill_nodes(sol);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> remove_refill_neighbors(const Solution& sol, int kappa) {
  std::vector<NodeId> out;
  std::vector<char> seen = seen_mask(sol);
  for (const Route& r : sol.routes) {
    const auto n = static_cast<std::ptrdiff_t>(r.size());
    for (std::ptrdiff_t q = 0; q < n; ++q) {
      if (!is_refill(sol, r[static_cast<std::size_t>(q)])) continue;
      for (std::ptrdiff_t d = std::max<std::ptrdiff_t>(0, q - kappa);
           d <= std::min<std::ptrdiff_t>(n - 1, q + kappa); ++d)
        push_unique(out, seen, r[static_cast<std::size_t>(d)]);
    }
  }
  return out;
}

std::vector<NodeId> remove_subtour_prior(const Solution& sol, const std::vector<NodeId>& picked) {
  std::vector<NodeId> out;
  std::vector<char> seen = seen_mask(sol);
  for (NodeId j : picked)
    for (const Route& r : sol.routes) {
      const auto it = std::find(r.begin(), r.end(), j);
      if (it == r.end()) continue;
      auto start = it;
      while (start != r.begin() && !is_refill(sol, *(start - 1))) --start;
      for (auto p = start; p != it + 1; ++p) push_unique(out, seen, *p);
    }
  return out;
}

std::vector<NodeId> remove_subtour_following(const Solution& sol,
                                             const std::vector<NodeId>& picked) {
  std::vector<NodeId> out;
  std::vector<char> seen = seen_mask(sol);
  for (NodeId j : picked)
    for (const Route& r : sol.routes) {
      const auto it = std::find(r.begin(), r.end(), j);
      if (it == r.end()) continue;
      push_unique(out, seen, j);
      for (auto p = it + 1; p != r.end() && !is_refill(sol, *p); ++p) push_unique(out, seen, *p);
    }
  return out;
}

RouteSet without(const RouteSet& routes, const std::vector<NodeId>& removed) {
  RouteSet out = routes;
  for (Route& r : out)
    r.erase(std::remove_if(r.begin(), r.end(),
                           [&](NodeId i) {
                             return std::find(removed.begin(), removed.end(), i) != removed.end();
                           }),
            r.end());
  return out;
}

Destroyed destroy(int op, const Instance& inst, const Solution& sol, Rng& rng,
                  const AlnsConfig& cfg, const std::vector<double>& bestPositionCost) {
  if (op < 1 || op > kNumDestroy) throw InputError("destroy operator id must be in 1..11");
  const auto n = static_cast<std::size_t>(inst.num_nodes());
  std::vector<NodeId> removed;
  switch (static_cast<DestroyOp>(op)) {
    case DestroyOp::Random:
      break;
    case DestroyOp::Route: {
      std::vector<std::size_t> busy;
      for (std::size_t k = 0; k < sol.routes.size(); ++k)
        if (!sol.routes[k].empty()) busy.push_back(k);
      if (!busy.empty()) removed = remove_route(sol, busy[rng.index(busy.size())]);
      break;
    }
    case DestroyOp::LongestDistanceService:
      removed = remove_longest_distance_service(
          inst, sol, removal_count(n, rng.uniform(cfg.longestFracLo, cfg.longestFracHi)));
      break;
    case DestroyOp::WorstDistance:
      removed = remove_worst_distance(
          inst, sol, removal_count(n, rng.uniform(cfg.randomFracLo, cfg.randomFracHi)));
      break;
    case DestroyOp::Historical:
      removed = remove_historical(
          inst, sol, bestPositionCost,
          removal_count(n, rng.uniform(cfg.randomFracLo, cfg.randomFracHi)));
      break;
    case DestroyOp::Zone: {
      Point lo = inst.depot();
      Point hi = inst.depot();
      for (const FieldNode& f : inst.nodes()) {
        lo.x = std::min(lo.x, f.pos.x);
        lo.y = std::min(lo.y, f.pos.y);
        hi.x = std::max(hi.x, f.pos.x);
        hi.y = std::max(hi.y, f.pos.y);
      }
      const Point c{rng.uniform(lo.x, hi.x), rng.uniform(lo.y, hi.y)};
      removed = remove_zone(inst, sol, c, inst.params().zoneRadius);
      break;
    }
    case DestroyOp::RefillPositions:
      removed = remove_refills(sol);
      break;
    case DestroyOp::RefillNeighbors:
      removed = remove_refill_neighbors(sol, 1);
      break;
    case DestroyOp::KappaNeighbors:
      removed = remove_refill_neighbors(sol, cfg.kappaDestroy);
      break;
    case DestroyOp::SubtourPrior:
    case DestroyOp::SubtourFollowing: {
      std::vector<NodeId> refills = refill_nodes(sol);
      std::sort(refills.begin(), refills.end());
      const std::size_t take = std::max<std::size_t>(1, refills.size() / 2);
      std::vector<NodeId> picked;
      while (picked.size() < take && !refills.empty()) {
        const std::size_t q = rng.index(refills.size());
        picked.push_back(refills[q]);
        refills.erase(refills.begin() + static_cast<std::ptrdiff_t>(q));
      }
      removed = op == static_cast<int>(DestroyOp::SubtourPrior)
                    ? remove_subtour_prior(sol, picked)
                    : remove_subtour_following(sol, picked);
      break;
    }
  }
  int used = op;
  if (removed.empty()) {
    removed = remove_random(sol, removal_count(n, rng.uniform(cfg.randomFracLo, cfg.randomFracHi)),
                            rng);
    used = static_cast<int>(DestroyOp::Random);
  }
  return Destroyed{without(sol.routes, removed), removed, used};
}

RepairResult repair(RepairOp op, const Instance& inst, RouteSet partial,
                    const std::vector<NodeId>& removed, const AlnsConfig& cfg) {
  std::vector<NodeId> left = removed;
  std::sort(left.begin(), left.end());
  RepairResult out;
  while (!left.empty()) {
    std::size_t pick = 0;
    Candidate chosen;
    bool have = false;
    double chosenRegret = 0.0;
    for (std::size_t q = 0; q < left.size(); ++q) {
      Candidate c = scan_positions(inst, partial, left[q], cfg.alpha, cfg.eval, cfg.restrictTo);
      if (!c.any) {
        out.ok = false;
        out.eval = line_search_partial(inst, partial, cfg.alpha, cfg.eval);
        return out;
      }
      bool take = !have;
      if (have) {
        if (op == RepairOp::Greedy) {
          take = better(c.bestSummary, chosen.bestSummary);
        } else {
          const double rg = regret_of(c);
          take = rg > chosenRegret ||
                 (rg == chosenRegret && better(c.bestSummary, chosen.bestSummary));
        }
      }
      if (take) {
        chosen = c;
        chosenRegret = regret_of(c);
        pick = q;
        have = true;
      }
    }
    Route& r = partial[chosen.route];
    r.insert(r.begin() + static_cast<std::ptrdiff_t>(chosen.pos), left[pick]);
    left.erase(left.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  out.eval = line_search_partial(inst, partial, cfg.alpha, cfg.eval);
  return out;
}

bool accept(double fNew, double fCurr, double temperature, Rng& rng) {
  if (!(temperature > 0.0)) throw InputError("temperature must be positive");
  if (fNew < fCurr) return true;
  return rng.uniform() < std::exp(-(fNew - fCurr) / temperature);
}

OperatorStats update_weights(const OperatorStats& stats,
                             const std::array<double, kNumDestroy>& segmentScores, double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw InputError("mu must lie in (0,1)");
  OperatorStats out = stats;
  for (int d = 0; d < kNumDestroy; ++d)
    if (segmentScores[static_cast<std::size_t>(d)] > 0.0)
      out.chi[static_cast<std::size_t>(d)] =
          mu * stats.chi[static_cast<std::size_t>(d)] +
          (1.0 - mu) * segmentScores[static_cast<std::size_t>(d)];
  const double total = std::accumulate(out.chi.begin(), out.chi.end(), 0.0);
  for (std::size_t d = 0; d < out.chi.size(); ++d) out.weight[d] = out.chi[d] / total;
  return out;
}

int strategy_kappa(LsStrategy s, std::int64_t iter, std::int64_t maxIter) {
  switch (s) {
    case LsStrategy::None:
      return -1;
    case LsStrategy::Kappa0:
      return 0;
    case LsStrategy::Kappa1:
      return 1;
    case LsStrategy::Hybrid:
      if (3 * iter < maxIter) return -1;
      if (3 * iter < 2 * maxIter) return 0;
      return 1;
  }
  return -1;
}

AlnsResult run_alns(const Instance& inst, const EvalResult& initial, const AlnsConfig& cfg) {
  cfg.validate();
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  const std::int64_t maxIter = cfg.maxIter < 0 ? 200 * std::int64_t{inst.num_nodes()} : cfg.maxIter;

  AlnsResult res;
  Rng rng(cfg.seed);
  EvalResult best = initial;
  if (maxIter > 0) {
    const int kappa = strategy_kappa(cfg.localSearch, 0, maxIter);
    if (kappa >= 0 && !best.hard_infeasible()) {
      LocalSearchResult ls = local_search(inst, best, kappa, cfg.lsBudget, cfg.eval);
      ++res.localSearchCalls;
      if (ls.improved) best = ls.best;
    }
  }
  EvalResult current = best;
  EvalResult bestFeasible = best;
  bool haveFeasible = best.solution.feasible() && !best.hard_infeasible();
  res.pool.add(best.solution.routes);

  const double f0 = best.penalized();
  res.tem0 = f0 == 0.0 ? cfg.tempFactor : cfg.tempFactor * std::abs(f0);

  std::vector<double> bestPositionCost(static_cast<std::size_t>(inst.num_nodes() + 1),
                                       std::numeric_limits<double>::infinity());
  std::array<double, kNumDestroy> segScores{};
  std::int64_t noImprov = 0;

  for (std::int64_t it = 0; it < maxIter; ++it) {
    if (std::chrono::duration<double>(Clock::now() - started).count() > cfg.timeLimit) break;
    const double tem = res.tem0 * std::pow(cfg.cooling, static_cast<double>(it));

    {
      const std::vector<double> pi = position_costs(inst, current.solution);
      for (std::size_t u = 1; u < pi.size(); ++u)
        bestPositionCost[u] = std::min(bestPositionCost[u], pi[u]);
    }

    double r = rng.uniform();
    int op = kNumDestroy;
    for (int d = 0; d < kNumDestroy; ++d) {
      r -= res.stats.weight[static_cast<std::size_t>(d)];
      if (r < 0.0) {
        op = d + 1;
        break;
      }
    }
    const RepairOp rop = rng.uniform() < 0.5 ? RepairOp::Greedy : RepairOp::Regret;

    Destroyed dd = destroy(op, inst, current.solution, rng, cfg, bestPositionCost);
    RepairResult rr = repair(rop, inst, std::move(dd.partial), dd.removed, cfg);
    const auto opIdx = static_cast<std::size_t>(dd.opUsed - 1);
    ++res.stats.uses[opIdx];

    double score = cfg.scores[3];
    bool accepted = false;
    const bool usable = rr.ok && !rr.eval.hard_infeasible();
    const double fNew = rr.ok ? rank_value(rr.eval) : std::numeric_limits<double>::infinity();
    if (usable) {
      if (strictly_better(rr.eval, best)) {
        EvalResult cand = std::move(rr.eval);
        const int kappa = strategy_kappa(cfg.localSearch, it, maxIter);
        if (kappa >= 0) {
          LocalSearchResult ls = local_search(inst, cand, kappa, cfg.lsBudget, cfg.eval);
          ++res.localSearchCalls;
          if (ls.improved) cand = std::move(ls.best);
        }
        best = cand;
        current = std::move(cand);
        res.pool.add(best.solution.routes);
        ++res.stats.newBest[opIdx];
        score = cfg.scores[0];
        accepted = true;
        noImprov = -1;
      } else if (fNew < current.penalized()) {
        current = std::move(rr.eval);
        score = cfg.scores[1];
        accepted = true;
      } else if (accept(fNew, current.penalized(), tem, rng)) {
        current = std::move(rr.eval);
        score = cfg.scores[2];
        accepted = true;
      }
      const EvalResult& latest = accepted ? current : rr.eval;
      if (accepted && latest.solution.feasible() &&
          (!haveFeasible || strictly_better(latest, bestFeasible))) {
        bestFeasible = latest;
        haveFeasible = true;
      }
    }
    segScores[opIdx] = std::max(segScores[opIdx], score);

    if (++noImprov >= cfg.maxNoImprov) {
      current = best;
      noImprov = 0;
    }
    if ((it + 1) % cfg.segmentLength == 0) {
      res.stats = update_weights(res.stats, segScores, cfg.mu);
      res.segmentHistory.push_back(res.stats);
      segScores.fill(0.0);
    }
    if (cfg.recordTrace)
      res.trace.push_back(TraceRow{it, dd.opUsed, fNew, current.penalized(), best.penalized(), tem,
                                   accepted, usable && rr.eval.solution.feasible()});
    res.iterations = it + 1;
  }

  // Waiting-infeasible incumbents only win when nothing feasible was seen.
  if (!(best.solution.feasible() && !best.hard_infeasible()) && haveFeasible) best = bestFeasible;
  if (best.solution.feasible() && !best.hard_infeasible() &&
      !check_feasibility(inst, best.solution, cfg.eval.allowWaiting).empty())
    best.solution.horizonInfeasible = true;
  res.best = std::move(best);
  return res;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace) {
  os << "iteration,operatorId,fNew,fCurr,fBest,Tem,accepted,feasible\n";
  const auto old = os.precision(9);
  for (const TraceRow& t : trace)
    os << t.iteration << ',' << t.operatorId << ',' << t.fNew << ',' << t.fCurr << ',' << t.fBest
       << ',' << t.temperature << ',' << (t.accepted ? 1 : 0) << ',' << (t.feasible ? 1 : 0)
       << '\n';
  os.precision(old);
}

}  // namespace sstrp
