#include "sstrp/phase3.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>

namespace sstrp {

namespace {

using Clock = std::chrono::steady_clock;

bool strictly_better(const EvalResult& a, const EvalResult& b) {
  if (!better(a, b)) return false;
  if (a.hard_infeasible() != b.hard_infeasible()) return true;
  if (std::abs(a.horizonExcess - b.horizonExcess) > kFeasTol) return true;
  return a.penalized() < b.penalized() - 1e-9;
}

// local_search(kappa = 1) repeated while the refill neighborhood keeps moving.
EvalResult polish(const Instance& inst, EvalResult ev, const Phase3Options& opts,
                  std::int64_t& calls) {
  for (int round = 0; round < 20; ++round) {
    LocalSearchResult ls = local_search(inst, ev, 1, opts.lsBudget, opts.eval);
    ++calls;
    if (!ls.improved || !strictly_better(ls.best, ev)) break;
    ev = std::move(ls.best);
  }
  return ev;
}

struct Dfs {
  const Instance& inst;
  const ArcPool& pool;
  const Phase3Options& opts;
  Phase3Result& out;
  Clock::time_point deadline;
  int n = 0;
  int K = 0;
  double serviceCap = 0.0;
  std::vector<std::vector<NodeId>> succ;  // pool successors, nearest first
  std::vector<double> minIn;              // cheapest pool arc into each node
  std::unordered_map<std::uint64_t, double> memo;
  RouteSet cur;
  bool aborted = false;

  Dfs(const Instance& i, const ArcPool& p, const Phase3Options& o, Phase3Result& r,
      Clock::time_point d)
      : inst(i), pool(p), opts(o), out(r), deadline(d) {}

  std::uint64_t key(std::uint64_t mask, NodeId e, int k) const {
    return (mask * static_cast<std::uint64_t>(n + 1) + static_cast<std::uint64_t>(e)) *
               static_cast<std::uint64_t>(K + 1) +
           static_cast<std::uint64_t>(k);
  }

  void evaluate() {
    if (routes_lower_bound(inst, cur) >= out.best.penalized() - 1e-9 &&
        !out.best.hard_infeasible())
      return;
    EvalResult ev = polish(inst, line_search(inst, cur, opts.alpha, opts.eval), opts, out.candidates);
    if (strictly_better(ev, out.best)) {
      out.best = std::move(ev);
      out.improved = true;
    }
  }

  void go(std::uint64_t mask, NodeId e, int k, double travel) {
    if (aborted) return;
    if (++out.nodes > opts.maxNodes || Clock::now() > deadline) {
      aborted = true;
      return;
    }
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    if (e == kDepot && mask == full) {
      evaluate();
      return;
    }
    if (e == kDepot && k == K) return;
    double rest = 0.0;
    for (int j = 1; j <= n; ++j)
      if (!(mask >> (j - 1) & 1U)) rest += minIn[static_cast<std::size_t>(j)];
    if (!out.best.hard_infeasible() &&
        travel + rest - serviceCap >= out.best.penalized() - 1e-9)
      return;
    const std::uint64_t kk = key(mask, e, k);
    const auto it = memo.find(kk);
    if (it != memo.end() && it->second <= travel + 1e-9) return;
    memo[kk] = travel;

    const auto& next = succ[static_cast<std::size_t>(e)];
    for (NodeId j : next) {
      if (j == kDepot || (mask >> (j - 1) & 1U)) continue;
      if (e == kDepot && k > 0 && !cur[static_cast<std::size_t>(k - 1)].empty() &&
          j < cur[static_cast<std::size_t>(k - 1)].front())
        continue;
      cur[static_cast<std::size_t>(k)].push_back(j);
      go(mask | (std::uint64_t{1} << (j - 1)), j, k, travel + inst.travel(e, j));
      cur[static_cast<std::size_t>(k)].pop_back();
      if (aborted) return;
    }
    if (e != kDepot && pool.contains(e, kDepot)) go(mask, kDepot, k + 1, travel + inst.travel(e, kDepot));
  }
};

}  // namespace

double routes_lower_bound(const Instance& inst, const RouteSet& routes) {
  const InstanceParams& prm = inst.params();
  double lb = 0.0;
  for (const Route& r : routes) {
    if (r.empty()) continue;
    const double travel = route_travel(inst, r);
    double lo = 0.0;
    double hi = 0.0;
    for (NodeId i : r) {
      lo += inst.node(i).qMin;
      hi += inst.max_service(i);
    }
    const auto rmin = static_cast<std::size_t>(
        std::max(0.0, std::ceil(lo / prm.sprayerCap - 1e-9) - 1.0));
    const std::size_t rmax = std::max(rmin, r.size() - 1);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t q = rmin; q <= rmax; ++q) {
      const double refills = prm.refillTime * static_cast<double>(q);
      const double ub =
          std::min({hi, static_cast<double>(q + 1) * prm.sprayerCap / prm.sprayRate,
                    std::max(0.0, prm.horizon - travel - refills)});
      best = std::min(best, travel + refills - ub);
    }
    lb += best;
  }
  return lb;
}

Phase3Result phase3_improve(const Instance& inst, const ArcPool& pool, const EvalResult& incumbent,
                            const Phase3Options& opts) {
  opts.alpha.validate();
  const auto started = Clock::now();
  Phase3Result out;
  out.best = incumbent;
  const int n = inst.num_nodes();

  {
    EvalResult ev = polish(inst, incumbent, opts, out.candidates);
    if (strictly_better(ev, out.best)) {
      out.best = std::move(ev);
      out.improved = true;
    }
  }

  ArcPool effective = pool;
  effective.add(incumbent.solution.routes);
  bool exhaustive = false;
  if (n <= 62) {
    Dfs dfs(inst, effective, opts, out,
            started + std::chrono::duration_cast<Clock::duration>(
                          std::chrono::duration<double>(opts.seconds)));
    dfs.n = n;
    dfs.K = inst.num_sprayers();
    dfs.succ.assign(static_cast<std::size_t>(n + 1), {});
    dfs.minIn.assign(static_cast<std::size_t>(n + 1), std::numeric_limits<double>::infinity());
    for (const auto& [a, b] : effective.arcs()) {
      dfs.succ[static_cast<std::size_t>(a)].push_back(b);
      dfs.minIn[static_cast<std::size_t>(b)] =
          std::min(dfs.minIn[static_cast<std::size_t>(b)], inst.travel(a, b));
    }
    for (auto& s : dfs.succ) {
      const NodeId from = static_cast<NodeId>(&s - dfs.succ.data());
      std::stable_sort(s.begin(), s.end(), [&](NodeId x, NodeId y) {
        return inst.travel(from, x) < inst.travel(from, y);
      });
    }
    for (const FieldNode& f : inst.nodes()) dfs.serviceCap += inst.max_service(f.id);
    bool coverable = true;
    for (int j = 1; j <= n; ++j) coverable = coverable && std::isfinite(dfs.minIn[static_cast<std::size_t>(j)]);
    if (coverable) {
      dfs.cur.assign(static_cast<std::size_t>(dfs.K), {});
      dfs.go(0, kDepot, 0, 0.0);
      exhaustive = !dfs.aborted;
    } else {
      exhaustive = true;
    }
  }
  out.exhaustive = exhaustive;

  const double left = opts.seconds - std::chrono::duration<double>(Clock::now() - started).count();
  if (!exhaustive && left > 0.0) {
    AlnsConfig cfg;
    cfg.maxIter = opts.fallbackIters < 0 ? 50 * std::int64_t{n} : opts.fallbackIters;
    cfg.seed = opts.seed;
    cfg.localSearch = LsStrategy::Kappa1;
    cfg.lsBudget = opts.lsBudget;
    cfg.alpha = opts.alpha;
    cfg.eval = opts.eval;
    cfg.timeLimit = left;
    cfg.restrictTo = &effective;
    cfg.recordTrace = false;
    AlnsResult ar = run_alns(inst, out.best, cfg);
    out.usedFallback = true;
    if (strictly_better(ar.best, out.best)) {
      out.best = std::move(ar.best);
      out.improved = true;
    }
  }
  return out;
}

}  // namespace sstrp
