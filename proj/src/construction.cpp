#include "sstrp/construction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sstrp {

namespace {

double route_return_time(const Instance& inst, const Solution& sol, const Route& r) {
  if (r.empty()) return 0.0;
  const auto ul = static_cast<std::size_t>(r.back());
  return sol.schedule.arrival[ul] + sol.service[ul] + inst.travel(r.back(), kDepot);
}

// Tours are symmetric; report the orientation with the smaller first node.
Route canonical_orientation(Route r) {
  Route rev(r.rbegin(), r.rend());
  return rev < r ? rev : r;
}

}  // namespace

Route tsp_exact(const Instance& inst, const std::vector<NodeId>& subset) {
  const std::size_t n = subset.size();
  if (n == 0) throw InputError("tsp_route needs a non-empty subset");
  if (n > 20) throw InputError("exact tour limited to 20 nodes");
  const std::size_t full = std::size_t{1} << n;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dp(full * n, inf);
  std::vector<int> parent(full * n, -1);
  for (std::size_t i = 0; i < n; ++i) dp[(std::size_t{1} << i) * n + i] = inst.travel(kDepot, subset[i]);
  for (std::size_t mask = 1; mask < full; ++mask) {
    for (std::size_t last = 0; last < n; ++last) {
      const double cur = dp[mask * n + last];
      if (!(mask >> last & 1U) || cur == inf) continue;
      for (std::size_t nx = 0; nx < n; ++nx) {
        if (mask >> nx & 1U) continue;
        const std::size_t nm = mask | (std::size_t{1} << nx);
        const double cand = cur + inst.travel(subset[last], subset[nx]);
        if (cand < dp[nm * n + nx] - 1e-12) {
          dp[nm * n + nx] = cand;
          parent[nm * n + nx] = static_cast<int>(last);
        }
      }
    }
  }
  const std::size_t all = full - 1;
  std::size_t last = 0;
  double best = inf;
  for (std::size_t i = 0; i < n; ++i) {
    const double cand = dp[all * n + i] + inst.travel(subset[i], kDepot);
    if (cand < best - 1e-12) {
      best = cand;
      last = i;
    }
  }
  Route r;
  std::size_t mask = all;
  int cur = static_cast<int>(last);
  while (cur >= 0) {
    r.push_back(subset[static_cast<std::size_t>(cur)]);
    const int p = parent[mask * n + static_cast<std::size_t>(cur)];
    mask &= ~(std::size_t{1} << static_cast<std::size_t>(cur));
    cur = p;
  }
  return canonical_orientation(std::move(r));
}

Route tsp_two_opt(const Instance& inst, const std::vector<NodeId>& subset) {
  if (subset.empty()) throw InputError("tsp_route needs a non-empty subset");
  std::vector<NodeId> left = subset;
  Route r;
  NodeId cur = kDepot;
  while (!left.empty()) {
    std::size_t pick = 0;
    for (std::size_t i = 1; i < left.size(); ++i)
      if (inst.travel(cur, left[i]) < inst.travel(cur, left[pick]) - 1e-12) pick = i;
    cur = left[pick];
    r.push_back(cur);
    left.erase(left.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  // 2-opt over the closed tour with the depot fixed at both ends.
  auto at = [&](std::size_t p) { return p == 0 || p == r.size() + 1 ? kDepot : r[p - 1]; };
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 1 < r.size() + 1 && !improved; ++i) {
      for (std::size_t j = i + 2; j <= r.size(); ++j) {
        const double delta = inst.travel(at(i), at(j)) + inst.travel(at(i + 1), at(j + 1)) -
                             inst.travel(at(i), at(i + 1)) - inst.travel(at(j), at(j + 1));
        if (delta < -1e-10) {
          std::reverse(r.begin() + static_cast<std::ptrdiff_t>(i),
                       r.begin() + static_cast<std::ptrdiff_t>(j));
          improved = true;
          break;
        }
      }
    }
  }
  return canonical_orientation(std::move(r));
}

Route tsp_route(const Instance& inst, const std::vector<NodeId>& subset) {
  if (subset.empty()) throw InputError("tsp_route needs a non-empty subset");
  for (NodeId i : subset)
    if (i < 1 || i > inst.num_nodes()) throw InputError("tsp_route: unknown node id");
  return subset.size() <= 13 ? tsp_exact(inst, subset) : tsp_two_opt(inst, subset);
}

EvalResult greedy_construct(const Instance& inst, const AlphaConfig& cfg, const EvalOptions& opts) {
  cfg.validate();
  const int N = inst.num_nodes();
  RouteSet routes(static_cast<std::size_t>(inst.num_sprayers()));
  std::vector<char> routed(static_cast<std::size_t>(N + 1), 0);
  for (int step = 0; step < N; ++step) {
    EvalSummary best;
    bool have = false;
    NodeId bestNode = 0;
    std::size_t bestRoute = 0;
    std::size_t bestPos = 0;
    for (NodeId i = 1; i <= N; ++i) {
      if (routed[static_cast<std::size_t>(i)]) continue;
      for (std::size_t k = 0; k < routes.size(); ++k) {
        // Empty sprayers are interchangeable; try only the first.
        if (routes[k].empty() &&
            std::any_of(routes.begin(), routes.begin() + static_cast<std::ptrdiff_t>(k),
                        [](const Route& r) { return r.empty(); }))
          continue;
        for (std::size_t p = 0; p <= routes[k].size(); ++p) {
          routes[k].insert(routes[k].begin() + static_cast<std::ptrdiff_t>(p), i);
          const EvalSummary s = quick_line_search(inst, routes, cfg, opts);
          routes[k].erase(routes[k].begin() + static_cast<std::ptrdiff_t>(p));
          if (!have || better(s, best)) {
            best = s;
            have = true;
            bestNode = i;
            bestRoute = k;
            bestPos = p;
          }
        }
      }
    }
    routes[bestRoute].insert(routes[bestRoute].begin() + static_cast<std::ptrdiff_t>(bestPos),
                             bestNode);
    routed[static_cast<std::size_t>(bestNode)] = 1;
  }
  return line_search(inst, routes, cfg, opts);
}

EvalResult cluster_construct(const Instance& inst, const AlphaConfig& cfg, const EvalOptions& opts) {
  cfg.validate();
  const int N = inst.num_nodes();
  const auto K = static_cast<std::size_t>(std::min(inst.num_sprayers(), N));

  // Max-min seeding: the node farthest from the depot, then repeatedly the
  // node farthest from every chosen seed.
  std::vector<NodeId> seeds;
  {
    NodeId first = 1;
    for (NodeId i = 2; i <= N; ++i)
      if (inst.travel(kDepot, i) > inst.travel(kDepot, first) + 1e-12) first = i;
    seeds.push_back(first);
    while (seeds.size() < K) {
      NodeId pick = 0;
      double far = -1.0;
      for (NodeId i = 1; i <= N; ++i) {
        double dmin = std::numeric_limits<double>::infinity();
        for (NodeId s : seeds) dmin = std::min(dmin, inst.travel(i, s));
        if (dmin > far + 1e-12) {
          far = dmin;
          pick = i;
        }
      }
      seeds.push_back(pick);
    }
  }
  std::vector<Point> centroid;
  for (NodeId s : seeds) centroid.push_back(inst.position(s));
  std::vector<std::size_t> assign(static_cast<std::size_t>(N + 1), 0);
  auto dist2 = [](const Point& a, const Point& b) {
    return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
  };
  for (int iter = 0; iter < 50; ++iter) {
    bool changed = false;
    for (NodeId i = 1; i <= N; ++i) {
      std::size_t bestC = 0;
      for (std::size_t c = 1; c < K; ++c)
        if (dist2(inst.position(i), centroid[c]) <
            dist2(inst.position(i), centroid[bestC]) - 1e-12)
          bestC = c;
      if (iter == 0 || assign[static_cast<std::size_t>(i)] != bestC) changed = true;
      assign[static_cast<std::size_t>(i)] = bestC;
    }
    if (!changed) break;
    for (std::size_t c = 0; c < K; ++c) {
      Point sum;
      int count = 0;
      for (NodeId i = 1; i <= N; ++i)
        if (assign[static_cast<std::size_t>(i)] == c) {
          sum.x += inst.position(i).x;
          sum.y += inst.position(i).y;
          ++count;
        }
      if (count > 0) centroid[c] = Point{sum.x / count, sum.y / count};
    }
  }

  std::vector<std::vector<NodeId>> members(static_cast<std::size_t>(inst.num_sprayers()));
  for (NodeId i = 1; i <= N; ++i) members[assign[static_cast<std::size_t>(i)]].push_back(i);
  auto build = [&]() {
    RouteSet routes(members.size());
    for (std::size_t k = 0; k < members.size(); ++k)
      if (!members[k].empty()) routes[k] = tsp_route(inst, members[k]);
    return routes;
  };
  EvalResult res = line_search(inst, build(), cfg, opts);

  for (int move = 0; move < N && res.horizonExcess > kFeasTol; ++move) {
    std::size_t busy = 0;
    std::size_t idle = 0;
    std::vector<double> load(members.size());
    for (std::size_t k = 0; k < members.size(); ++k)
      load[k] = route_return_time(inst, res.solution, res.solution.routes[k]);
    for (std::size_t k = 1; k < members.size(); ++k) {
      if (load[k] > load[busy]) busy = k;
      if (load[k] < load[idle]) idle = k;
    }
    if (busy == idle || members[busy].size() <= 1) break;
    Point target = members[idle].empty() ? inst.depot() : Point{};
    if (!members[idle].empty()) {
      for (NodeId i : members[idle]) {
        target.x += inst.position(i).x;
        target.y += inst.position(i).y;
      }
      target.x /= static_cast<double>(members[idle].size());
      target.y /= static_cast<double>(members[idle].size());
    }
    std::size_t pick = 0;
    for (std::size_t q = 1; q < members[busy].size(); ++q)
      if (dist2(inst.position(members[busy][q]), target) <
          dist2(inst.position(members[busy][pick]), target) - 1e-12)
        pick = q;
    members[idle].push_back(members[busy][pick]);
    std::sort(members[idle].begin(), members[idle].end());
    members[busy].erase(members[busy].begin() + static_cast<std::ptrdiff_t>(pick));
    res = line_search(inst, build(), cfg, opts);
  }
  return res;
}

EvalResult construct(const Instance& inst, const AlphaConfig& cfg, const EvalOptions& opts) {
  EvalResult g = greedy_construct(inst, cfg, opts);
  EvalResult c = cluster_construct(inst, cfg, opts);
  return better(c, g) ? c : g;
}

}  // namespace sstrp
