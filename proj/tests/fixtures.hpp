#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sstrp/model.hpp"

namespace fx {

using namespace sstrp;

inline InstanceParams t1_params() {
  InstanceParams p;
  p.numSprayers = 1;
  p.sprayerCap = 6.0;
  p.tankerCap = 60.0;
  p.sprayRate = 2.0;
  p.refillTime = 1.0;
  p.speedFactor = 2.0;
  p.horizon = 100.0;
  p.zoneRadius = 4.0;
  return p;
}

// Two collinear nodes on one sprayer; the optimum refills at node 1 with s = (3,3).
inline Instance t1() {
  return Instance(Point{0, 0}, {{1, {1, 0}, 4, 8}, {2, {2, 0}, 4, 8}}, t1_params());
}

inline Instance single_node() {
  return Instance(Point{0, 0}, {{1, {1, 0}, 2, 4}}, t1_params());
}

// Hand-built T1 solution: route 0-1-2-0, refill at node 1, tanker 0-1-0.
inline Solution t1_solution(double s1, double s2) {
  Solution sol;
  sol.routes = {{1, 2}};
  sol.service = {0.0, s1, s2};
  sol.refill = {0, 1, 0};
  sol.tankerRoute = {1};
  return sol;
}

inline std::vector<NodeId> sorted(std::vector<NodeId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Destroy-operator example: 25 nodes, 2 sprayers, refills at 1, 3, 4, 7, 9.
// Nodes 7, 17, 22, 23 sit inside a circle of radius rd around (50, 50).
inline const std::vector<Route>& removal_example_routes() {
  static const std::vector<Route> r = {
      {16, 18, 19, 3, 20, 13, 5, 14, 9, 2, 11, 24, 4, 10},
      {23, 22, 7, 17, 21, 15, 25, 1, 8, 6, 12},
  };
  return r;
}

inline Point removal_example_zone_center() { return Point{50.0, 50.0}; }

inline Instance removal_example_instance() {
  std::vector<FieldNode> nodes;
  const std::vector<NodeId> zone = {7, 17, 22, 23};
  int ring = 0;
  for (NodeId i = 1; i <= 25; ++i) {
    Point p;
    const auto z = std::find(zone.begin(), zone.end(), i);
    if (z != zone.end()) {
      const double a = 1.5 * static_cast<double>(z - zone.begin());
      p = Point{50.0 + 2.0 * std::cos(a), 50.0 + 2.0 * std::sin(a)};
    } else {
      const double a = 0.3 * ring++;
      p = Point{50.0 + 30.0 * std::cos(a), 50.0 + 30.0 * std::sin(a)};
    }
    nodes.push_back({i, p, 2.0, 5.0});
  }
  InstanceParams prm;
  prm.numSprayers = 2;
  prm.zoneRadius = 4.0;
  return Instance(Point{0, 0}, std::move(nodes), prm);
}

inline Solution flags_only(const std::vector<Route>& routes, int n,
                           const std::vector<NodeId>& refills) {
  Solution sol;
  sol.routes = routes;
  sol.service.assign(static_cast<std::size_t>(n + 1), 1.0);
  sol.refill.assign(static_cast<std::size_t>(n + 1), 0);
  for (NodeId i : refills) sol.refill[static_cast<std::size_t>(i)] = 1;
  sol.tankerRoute = refills;
  return sol;
}

inline Solution removal_example_solution() { return flags_only(removal_example_routes(), 25, {3, 9, 4, 7, 1}); }

// Candidate-set example: 25 nodes, 3 sprayers, refills {9,4}, {7}, {3,1}.
inline Solution candidate_example_solution() {
  return flags_only({{20, 5, 9, 2, 12, 4, 25, 17},
                     {16, 19, 8, 14, 7, 24, 22, 21},
                     {11, 3, 10, 6, 13, 1, 15, 18, 23}},
                    25, {9, 4, 7, 3, 1});
}

// First n nodes of a generated small instance, with K sprayers.
inline Instance truncated(const Instance& base, int n, int sprayers) {
  std::vector<FieldNode> nodes(base.nodes().begin(), base.nodes().begin() + n);
  InstanceParams p = base.params();
  p.numSprayers = sprayers;
  return Instance(base.depot(), std::move(nodes), p);
}

}  // namespace fx
