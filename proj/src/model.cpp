#include "sstrp/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sstrp {

namespace {

bool finite(double v) { return std::isfinite(v); }

}  // namespace

Instance::Instance(Point depot, std::vector<FieldNode> nodes, InstanceParams params)
    : depot_(depot), nodes_(std::move(nodes)), params_(params) {
  if (nodes_.empty()) throw InputError("instance has no field nodes");
  std::sort(nodes_.begin(), nodes_.end(),
            [](const FieldNode& a, const FieldNode& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    const std::string tag = "node " + std::to_string(n.id);
    if (n.id != static_cast<NodeId>(i + 1))
      throw InputError("node ids must be exactly 1..N; missing or duplicate id near " + tag);
    if (!finite(n.pos.x) || !finite(n.pos.y)) throw InputError(tag + ": coordinates must be finite");
    if (!(n.qMin > 0.0)) throw InputError(tag + ": invariant 0 < qMin violated");
    if (!(n.qMin <= n.qMax)) throw InputError(tag + ": invariant qMin <= qMax violated");
  }
  if (!finite(depot_.x) || !finite(depot_.y)) throw InputError("depot coordinates must be finite");
  if (params_.numSprayers < 1) throw InputError("invariant K >= 1 violated");
  if (!(params_.sprayRate > 0.0)) throw InputError("invariant eta > 0 violated");
  if (!(params_.refillTime >= 0.0)) throw InputError("invariant xi >= 0 violated");
  if (!(params_.speedFactor >= 1.0)) throw InputError("invariant beta >= 1 violated");
  if (!(params_.horizon > 0.0)) throw InputError("invariant tMax > 0 violated");
  if (!(params_.zoneRadius >= 0.0)) throw InputError("invariant rd >= 0 violated");
  const double maxQMin =
      std::max_element(nodes_.begin(), nodes_.end(), [](const auto& a, const auto& b) {
        return a.qMin < b.qMin;
      })->qMin;
  if (!(params_.sprayerCap > maxQMin))
    throw InputError("invariant Qs > max qMin violated");
  if (!(params_.tankerCap > params_.sprayerCap)) throw InputError("invariant Qt > Qs violated");

  stride_ = nodes_.size() + 1;
  dist_.assign(stride_ * stride_, 0.0);
  for (std::size_t a = 0; a < stride_; ++a) {
    for (std::size_t b = a + 1; b < stride_; ++b) {
      const Point& p = position(static_cast<NodeId>(a));
      const Point& q = position(static_cast<NodeId>(b));
      const double d = std::hypot(p.x - q.x, p.y - q.y);
      dist_[a * stride_ + b] = d;
      dist_[b * stride_ + a] = d;
    }
  }
}

double Instance::travel_time(NodeId a, NodeId b) const {
  if (!contains(a) || !contains(b))
    throw InputError("unknown node id in travel_time(" + std::to_string(a) + ", " +
                     std::to_string(b) + ")");
  return travel(a, b);
}

void Schedule::resize(int n) {
  const auto size = static_cast<std::size_t>(n + 1);
  arrival.assign(size, 0.0);
  refillStart.assign(size, 0.0);
  tankerArrival.assign(size, 0.0);
  waiting.assign(size, 0.0);
  sprayerTank.assign(size, 0.0);
  tankerTank.assign(size, 0.0);
  refillQty.assign(size, 0.0);
}

int Solution::refill_count() const {
  return static_cast<int>(std::count(refill.begin(), refill.end(), char{1}));
}

std::vector<int> route_owner(const Instance& inst, const RouteSet& routes) {
  std::vector<int> owner(static_cast<std::size_t>(inst.num_nodes() + 1), -1);
  for (std::size_t k = 0; k < routes.size(); ++k) {
    for (NodeId i : routes[k]) {
      if (i < 1 || i > inst.num_nodes())
        throw StructuralError("route " + std::to_string(k) + " contains invalid node id " +
                              std::to_string(i));
      if (owner[static_cast<std::size_t>(i)] != -1)
        throw StructuralError("node " + std::to_string(i) + " is routed more than once");
      owner[static_cast<std::size_t>(i)] = static_cast<int>(k);
    }
  }
  return owner;
}

void require_partition(const Instance& inst, const RouteSet& routes) {
  if (static_cast<int>(routes.size()) != inst.num_sprayers())
    throw StructuralError("expected " + std::to_string(inst.num_sprayers()) + " routes, got " +
                          std::to_string(routes.size()));
  const auto owner = route_owner(inst, routes);
  for (NodeId i = 1; i <= inst.num_nodes(); ++i)
    if (owner[static_cast<std::size_t>(i)] == -1)
      throw StructuralError("node " + std::to_string(i) + " is not routed");
}

double route_travel(const Instance& inst, const Route& route) {
  if (route.empty()) return 0.0;
  double total = inst.travel(kDepot, route.front()) + inst.travel(route.back(), kDepot);
  for (std::size_t p = 1; p < route.size(); ++p) total += inst.travel(route[p - 1], route[p]);
  return total;
}

double tanker_route_travel(const Instance& inst, const std::vector<NodeId>& tankerRoute) {
  return route_travel(inst, tankerRoute);
}

}  // namespace sstrp
