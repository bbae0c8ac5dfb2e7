#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sstrp {

/// Node 0 is always the depot; field nodes are numbered 1..N.
using NodeId = int;
constexpr NodeId kDepot = 0;

/// Waiting penalty weight of the penalized objective. Never adapted.
constexpr double kWaitingPenalty = 10.0;

/// Absolute tolerance for all continuous feasibility comparisons.
constexpr double kFeasTol = 1e-6;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A solution whose routes do not partition the field nodes.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An exact method refused to run (size caps or time budget).
struct BudgetRefusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct FieldNode {
  NodeId id = 0;
  Point pos;
  double qMin = 0.0;  // fertilizer units
  double qMax = 0.0;
};

struct InstanceParams {
  int numSprayers = 1;       // K
  double sprayerCap = 15.0;  // Qs
  double tankerCap = 150.0;  // Qt
  double sprayRate = 2.0;    // eta, fertilizer per time unit
  double refillTime = 3.0;   // xi
  double speedFactor = 2.0;  // beta
  double horizon = 480.0;    // tMax
  double zoneRadius = 4.0;   // rd
};

/// Immutable problem data with a precomputed travel-time matrix.
class Instance {
 public:
  Instance() = default;

  /// Validates every invariant and throws InputError naming the violated one.
  Instance(Point depot, std::vector<FieldNode> nodes, InstanceParams params);

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_sprayers() const { return params_.numSprayers; }
  const InstanceParams& params() const { return params_; }
  const Point& depot() const { return depot_; }

  /// Field node with id i (1-based).
  const FieldNode& node(NodeId i) const { return nodes_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<FieldNode>& nodes() const { return nodes_; }
  const Point& position(NodeId i) const { return i == kDepot ? depot_ : node(i).pos; }

  /// Sprayer travel time; Euclidean distance at unit speed.
  double travel(NodeId a, NodeId b) const {
    return dist_[static_cast<std::size_t>(a) * stride_ + static_cast<std::size_t>(b)];
  }
  /// Same as travel() but range-checked; throws InputError for unknown ids.
  double travel_time(NodeId a, NodeId b) const;
  double tanker_travel(NodeId a, NodeId b) const { return travel(a, b) / params_.speedFactor; }

  double min_service(NodeId i) const { return node(i).qMin / params_.sprayRate; }
  double max_service(NodeId i) const { return node(i).qMax / params_.sprayRate; }

  bool contains(NodeId i) const { return i >= 0 && i <= num_nodes(); }

 private:
  Point depot_;
  std::vector<FieldNode> nodes_;
  InstanceParams params_;
  std::size_t stride_ = 1;
  std::vector<double> dist_;
};

using Route = std::vector<NodeId>;   // field nodes only; depot implicit at both ends
using RouteSet = std::vector<Route>;  // one per sprayer

/// Timing and quantity realization. Arrays are indexed by node id; entry 0 is unused.
struct Schedule {
  std::vector<double> arrival;        // y
  std::vector<double> refillStart;    // theta (refill nodes only)
  std::vector<double> tankerArrival;  // w (refill nodes only)
  std::vector<double> waiting;        // m
  std::vector<double> sprayerTank;    // l, level on arrival
  std::vector<double> tankerTank;     // h, level on tanker arrival
  std::vector<double> refillQty;      // v
  bool feasible = false;

  void resize(int n);
};

struct ObjectiveBreakdown {
  double sprayerTravel = 0.0;
  double tankerTravel = 0.0;
  double refillTerm = 0.0;
  double serviceTerm = 0.0;
  double waitingPenalty = 0.0;
  double total = 0.0;
};

struct Solution {
  RouteSet routes;
  std::vector<double> service;  // s, indexed by node id
  std::vector<char> refill;     // delta, indexed by node id
  std::vector<NodeId> tankerRoute;  // refill nodes in visiting order, depot implicit
  Schedule schedule;
  ObjectiveBreakdown objective;
  double alpha = 1.0;
  bool waitingInfeasible = false;
  bool horizonInfeasible = false;

  bool feasible() const { return !waitingInfeasible && !horizonInfeasible; }
  int refill_count() const;
};

/// Sprayer index serving each node (-1 when unrouted). Throws StructuralError
/// when a node is routed twice or an id is out of range.
std::vector<int> route_owner(const Instance& inst, const RouteSet& routes);

/// Throws StructuralError unless routes partition the field nodes.
void require_partition(const Instance& inst, const RouteSet& routes);

/// Total sprayer travel of one route including both depot legs.
double route_travel(const Instance& inst, const Route& route);

/// Total tanker travel at sprayer speed (the objective charges tanker arcs at t_ij).
double tanker_route_travel(const Instance& inst, const std::vector<NodeId>& tankerRoute);

}  // namespace sstrp
