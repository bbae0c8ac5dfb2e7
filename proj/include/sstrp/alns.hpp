#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "sstrp/intensify.hpp"
#include "sstrp/model.hpp"
#include "sstrp/rng.hpp"
#include "sstrp/schedule_eval.hpp"

namespace sstrp {

constexpr int kNumDestroy = 11;

enum class DestroyOp {
  Random = 1,
  Route = 2,
  LongestDistanceService = 3,
  WorstDistance = 4,
  Historical = 5,
  Zone = 6,
  RefillPositions = 7,
  RefillNeighbors = 8,
  KappaNeighbors = 9,
  SubtourPrior = 10,
  SubtourFollowing = 11,
};

enum class RepairOp { Greedy = 0, Regret = 1 };

enum class LsStrategy { None, Kappa0, Kappa1, Hybrid };

/// Sprayer arcs (depot arcs included) seen in new-best solutions.
class ArcPool {
 public:
  void add(const RouteSet& routes);
  bool contains(NodeId from, NodeId to) const { return arcs_.count({from, to}) > 0; }
  std::size_t size() const { return arcs_.size(); }
  bool empty() const { return arcs_.empty(); }
  const std::set<std::pair<NodeId, NodeId>>& arcs() const { return arcs_; }

 private:
  std::set<std::pair<NodeId, NodeId>> arcs_;
};

struct OperatorStats {
  std::array<double, kNumDestroy> chi{};
  std::array<double, kNumDestroy> weight{};
  std::array<std::int64_t, kNumDestroy> uses{};
  std::array<std::int64_t, kNumDestroy> newBest{};

  OperatorStats();
};

struct AlnsConfig {
  std::int64_t maxIter = -1;  // -1: 200 * |N^f|
  int segmentLength = 200;
  std::array<double, 4> scores{7.0, 4.0, 2.0, 1.0};
  double mu = 0.8;
  double cooling = 0.995;
  double tempFactor = 100.0;
  std::int64_t maxNoImprov = 500;
  double randomFracLo = 0.07;
  double randomFracHi = 0.15;
  double longestFracLo = 0.05;
  double longestFracHi = 0.12;
  int kappaDestroy = 2;
  std::uint64_t seed = 1;
  LsStrategy localSearch = LsStrategy::Kappa1;
  SearchBudget lsBudget{};
  AlphaConfig alpha{};
  EvalOptions eval{};
  double timeLimit = std::numeric_limits<double>::infinity();  // seconds
  const ArcPool* restrictTo = nullptr;  // insert only between pool-adjacent neighbors
  bool recordTrace = true;

  void validate() const;
};

struct TraceRow {
  std::int64_t iteration = 0;
  int operatorId = 0;
  double fNew = 0.0;
  double fCurr = 0.0;
  double fBest = 0.0;
  double temperature = 0.0;
  bool accepted = false;
  bool feasible = false;
};

struct AlnsResult {
  EvalResult best;
  ArcPool pool;
  OperatorStats stats;
  std::vector<TraceRow> trace;
  std::vector<OperatorStats> segmentHistory;  // stats after each weight update
  double tem0 = 0.0;
  std::int64_t iterations = 0;
  std::int64_t localSearchCalls = 0;
};

// Destroy helpers with explicit choices (used by destroy() and by fixtures).
std::vector<NodeId> remove_random(const Solution& sol, std::size_t p, Rng& rng);
std::vector<NodeId> remove_route(const Solution& sol, std::size_t k);
std::vector<NodeId> remove_longest_distance_service(const Instance& inst, const Solution& sol,
                                                    std::size_t p);
std::vector<NodeId> remove_worst_distance(const Instance& inst, const Solution& sol,
                                          std::size_t p);
std::vector<NodeId> remove_historical(const Instance& inst, const Solution& sol,
                                      const std::vector<double>& bestPositionCost, std::size_t p);
std::vector<NodeId> remove_zone(const Instance& inst, const Solution& sol, Point center,
                                double radius);
std::vector<NodeId> remove_refills(const Solution& sol);
std::vector<NodeId> remove_refill_neighbors(const Solution& sol, int kappa);
std::vector<NodeId> remove_subtour_prior(const Solution& sol, const std::vector<NodeId>& picked);
std::vector<NodeId> remove_subtour_following(const Solution& sol,
                                             const std::vector<NodeId>& picked);

/// Position cost t(prev,i) + t(i,next) - s_i of every routed node (0 when unrouted).
std::vector<double> position_costs(const Instance& inst, const Solution& sol);

struct Destroyed {
  RouteSet partial;
  std::vector<NodeId> removed;
  int opUsed = 0;  // operator actually applied (1 after a fallback)
};

/// Applies destroy operator `op` (1..11); falls back to random removal when
/// the operator would remove nothing.
Destroyed destroy(int op, const Instance& inst, const Solution& sol, Rng& rng,
                  const AlnsConfig& cfg, const std::vector<double>& bestPositionCost);

/// Routes without the removed nodes, order preserved.
RouteSet without(const RouteSet& routes, const std::vector<NodeId>& removed);

struct RepairResult {
  bool ok = true;  // false when some node had no allowed position
  EvalResult eval;
};

/// Reinserts every removed node. Greedy takes the cheapest node/position by
/// the line-search ranking; regret inserts the node with the largest gap
/// between its best and second-best position first.
RepairResult repair(RepairOp op, const Instance& inst, RouteSet partial,
                    const std::vector<NodeId>& removed, const AlnsConfig& cfg);

/// Simulated-annealing test.
bool accept(double fNew, double fCurr, double temperature, Rng& rng);

/// chi <- mu*chi + (1-mu)*score for operators used in the segment (score > 0),
/// then weights = chi / sum chi.
OperatorStats update_weights(const OperatorStats& stats,
                             const std::array<double, kNumDestroy>& segmentScores, double mu);

/// Adaptive large neighborhood search from an evaluated initial solution.
AlnsResult run_alns(const Instance& inst, const EvalResult& initial, const AlnsConfig& cfg);

/// Local search for the strategy in force at iteration `iter` of `maxIter`.
int strategy_kappa(LsStrategy s, std::int64_t iter, std::int64_t maxIter);

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace);

}  // namespace sstrp
