#pragma once

#include <vector>

#include "sstrp/model.hpp"
#include "sstrp/schedule_eval.hpp"

namespace sstrp {

/// Depot-anchored tour over `subset`: Held-Karp up to 13 nodes, otherwise
/// nearest neighbor followed by 2-opt. Throws InputError on an empty subset.
Route tsp_route(const Instance& inst, const std::vector<NodeId>& subset);

/// Held-Karp and nearest neighbor + 2-opt, exposed separately for comparisons.
Route tsp_exact(const Instance& inst, const std::vector<NodeId>& subset);
Route tsp_two_opt(const Instance& inst, const std::vector<NodeId>& subset);

/// Cheapest insertion under the penalized line-search objective.
EvalResult greedy_construct(const Instance& inst, const AlphaConfig& cfg = {},
                            const EvalOptions& opts = {});

/// k-means clusters (max-min seeding, at most 50 Lloyd iterations), one tour
/// per cluster, then single-node moves off the busiest route while the
/// horizon is violated.
EvalResult cluster_construct(const Instance& inst, const AlphaConfig& cfg = {},
                             const EvalOptions& opts = {});

/// Better of the two constructions.
EvalResult construct(const Instance& inst, const AlphaConfig& cfg = {},
                     const EvalOptions& opts = {});

}  // namespace sstrp
