#pragma once

#include "sstrp/pipeline.hpp"
#include "sstrp/schedule_eval.hpp"

namespace sstrp {

/// Manual policy: one tour over all nodes split round-robin over the
/// sprayers, 10% above minimum quantity, refill when the tank cannot cover
/// the next node, tanker in earliest-refill order, waiting absorbed by
/// stretching earlier service where the tank allows.
EvalResult practice_policy(const Instance& inst);

/// The matheuristic with waiting allowed and unpenalized.
SolveResult waiting_allowed_solve(const Instance& inst, SolveOptions opts = {});

}  // namespace sstrp
