#pragma once

#include <cstdint>

#include "sstrp/alns.hpp"
#include "sstrp/phase3.hpp"
#include "sstrp/schedule_eval.hpp"

namespace sstrp {

struct SolveOptions {
  std::uint64_t seed = 1;
  std::int64_t iterations = -1;  // -1: 200 * |N^f|
  LsStrategy localSearch = LsStrategy::Hybrid;
  SearchBudget lsBudget{};
  bool phase3 = true;
  Phase3Options phase3Options{};
  bool allowWaiting = false;
  AlphaConfig alpha{};
};

struct SolveResult {
  EvalResult phase1;
  EvalResult phase2;
  EvalResult best;  // phase 3 output when enabled, phase 2 otherwise
  AlnsResult alns;
  bool phase3Ran = false;
  double seconds1 = 0.0;
  double seconds2 = 0.0;
  double seconds3 = 0.0;
};

/// Construction, ALNS and (optionally) arc-pool improvement.
SolveResult solve(const Instance& inst, const SolveOptions& opts = {});

}  // namespace sstrp
