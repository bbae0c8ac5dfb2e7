#pragma once

#include <vector>

namespace sstrp {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double value = 0.0;
};

/// Dense two-phase tableau simplex with Bland's rule:
/// maximize c.x subject to A x <= b, x >= 0. Rows of A may have any sign of b.
LpResult lp_maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                     const std::vector<double>& c);

}  // namespace sstrp
