#pragma once

#include "sstrp/model.hpp"

namespace sstrp {

/// Travel (half of cheapest in + out arc per node, depot included) plus the
/// unavoidable refills minus the maximal total service.
double composite_lower_bound(const Instance& inst);

/// Exact optimum of the tanker-free relaxation. Throws BudgetRefusal above
/// `sizeCap` field nodes or two sprayers.
double relaxed_exact_bound(const Instance& inst, int sizeCap = 8);

/// Upper bound on the service time of any single sprayer. Exact over subsets
/// and tours up to 15 nodes, analytic above.
double service_upper_bound(const Instance& inst);
double service_upper_bound_exact(const Instance& inst);
double service_upper_bound_analytic(const Instance& inst);

/// (z - LB) / |LB| * 100.
double gap_percent(double z, double lb);

}  // namespace sstrp
