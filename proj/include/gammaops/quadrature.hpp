#pragma once

#include <functional>
#include <vector>

namespace gammaops {

/// Node budget, tolerances and panel layout for numeric operator evaluation.
struct QuadratureConfig {
  enum class SplitPolicy {
    mode_centered_panels, ///< panels geometrically refined toward the density mode
    uniform_panels,       ///< equal-width panels across the effective support
  };

  int node_budget = 200000;
  double rel_tolerance = 1e-12;
  double abs_tolerance = 1e-12;
  SplitPolicy split_policy = SplitPolicy::mode_centered_panels;
};

/// Throws ConstraintError unless tolerances > 0 and node_budget >= 15.
void validate(const QuadratureConfig& q);

namespace quadrature {

/// Fixed-order Gauss-Legendre rule on (-1,1) used for all panel sums.
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const Rule& panel_rule();

/// Integrates exp(log_weight(u)) * value(u) over (0,1).
///
/// log_weight must be unimodal with its maximum near u_mode and finite on the
/// open interval; it may diverge to -inf at the endpoints. The effective
/// support is clipped where log_weight drops 60 nats below the mode (so value
/// is never evaluated where the weight cannot matter and its argument cannot
/// overflow), then covered by Gauss-Legendre panels laid out per the split
/// policy. Panel counts double until two successive estimates agree within
/// tolerance; exhausting node_budget first raises ConvergenceError.
double integrate_peaked_unit(const std::function<double(double)>& log_weight,
                             const std::function<double(double)>& value, double u_mode,
                             const QuadratureConfig& q);

} // namespace quadrature

} // namespace gammaops
