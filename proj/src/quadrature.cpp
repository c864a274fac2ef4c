#include "gammaops/quadrature.hpp"

#include "gammaops/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace gammaops {

void validate(const QuadratureConfig& q) {
  if (!(q.rel_tolerance > 0.0) || !(q.abs_tolerance > 0.0))
    throw ConstraintError("quadrature tolerances must be positive");
  if (q.node_budget < 15)
    throw ConstraintError("quadrature node budget must be at least 15, got " +
                          std::to_string(q.node_budget));
}

namespace quadrature {

namespace {

constexpr int kPanelOrder = 15;
// Tail clip depth for the log-weight. Polynomial growth of the value factor
// eats into the clip margin (t^m ~ (1-u)^{-m} near u=1), so the drop must
// exceed the tolerance budget by a wide margin: 120 nats keeps the discarded
// mass below 1e-15 relative for every admissible growth order.
constexpr double kTailLogDrop = 120.0;

// Smallest (largest) u with log_weight(u) >= cut on the side of the mode
// facing `endpoint`; log_weight decreases monotonically away from the mode.
double clip_tail(const std::function<double(double)>& log_weight, double mode, double endpoint,
                 double cut) {
  const double probe = endpoint == 0.0 ? 1e-300 : 1.0 - 1e-16;
  if (log_weight(probe) >= cut)
    return endpoint;
  double far = probe, near = mode;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (far + near);
    if (log_weight(mid) >= cut)
      near = mid;
    else
      far = mid;
    if (std::abs(far - near) < 1e-18)
      break;
  }
  return near;
}

// Breakpoints covering [lo, hi]; mode-centered layout halves panel widths
// toward the mode from both ends.
std::vector<double> panel_breaks(double lo, double hi, double mode, int side_panels,
                                 QuadratureConfig::SplitPolicy policy) {
  std::vector<double> pts;
  if (policy == QuadratureConfig::SplitPolicy::uniform_panels) {
    const int panels = 2 * side_panels;
    pts.reserve(panels + 1);
    for (int i = 0; i <= panels; ++i)
      pts.push_back(lo + (hi - lo) * i / panels);
    return pts;
  }
  mode = std::clamp(mode, lo, hi);
  pts.push_back(lo);
  for (int i = 1; i < side_panels; ++i) {
    const double p = mode - (mode - lo) * std::ldexp(1.0, -i);
    if (p > pts.back())
      pts.push_back(p);
  }
  if (mode > pts.back())
    pts.push_back(mode);
  for (int i = side_panels - 1; i >= 1; --i) {
    const double p = mode + (hi - mode) * std::ldexp(1.0, -i);
    if (p > pts.back())
      pts.push_back(p);
  }
  if (hi > pts.back())
    pts.push_back(hi);
  return pts;
}

} // namespace

const Rule& panel_rule() {
  // Gauss-Legendre nodes on (-1,1) by Newton iteration on the recurrence.
  static const Rule rule = [] {
    Rule r;
    const int n = kPanelOrder;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
      double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = t;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (t * p1 - p0) / (t * t - 1.0);
        const double step = p1 / dp;
        t -= step;
        if (std::abs(step) < 1e-15)
          break;
      }
      r.nodes[i] = t;
      r.weights[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return r;
  }();
  return rule;
}

double integrate_peaked_unit(const std::function<double(double)>& log_weight,
                             const std::function<double(double)>& value, double u_mode,
                             const QuadratureConfig& q) {
  validate(q);
  const Rule& rule = panel_rule();

  const double mode = std::clamp(u_mode, 1e-12, 1.0 - 1e-12);
  const double cut = log_weight(mode) - kTailLogDrop;
  const double lo = clip_tail(log_weight, mode, 0.0, cut);
  const double hi = clip_tail(log_weight, mode, 1.0, cut);
  if (!(lo < hi))
    throw ConvergenceError("quadrature support degenerated to a point");

  long nodes_used = 0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int side = 4;; side *= 2) {
    const std::vector<double> pts = panel_breaks(lo, hi, mode, side, q.split_policy);
    const long cost = static_cast<long>(kPanelOrder) * (static_cast<long>(pts.size()) - 1);
    if (nodes_used + cost > q.node_budget)
      throw ConvergenceError("quadrature did not reach tolerance within node budget " +
                             std::to_string(q.node_budget));

    double sum = 0.0, comp = 0.0; // Kahan accumulation, deterministic order
    for (size_t p = 0; p + 1 < pts.size(); ++p) {
      const double mid = 0.5 * (pts[p] + pts[p + 1]);
      const double half = 0.5 * (pts[p + 1] - pts[p]);
      for (int j = 0; j < kPanelOrder; ++j) {
        const double u = mid + half * rule.nodes[j];
        const double lw = log_weight(u);
        if (lw < -745.0)
          continue; // weight underflows; value(u) need not be touched
        const double term = rule.weights[j] * half * std::exp(lw) * value(u);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
      }
    }
    nodes_used += cost;

    if (!std::isnan(prev) &&
        std::abs(sum - prev) <= std::max(q.abs_tolerance, q.rel_tolerance * std::abs(sum)))
      return sum;
    prev = sum;
  }
}

} // namespace quadrature

} // namespace gammaops
