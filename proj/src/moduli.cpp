#include "gammaops/moduli.hpp"

#include "gammaops/errors.hpp"
#include "gammaops/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace gammaops::moduli {

namespace {

constexpr int kStepGridPoints = 512; // h sweep size, geometric toward 0

void require_grid(double delta, double domain_cap, int grid_points) {
  if (!(delta > 0.0))
    throw DomainError("modulus step delta must be positive, got " + std::to_string(delta));
  if (!(domain_cap > 0.0))
    throw DomainError("domain cap must be positive");
  if (grid_points < 2)
    throw ConstraintError("modulus grid needs at least 2 points");
}

// h values in (0, delta], geometrically spaced, largest first. The dyadic
// ratio keeps the grids nested when delta doubles, so grid estimates stay
// monotone across doubling deltas the way the true modulus is.
std::vector<double> step_grid(double delta) {
  std::vector<double> hs(kStepGridPoints);
  const double ratio = std::pow(2.0, -1.0 / 16.0);
  double h = delta;
  for (int j = 0; j < kStepGridPoints; ++j, h *= ratio)
    hs[j] = h;
  return hs;
}

template <typename Difference>
ModulusEstimate grid_sweep(const TestFunction& f, double delta, double domain_cap, int grid_points,
                           Difference diff) {
  const std::vector<double> hs = step_grid(delta);
  double best = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double x = domain_cap * i / (grid_points - 1);
    for (const double h : hs)
      best = std::max(best, std::abs(diff(f, x, h)));
  }
  return {delta, best, EstimateKind::grid_lower_estimate, grid_points, domain_cap};
}

} // namespace

ModulusEstimate omega1(const TestFunction& f, double delta, double domain_cap, int grid_points) {
  require_grid(delta, domain_cap, grid_points);
  if (f.has_analytic_omega1())
    return {delta, f.analytic_omega1(delta), EstimateKind::analytic_exact, grid_points, domain_cap};
  return grid_sweep(f, delta, domain_cap, grid_points,
                    [](const TestFunction& g, double x, double h) { return g(x + h) - g(x); });
}

ModulusEstimate omega2(const TestFunction& f, double delta, double domain_cap, int grid_points) {
  require_grid(delta, domain_cap, grid_points);
  if (f.has_analytic_omega2())
    return {delta, f.analytic_omega2(delta), EstimateKind::analytic_exact, grid_points, domain_cap};
  return grid_sweep(f, delta, domain_cap, grid_points,
                    [](const TestFunction& g, double x, double h) {
                      return g(x + 2 * h) - 2 * g(x + h) + g(x);
                    });
}

std::span<const double> default_smoothing_scales() {
  static constexpr std::array<double, 5> scales = {0.02, 0.05, 0.1, 0.2, 0.5};
  return scales;
}

double k_functional_upper(const TestFunction& f, double delta,
                          std::span<const double> smoothing_scales, double domain_cap) {
  if (delta < 0.0)
    throw DomainError("K-functional delta must be non-negative");
  for (const double s : smoothing_scales)
    if (!(s > 0.0))
      throw ConstraintError("smoothing scales must be positive");

  constexpr int kGridPoints = 801;
  std::vector<double> xs(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i)
    xs[i] = domain_cap * i / (kGridPoints - 1);

  // g = 0 is always admissible: K <= ||f|| on the grid.
  double best = 0.0;
  for (const double x : xs)
    best = std::max(best, std::abs(f(x)));

  // g = f (the sigma -> 0 limit) when the analytic second derivative exists.
  if (f.max_derivative() >= 2) {
    double sup_f2 = 0.0;
    for (const double x : xs)
      sup_f2 = std::max(sup_f2, std::abs(f.derivative_at(2, x)));
    best = std::min(best, delta * sup_f2);
  }

  // Gaussian mollifications g_s(x) = int f(|x + s z|) phi(z) dz; the second
  // derivative differentiates the kernel, so no derivatives of f are needed.
  const quadrature::Rule& rule = quadrature::panel_rule();
  constexpr int kPanels = 16;
  constexpr double kZRange = 8.0;
  const double inv_sqrt2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  for (const double sigma : smoothing_scales) {
    double sup_err = 0.0, sup_g2 = 0.0;
    for (const double x : xs) {
      double g = 0.0, g2 = 0.0;
      for (int p = 0; p < kPanels; ++p) {
        const double z0 = -kZRange + 2.0 * kZRange * p / kPanels;
        const double z1 = -kZRange + 2.0 * kZRange * (p + 1) / kPanels;
        const double mid = 0.5 * (z0 + z1), half = 0.5 * (z1 - z0);
        for (size_t j = 0; j < rule.nodes.size(); ++j) {
          const double z = mid + half * rule.nodes[j];
          const double phi = inv_sqrt2pi * std::exp(-0.5 * z * z);
          const double fe = f(std::abs(x + sigma * z)); // even extension below 0
          const double w = rule.weights[j] * half;
          g += w * fe * phi;
          g2 += w * fe * (z * z - 1.0) * phi;
        }
      }
      g2 /= sigma * sigma;
      sup_err = std::max(sup_err, std::abs(f(x) - g));
      sup_g2 = std::max(sup_g2, std::abs(g2));
    }
    best = std::min(best, sup_err + delta * sup_g2);
  }
  return best;
}

} // namespace gammaops::moduli
