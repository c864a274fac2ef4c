#pragma once

#include "gammaops/test_function.hpp"

#include <span>

namespace gammaops::moduli {

enum class EstimateKind {
  grid_lower_estimate, ///< max over a finite grid: a LOWER bound on the sup
  analytic_exact,      ///< closed form supplied by the test function
};

struct ModulusEstimate {
  double delta = 0.0;
  double value = 0.0;
  EstimateKind kind = EstimateKind::grid_lower_estimate;
  int grid_points = 0;    ///< x-grid size used (also set for analytic estimates)
  double domain_cap = 0.0; ///< truncation T of [0,inf) for the grid sweep
};

/// First-order modulus of continuity of f at delta. Returns the analytic
/// value when f carries one; otherwise the max of |f(x+h)-f(x)| over
/// x in [0,T] (grid_points values) and h in (0,delta] (geometric sweep).
ModulusEstimate omega1(const TestFunction& f, double delta, double domain_cap = 20.0,
                       int grid_points = 4001);

/// Second-order modulus of smoothness, |f(x+2h)-2f(x+h)+f(x)|, same policy.
ModulusEstimate omega2(const TestFunction& f, double delta, double domain_cap = 20.0,
                       int grid_points = 4001);

/// Mollification scales tried by k_functional_upper by default.
std::span<const double> default_smoothing_scales();

/// Constructive upper bound on K(f, delta) = inf_g { ||f-g|| + delta ||g''|| }:
/// the best of (a) g = f itself when f carries an analytic second derivative
/// and (b) Gaussian mollifications of f at the given scales, all measured on
/// a grid over [0, domain_cap]. An upper bound up to grid error.
double k_functional_upper(const TestFunction& f, double delta,
                          std::span<const double> smoothing_scales = default_smoothing_scales(),
                          double domain_cap = 20.0);

} // namespace gammaops::moduli
