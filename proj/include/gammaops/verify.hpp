#pragma once

#include "gammaops/quadrature.hpp"
#include "gammaops/rational.hpp"
#include "gammaops/test_function.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gammaops::verify {

/// The asymptotic limit (2r-k+1) x f^(r+1)(x) + x^2 f^(r+2)(x), from analytic
/// derivatives only -- no quadrature is involved.
double voronovskaja_target(const TestFunction& f, double x, int k, int r);

struct VoronovskajaReport {
  int k = 0;
  int r = 0;
  double x = 0.0;
  std::string function_id;
  std::vector<int> n_values;
  std::vector<double> e_values; ///< E_n = n (M*_{n,k,r}(f^(r); x) - f^(r)(x))
  double target = 0.0;
  std::optional<double> extrapolated; ///< 2 E_{2N} - E_N on a doubling ladder
  bool converged = false;
};

struct SequenceOptions {
  bool extrapolate = true;       ///< requires a doubling ladder
  double convergence_tol = 1e-2; ///< |extrapolated - target| threshold
};

/// Scaled deviations E_n along a ladder of n values, evaluated by quadrature.
/// Every ladder entry must satisfy n > r + 4 and n >= k.
VoronovskajaReport voronovskaja_sequence(const TestFunction& f, double x, int k, int r,
                                         std::span<const int> n_values, const QuadratureConfig& q,
                                         const SequenceOptions& opt = {});

/// Exact-rational twin of voronovskaja_sequence for polynomial f, given as
/// coefficients of 1, t, t^2, ... Every quantity is an exact rational.
struct ExactVoronovskajaReport {
  std::vector<int> n_values;
  std::vector<Rational> e_values;
  Rational target;
  std::optional<Rational> extrapolated;
};
ExactVoronovskajaReport voronovskaja_sequence_exact(std::span<const Rational> poly_coefficients,
                                                    const Rational& x, int k, int r,
                                                    std::span<const int> n_values,
                                                    bool extrapolate = true);

/// One theorem-check record.
struct BoundReport {
  std::string theorem; ///< "4.2" or "4.3"
  int n = 0, k = 0, r = 0;
  double x = 0.0;
  std::string function_id;
  double lhs = 0.0; ///< |M*_{n,k,r}(f^(r); x) - f^(r)(x)|
  std::vector<std::pair<std::string, double>> rhs_components;
  double rhs = 0.0;
  double slack = 0.0; ///< rhs - lhs
  bool holds = false; ///< slack >= -10 * quadrature abs tolerance
  std::optional<double> empirical_c; ///< 4.3 only: max(0, lhs - omega-term)/omega2-term
};

/// |M*(f^(r);x) - f^(r)(x)| <= 2 omega(f^(r), sqrt(delta_n)). Needs the
/// analytic first-order modulus of f^(r).
BoundReport check_theorem_42(const TestFunction& f, double x, int n, int k, int r,
                             const QuadratureConfig& q);

/// |M*(f^(r);x) - f^(r)(x)| <= C omega2(f^(r), gamma_n) + omega(f^(r),
/// |2r-k+1| x/(n-r)). C is an unknown absolute constant: the report records
/// empirical_c, and rhs uses the reference value C = 4 for context only.
BoundReport check_theorem_43(const TestFunction& f, double x, int n, int k, int r,
                             const QuadratureConfig& q);

struct OrderRow {
  int n = 0;
  Rational coefficient;        ///< M*_{n,k,r}((t-x)^m; x) / x^m, exact
  double scaled = 0.0;         ///< n^floor((m+1)/2) * |coefficient|
  std::optional<double> ratio; ///< scaled / previous scaled
};

struct OrderReport {
  int m = 0, k = 0, r = 0;
  std::vector<OrderRow> rows;
  bool degenerate = false; ///< every coefficient is exactly zero
  bool pass = false;       ///< degenerate, or all ratios within [0.3, 3.0]
};

/// Decay-order check of the m-th central moment along a ladder of n values.
OrderReport check_order_lemma(int m, int k, int r, std::span<const int> n_values);

} // namespace gammaops::verify
