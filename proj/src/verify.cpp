#include "gammaops/verify.hpp"

#include "gammaops/errors.hpp"
#include "gammaops/exact_moments.hpp"
#include "gammaops/operator_eval.hpp"
#include "gammaops/params.hpp"

#include <cmath>
#include <string>

namespace gammaops::verify {

namespace {

void require_ladder(std::span<const int> n_values, int k, int r) {
  if (n_values.empty())
    throw LadderError("ladder of n values must not be empty");
  int prev = 0;
  for (const int n : n_values) {
    validate(OperatorParams{n, k, r});
    if (n <= r + 4)
      throw ConstraintError("ladder entries must satisfy n > r + 4, got n=" + std::to_string(n) +
                            ", r=" + std::to_string(r));
    if (n <= prev)
      throw LadderError("ladder of n values must be strictly ascending");
    prev = n;
  }
}

void require_doubling(std::span<const int> n_values) {
  if (n_values.size() < 2)
    throw LadderError("Richardson extrapolation needs at least two ladder entries");
  for (size_t i = 1; i < n_values.size(); ++i)
    if (n_values[i] != 2 * n_values[i - 1])
      throw LadderError("Richardson extrapolation needs a doubling ladder; entry " +
                        std::to_string(n_values[i]) + " does not double " +
                        std::to_string(n_values[i - 1]));
}

// delta_n of the error-bound theorems: the order-2 closed form times x^2.
double delta_n(int n, int k, int r, double x) {
  return to_double(exact::closed_form_mstar_central({n, k, r}, 2)) * x * x;
}

// Derivative of a coefficient list: d/dt sum a_j t^j, repeated r times.
std::vector<Rational> poly_derivative(std::span<const Rational> coeffs, int r) {
  std::vector<Rational> cur(coeffs.begin(), coeffs.end());
  for (int pass = 0; pass < r; ++pass) {
    std::vector<Rational> next;
    for (size_t j = 1; j < cur.size(); ++j)
      next.push_back(cur[j] * int(j));
    cur = std::move(next);
  }
  return cur;
}

Rational poly_eval(std::span<const Rational> coeffs, const Rational& x) {
  Rational acc = 0;
  for (size_t j = coeffs.size(); j-- > 0;)
    acc = acc * x + coeffs[j];
  return acc;
}

} // namespace

double voronovskaja_target(const TestFunction& f, double x, int k, int r) {
  const double d1 = f.derivative_at(r + 1, x);
  const double d2 = f.derivative_at(r + 2, x);
  return (2 * r - k + 1) * x * d1 + x * x * d2;
}

VoronovskajaReport voronovskaja_sequence(const TestFunction& f, double x, int k, int r,
                                         std::span<const int> n_values, const QuadratureConfig& q,
                                         const SequenceOptions& opt) {
  require_ladder(n_values, k, r);
  if (opt.extrapolate)
    require_doubling(n_values);

  VoronovskajaReport rep;
  rep.k = k;
  rep.r = r;
  rep.x = x;
  rep.function_id = f.id();
  rep.n_values.assign(n_values.begin(), n_values.end());
  rep.target = voronovskaja_target(f, x, k, r);

  const TestFunction fr = f.derivative(r);
  const double frx = fr(x);
  for (const int n : n_values) {
    const double mstar = eval::apply_mstar({n, k, r}, fr, x, q);
    rep.e_values.push_back(n * (mstar - frx));
  }
  if (opt.extrapolate) {
    const size_t last = rep.e_values.size() - 1;
    rep.extrapolated = 2.0 * rep.e_values[last] - rep.e_values[last - 1];
    rep.converged = std::abs(*rep.extrapolated - rep.target) <= opt.convergence_tol;
  }
  return rep;
}

ExactVoronovskajaReport voronovskaja_sequence_exact(std::span<const Rational> poly_coefficients,
                                                    const Rational& x, int k, int r,
                                                    std::span<const int> n_values,
                                                    bool extrapolate) {
  require_ladder(n_values, k, r);
  if (extrapolate)
    require_doubling(n_values);
  const int degree = static_cast<int>(poly_coefficients.size()) - 1;
  if (degree < 0)
    throw ConstraintError("polynomial needs at least one coefficient");

  const std::vector<Rational> dr = poly_derivative(poly_coefficients, r);
  const std::vector<Rational> dr1 = poly_derivative(poly_coefficients, r + 1);
  const std::vector<Rational> dr2 = poly_derivative(poly_coefficients, r + 2);

  ExactVoronovskajaReport rep;
  rep.n_values.assign(n_values.begin(), n_values.end());
  rep.target = Rational(2 * r - k + 1) * x * poly_eval(dr1, x) + x * x * poly_eval(dr2, x);

  const Rational frx = poly_eval(dr, x);
  for (const int n : n_values) {
    if (degree > n)
      throw MomentUndefinedError("polynomial degree " + std::to_string(degree) +
                                 " exceeds the moment range of n=" + std::to_string(n));
    Rational mstar = 0;
    Rational xpow = 1;
    for (size_t j = 0; j < dr.size(); ++j) {
      mstar += dr[j] * exact::mstar_raw_moment({n, k, r}, static_cast<int>(j)) * xpow;
      xpow *= x;
    }
    rep.e_values.push_back(Rational(n) * (mstar - frx));
  }
  if (extrapolate) {
    const size_t last = rep.e_values.size() - 1;
    rep.extrapolated = 2 * rep.e_values[last] - rep.e_values[last - 1];
  }
  return rep;
}

BoundReport check_theorem_42(const TestFunction& f, double x, int n, int k, int r,
                             const QuadratureConfig& q) {
  validate(OperatorParams{n, k, r});
  if (n < r + 2)
    throw ConstraintError("theorem 4.2 needs n >= r + 2 for delta_n, got n=" + std::to_string(n));
  const TestFunction fr = f.derivative(r);
  if (!fr.has_analytic_omega1())
    throw MissingModulusError("theorem 4.2 check needs the analytic modulus of " + fr.id());

  BoundReport rep;
  rep.theorem = "4.2";
  rep.n = n;
  rep.k = k;
  rep.r = r;
  rep.x = x;
  rep.function_id = f.id();
  rep.lhs = std::abs(eval::apply_mstar({n, k, r}, fr, x, q) - fr(x));
  const double dn = delta_n(n, k, r, x);
  const double omega = fr.analytic_omega1(std::sqrt(dn));
  rep.rhs_components = {{"delta_n", dn}, {"omega1", omega}};
  rep.rhs = 2.0 * omega;
  rep.slack = rep.rhs - rep.lhs;
  rep.holds = rep.slack >= -10.0 * q.abs_tolerance;
  return rep;
}

BoundReport check_theorem_43(const TestFunction& f, double x, int n, int k, int r,
                             const QuadratureConfig& q) {
  validate(OperatorParams{n, k, r});
  if (n < r + 2)
    throw ConstraintError("theorem 4.3 needs n >= r + 2 for gamma_n, got n=" + std::to_string(n));
  const TestFunction fr = f.derivative(r);
  if (!fr.has_analytic_omega1() || !fr.has_analytic_omega2())
    throw MissingModulusError("theorem 4.3 check needs both analytic moduli of " + fr.id());

  BoundReport rep;
  rep.theorem = "4.3";
  rep.n = n;
  rep.k = k;
  rep.r = r;
  rep.x = x;
  rep.function_id = f.id();
  rep.lhs = std::abs(eval::apply_mstar({n, k, r}, fr, x, q) - fr(x));

  const double shift = std::abs(2 * r - k + 1) * x / (n - r);
  const double gamma = std::sqrt(delta_n(n, k, r, x) + shift * shift);
  const double omega2 = fr.analytic_omega2(gamma);
  const double omega1 = fr.analytic_omega1(shift);
  constexpr double kReferenceC = 4.0; // context only, carries no pass/fail weight
  rep.rhs_components = {
      {"gamma_n", gamma}, {"omega2", omega2}, {"omega1", omega1}, {"reference_c", kReferenceC}};
  rep.rhs = kReferenceC * omega2 + omega1;
  rep.slack = rep.rhs - rep.lhs;
  rep.holds = rep.slack >= -10.0 * q.abs_tolerance;
  if (omega2 > 0.0)
    rep.empirical_c = std::max(0.0, rep.lhs - omega1) / omega2;
  return rep;
}

OrderReport check_order_lemma(int m, int k, int r, std::span<const int> n_values) {
  if (m < 0)
    throw ConstraintError("moment order must be non-negative");
  if (n_values.empty())
    throw LadderError("ladder of n values must not be empty");

  OrderReport rep;
  rep.m = m;
  rep.k = k;
  rep.r = r;
  rep.degenerate = true;
  const int scale_power = (m + 1) / 2;
  for (const int n : n_values) {
    validate(OperatorParams{n, k, r});
    if (m > n - k || m > n - r)
      throw MomentUndefinedError("order check needs m <= min(n-k, n-r) on the whole ladder");
    OrderRow row;
    row.n = n;
    row.coefficient = exact::mstar_central_moment({n, k, r}, m);
    row.scaled = std::pow(double(n), scale_power) * std::abs(to_double(row.coefficient));
    if (!rep.rows.empty() && rep.rows.back().scaled > 0.0)
      row.ratio = row.scaled / rep.rows.back().scaled;
    rep.degenerate = rep.degenerate && row.coefficient == 0;
    rep.rows.push_back(std::move(row));
  }
  if (rep.degenerate) {
    rep.pass = true;
  } else {
    rep.pass = true;
    for (const OrderRow& row : rep.rows)
      if (row.ratio && (*row.ratio < 0.3 || *row.ratio > 3.0))
        rep.pass = false;
    // a zero entry inside a non-degenerate ladder breaks the ratio chain
    for (size_t i = 1; i < rep.rows.size(); ++i)
      if (!rep.rows[i].ratio.has_value() && rep.rows[i - 1].scaled == 0.0)
        rep.pass = false;
  }
  return rep;
}

} // namespace gammaops::verify
