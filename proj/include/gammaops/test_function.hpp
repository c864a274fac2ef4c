#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gammaops {

/// A function on (0,inf) bundled with analytic derivatives, a polynomial
/// growth descriptor, sup-norm bounds, and (where tractable) closed-form
/// moduli of continuity/smoothness for each derivative order.
class TestFunction {
public:
  using Fn = std::function<double(double)>;

  /// Closed-form moduli of f^(order). Either entry may be absent (the
  /// corresponding modulus is infinite or has no tractable closed form).
  struct Moduli {
    std::optional<Fn> omega1; ///< delta -> sup_{0<h<=delta} sup_x |f(x+h)-f(x)|
    std::optional<Fn> omega2; ///< delta -> sup_{0<h<=delta} sup_x |f(x+2h)-2f(x+h)+f(x)|
  };

  TestFunction() = default;
  TestFunction(std::string id, double growth_alpha, std::vector<Fn> orders,
               std::vector<double> sup_by_order, std::vector<Moduli> moduli_by_order);

  const std::string& id() const { return id_; }

  /// Highest analytic derivative order available (D).
  int max_derivative() const { return static_cast<int>(orders_.size()) - 1; }

  /// Declared polynomial growth: |f(t)| = O(t^alpha) as t -> inf.
  double growth_alpha() const { return growth_alpha_; }

  /// Growth order of f^(r): max(0, alpha - r).
  double growth_of_derivative(int r) const;

  bool bounded() const;
  /// Finite sup-norm bound; only meaningful when bounded().
  double sup_norm() const { return sup_by_order_.at(0); }
  double sup_of_derivative(int r) const { return sup_by_order_.at(static_cast<size_t>(r)); }

  double operator()(double t) const { return orders_[0](t); }
  double eval(double t) const { return orders_[0](t); }
  /// f^(r)(t); throws MissingDerivativeError when r > D.
  double derivative_at(int r, double t) const;

  /// The test function f^(r), with derivative list, growth, bounds and
  /// moduli shifted accordingly. derivative(0) is a copy of *this.
  TestFunction derivative(int r) const;

  bool has_analytic_omega1() const;
  bool has_analytic_omega2() const;
  double analytic_omega1(double delta) const;
  double analytic_omega2(double delta) const;

private:
  void require_order(int r) const;

  std::string id_;
  double growth_alpha_ = 0.0;
  std::vector<Fn> orders_;              // index r -> f^(r); orders_[0] is f
  std::vector<double> sup_by_order_;    // +inf marks an unbounded order
  std::vector<Moduli> moduli_by_order_; // parallel to orders_
};

/// Named builtin suite: exp-neg, inv-1pt, t-over-1pt, one, t, t2, t3, t4,
/// sin-exp. Throws ConstraintError for unknown ids.
const TestFunction& builtin(const std::string& id);

/// Ids of all builtins, in registry order.
std::vector<std::string> builtin_ids();

} // namespace gammaops
