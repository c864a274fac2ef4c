#include "gammaops/operator_eval.hpp"

#include "gammaops/errors.hpp"
#include "gammaops/exact_moments.hpp"

#include <cmath>
#include <string>

namespace gammaops::eval {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0))
    throw DomainError(std::string(name) + " must be positive, got " + std::to_string(v));
}

// Growth order 0 (bounded growth) is always admissible: the transformed
// kernel is a probability density. Positive orders hit the moment threshold.
void require_growth(double alpha, int limit, const char* what) {
  if (alpha > 0.0 && alpha > double(limit))
    throw GrowthError(std::string(what) + ": declared growth order " + std::to_string(alpha) +
                      " exceeds admissible limit " + std::to_string(limit));
}

// Beta(a,b) expectation of g(x u/(1-u)); the exact transformed form of
// M*_{n,k,r} with a = n-k+r+1, b = n-r+1 (and of M_{n,k} at r = 0).
double beta_expectation(int a, int b, const TestFunction& g, double x,
                        const QuadratureConfig& q) {
  const double log_norm = std::lgamma(double(a)) + std::lgamma(double(b)) -
                          std::lgamma(double(a) + double(b));
  const auto log_weight = [a, b, log_norm](double u) {
    const double lu = (a > 1) ? (a - 1) * std::log(u) : 0.0;
    const double l1mu = (b > 1) ? (b - 1) * std::log1p(-u) : 0.0;
    return lu + l1mu - log_norm;
  };
  const double mode = (a + b > 2) ? double(a - 1) / double(a + b - 2) : 0.5;
  const auto value = [&g, x](double u) { return g.eval(x * u / (1.0 - u)); };
  return quadrature::integrate_peaked_unit(log_weight, value, mode, q);
}

double mstar_core(const OperatorParams& p, const TestFunction& g, double x,
                  const QuadratureConfig& q) {
  return beta_expectation(p.n - p.k + p.r + 1, p.n - p.r + 1, g, x, q);
}

} // namespace

double kernel_log(const OperatorParams& p, double x, double t) {
  validate(p);
  require_positive(x, "x");
  require_positive(t, "t");
  const double n = p.n, k = p.k;
  return std::lgamma(2 * n - k + 2) - std::lgamma(n + 1) - std::lgamma(n - k + 1) +
         (n + 1) * std::log(x) + (n - k) * std::log(t) - (2 * n - k + 2) * std::log(x + t);
}

double apply(const OperatorParams& p, const TestFunction& f, double x, const QuadratureConfig& q) {
  validate(p);
  require_positive(x, "x");
  require_growth(f.growth_alpha(), p.n - p.k - 1, "apply");
  const OperatorParams base{p.n, p.k, 0};
  return mstar_core(base, f, x, q);
}

double apply_derivative(const OperatorParams& p, const TestFunction& f, double x,
                        const QuadratureConfig& q) {
  validate(p);
  require_positive(x, "x");
  const TestFunction fr = f.derivative(p.r); // throws MissingDerivativeError
  require_growth(fr.growth_alpha(), p.n - p.r - 1, "apply_derivative");
  const double b = to_double(exact::b_norm(p)); // exactly 1.0 when r = 0
  return b * mstar_core(p, fr, x, q);
}

double apply_mstar(const OperatorParams& p, const TestFunction& g, double x,
                   const QuadratureConfig& q) {
  validate(p);
  require_positive(x, "x");
  require_growth(g.growth_alpha(), p.n - p.r - 1, "apply_mstar");
  return mstar_core(p, g, x, q);
}

double apply_gn(int n, const TestFunction& f, double x, const QuadratureConfig& q) {
  if (n < 1)
    throw ConstraintError("G_n requires n >= 1, got n=" + std::to_string(n));
  require_positive(x, "x");
  require_growth(f.growth_alpha(), n - 1, "apply_gn");

  // Substitute s = x u in the defining integral: G_n(f;x) = E[f(n x / S)]
  // with S ~ Gamma(n+1). Map to (0,1) via s = c u/(1-u), c = n+1.
  const double c = double(n) + 1.0;
  const double log_norm = std::lgamma(double(n) + 1.0);
  const auto log_weight = [n, c, log_norm](double u) {
    const double s = c * u / (1.0 - u);
    return n * std::log(s) - s - log_norm + std::log(c) - 2.0 * std::log1p(-u);
  };
  // argmax of log_weight: root of 2u^2 + (n + c - 2)u - n = 0 in (0,1)
  const double bq = double(n) + c - 2.0;
  const double mode = (-bq + std::sqrt(bq * bq + 8.0 * n)) / 4.0;
  const auto value = [&f, n, x, c](double u) { return f.eval(n * x * (1.0 - u) / (c * u)); };
  return quadrature::integrate_peaked_unit(log_weight, value, mode, q);
}

} // namespace gammaops::eval
