#pragma once

#include "gammaops/params.hpp"
#include "gammaops/quadrature.hpp"
#include "gammaops/test_function.hpp"

namespace gammaops::eval {

/// log K_{n,k}(x,t), the kernel of M_{n,k}, as log-gamma combinations.
/// Finite for every valid input even when K itself leaves double range.
double kernel_log(const OperatorParams& p, double x, double t);

/// M_{n,k}(f; x) by quadrature. Requires f's growth order <= n-k-1 (order 0,
/// i.e. bounded growth, is always admissible). p.r is ignored. Internally the
/// substitution t = x v, u = v/(1+v) turns the integral into a
/// Beta(n-k+1, n+1) expectation of f(x u/(1-u)) on (0,1).
double apply(const OperatorParams& p, const TestFunction& f, double x, const QuadratureConfig& q);

/// M^(r)_{n,k}(f; x) = b(n,k,r) * M*_{n,k,r}(f^(r); x); requires the analytic
/// r-th derivative and growth of f^(r) <= n-r-1. r = 0 reproduces apply().
double apply_derivative(const OperatorParams& p, const TestFunction& f, double x,
                        const QuadratureConfig& q);

/// Normalized auxiliary operator M*_{n,k,r}(g; x): a Beta(n-k+r+1, n-r+1)
/// expectation of g(x u/(1-u)). Requires growth of g <= n-r-1.
double apply_mstar(const OperatorParams& p, const TestFunction& g, double x,
                   const QuadratureConfig& q);

/// Background operator G_n(f; x): a Gamma(n+1) expectation of f(n x / s).
/// Requires f's growth order <= n-1 so the expectation converges.
double apply_gn(int n, const TestFunction& f, double x, const QuadratureConfig& q);

} // namespace gammaops::eval
