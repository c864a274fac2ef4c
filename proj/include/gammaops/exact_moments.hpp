#pragma once

#include "gammaops/params.hpp"
#include "gammaops/rational.hpp"

namespace gammaops::exact {

/// Falling factorial [x]_m = x(x-1)...(x-m+1), with [x]_0 = 1.
Rational falling_factorial(const Rational& x, int m);

/// n! for n >= 0.
BigInt factorial(int n);

/// Binomial coefficient C(n, j); 0 when j < 0 or j > n.
BigInt binomial(int n, int j);

/// Coefficient of x^m in M_{n,k}(t^m; x), i.e. [n-k+m]_m / [n]_m.
/// Requires m <= n-k (the integral diverges beyond); p.r is ignored.
Rational raw_moment(const OperatorParams& p, int m);

/// Coefficient of x^m in M_{n,k}((t-x)^m; x), via the alternating binomial
/// sum over raw moments. Requires m <= n-k; p.r is ignored.
Rational central_moment(const OperatorParams& p, int m);

/// Normalizer b(n,k,r) = (n-r)!(n-k+r)!/(n!(n-k)!).
Rational b_norm(const OperatorParams& p);

/// Coefficient of x^m in M*_{n,k,r}(t^m; x):
/// (n-r-m)!(n-k+r+m)!/((n-r)!(n-k+r)!). Requires m <= n-r.
Rational mstar_raw_moment(const OperatorParams& p, int m);

/// Coefficient of x^m in M*_{n,k,r}((t-x)^m; x) via the alternating binomial
/// sum over mstar_raw_moment. Requires m <= n-r. This is the ground-truth
/// oracle for closed_form_mstar_central.
Rational mstar_central_moment(const OperatorParams& p, int m);

/// The published closed forms for M*_{n,k,r}((t-x)^m; x), m in 0..4,
/// evaluated verbatim -- including the order-3 and order-4 numerator
/// polynomials, which do NOT agree with the binomial-sum oracle (see the
/// test suite, which surfaces the discrepancy). Requires n-r >= m.
Rational closed_form_mstar_central(const OperatorParams& p, int m);

} // namespace gammaops::exact
