#include "gammaops/exact_moments.hpp"

#include "gammaops/errors.hpp"

#include <algorithm>
#include <string>

namespace gammaops::exact {

namespace {

// [x]_m for integer x >= m, as a big integer. Exact, O(m) multiplies.
BigInt falling_factorial_int(long long x, int m) {
  BigInt acc = 1;
  for (int i = 0; i < m; ++i)
    acc *= BigInt(x - i);
  return acc;
}

void require_moment_order(const OperatorParams& p, int m, int limit, const char* condition) {
  validate(p);
  if (m < 0)
    throw ConstraintError("moment order m must be non-negative, got m=" + std::to_string(m));
  if (m > limit)
    throw MomentUndefinedError("moment of order m=" + std::to_string(m) +
                               " undefined for (n=" + std::to_string(p.n) +
                               ", k=" + std::to_string(p.k) + ", r=" + std::to_string(p.r) +
                               "): requires " + condition);
}

} // namespace

Rational falling_factorial(const Rational& x, int m) {
  if (m < 0)
    throw ConstraintError("falling factorial order must be non-negative, got " + std::to_string(m));
  Rational acc = 1;
  for (int i = 0; i < m; ++i)
    acc *= x - i;
  return acc;
}

BigInt factorial(int n) {
  if (n < 0)
    throw ConstraintError("factorial of negative argument " + std::to_string(n));
  return falling_factorial_int(n, n);
}

BigInt binomial(int n, int j) {
  if (j < 0 || j > n)
    return 0;
  j = std::min(j, n - j);
  BigInt num = 1, den = 1;
  for (int i = 0; i < j; ++i) {
    num *= BigInt(n - i);
    den *= BigInt(i + 1);
  }
  return num / den; // exact: C(n,j) is an integer
}

Rational raw_moment(const OperatorParams& p, int m) {
  require_moment_order(p, m, p.n - p.k, "m <= n-k");
  return Rational(falling_factorial_int(p.n - p.k + m, m), falling_factorial_int(p.n, m));
}

Rational central_moment(const OperatorParams& p, int m) {
  require_moment_order(p, m, p.n - p.k, "m <= n-k");
  Rational acc = 0;
  for (int j = 0; j <= m; ++j) {
    const Rational term = Rational(binomial(m, j)) * raw_moment(p, m - j);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

Rational b_norm(const OperatorParams& p) {
  validate(p);
  // (n-r)!(n-k+r)!/(n!(n-k)!) = [n-k+r]_r / [n]_r
  return Rational(falling_factorial_int(p.n - p.k + p.r, p.r), falling_factorial_int(p.n, p.r));
}

Rational mstar_raw_moment(const OperatorParams& p, int m) {
  require_moment_order(p, m, p.n - p.r, "m <= n-r");
  // (n-r-m)!(n-k+r+m)!/((n-r)!(n-k+r)!) = [n-k+r+m]_m / [n-r]_m
  return Rational(falling_factorial_int(p.n - p.k + p.r + m, m),
                  falling_factorial_int(p.n - p.r, m));
}

Rational mstar_central_moment(const OperatorParams& p, int m) {
  require_moment_order(p, m, p.n - p.r, "m <= n-r");
  Rational acc = 0;
  for (int j = 0; j <= m; ++j) {
    const Rational term = Rational(binomial(m, j)) * mstar_raw_moment(p, m - j);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

Rational closed_form_mstar_central(const OperatorParams& p, int m) {
  validate(p);
  if (m < 0 || m > 4)
    throw ConstraintError("closed forms exist for m in 0..4 only, got m=" + std::to_string(m));
  if (p.n - p.r < m)
    throw ConstraintError("closed form denominator vanishes: need n-r >= m, got n-r=" +
                          std::to_string(p.n - p.r) + ", m=" + std::to_string(m));
  const BigInt n = p.n, k = p.k, r = p.r;
  switch (m) {
  case 0:
    return 1;
  case 1:
    return Rational(BigInt(2 * r - k + 1), BigInt(n - r));
  case 2:
    return Rational(BigInt(4 * r * r + 4 * r * (2 - k) + 2 * n + k * k - 5 * k + 4),
                    BigInt((n - r) * (n - r - 1)));
  case 3: {
    const BigInt c = 8 * r * r * r + r * r * (36 - 2 * k) +
                     r * (51 + 14 * n - 42 * k + 6 * k * k) - k * k * k + 12 * k * k - 34 * k -
                     n * n + n * (17 - 6 * k - 6 * k * k + 2 * k * r) + 21;
    return Rational(c, BigInt((n - r) * (n - r - 1) * (n - r - 2)));
  }
  default: {
    const BigInt d = 16 * r * r * r * r + r * r * r * (128 - 32 * k) +
                     r * r * (348 + 48 * n - 216 * k + 24 * k * k) +
                     r * (366 + 177 * n + k * (6 * n * n - 54 * n - 440) + 120 * k * k -
                          8 * k * k * k) +
                     k * k * k * k + k * k * k * (4 * n - 22) + 139 * k * k -
                     k * (245 + 116 * n) + 24 * n * n + 131 * n + 100;
    return Rational(d, BigInt((n - r) * (n - r - 1) * (n - r - 2) * (n - r - 3)));
  }
  }
}

} // namespace gammaops::exact
