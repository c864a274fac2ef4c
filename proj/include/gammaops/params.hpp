#pragma once

namespace gammaops {

/// Identifies one operator instance M_{n,k} together with the derivative
/// order r used by the derivative and auxiliary forms.
struct OperatorParams {
  int n = 1; ///< kernel size, n >= 1
  int k = 1; ///< kernel shift, 1 <= k <= n
  int r = 0; ///< derivative order, 0 <= r <= n
};

/// Throws ConstraintError unless n >= 1, 1 <= k <= n and 0 <= r <= n.
void validate(const OperatorParams& p);

/// The two classical special cases of M_{n,k}.
enum class SpecialFamily {
  F, ///< F_n = M_{n,1}
  L, ///< L_n = M_{n+2,2}
};

/// Maps a named special operator to its (n, k, r) triple.
OperatorParams make_special(SpecialFamily family, int n);

} // namespace gammaops
