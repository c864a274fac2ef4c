#include "gammaops/params.hpp"

#include "gammaops/errors.hpp"

#include <string>

namespace gammaops {

void validate(const OperatorParams& p) {
  if (p.n < 1)
    throw ConstraintError("operator parameter n must be >= 1, got n=" + std::to_string(p.n));
  if (p.k < 1 || p.k > p.n)
    throw ConstraintError("operator parameter k must satisfy 1 <= k <= n, got k=" +
                          std::to_string(p.k) + ", n=" + std::to_string(p.n));
  if (p.r < 0 || p.r > p.n)
    throw ConstraintError("operator parameter r must satisfy 0 <= r <= n, got r=" +
                          std::to_string(p.r) + ", n=" + std::to_string(p.n));
}

OperatorParams make_special(SpecialFamily family, int n) {
  OperatorParams p;
  switch (family) {
  case SpecialFamily::F:
    p = OperatorParams{n, 1, 0};
    break;
  case SpecialFamily::L:
    p = OperatorParams{n + 2, 2, 0};
    break;
  }
  validate(p);
  return p;
}

} // namespace gammaops
