#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace gammaops {

// Exact arithmetic backing for all moment formulas. cpp_rational keeps the
// fraction reduced; no rounding happens anywhere in the exact modules.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

} // namespace gammaops
