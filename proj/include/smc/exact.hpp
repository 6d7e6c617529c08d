#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace smc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Binomial coefficient; zero outside 0 <= k <= n.
BigInt binomial(int n, int k);
BigInt factorial(int n);

}  // namespace smc
