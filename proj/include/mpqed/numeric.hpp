#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace mpqed {

// Exact integer / rational arithmetic used throughout the kernel.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Int int_gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// gcd on nonnegative rationals: gcd(a/b, c/d) = gcd(a,c)/lcm(b,d).
inline Rat rat_gcd(const Rat& a, const Rat& b) {
    if (a == 0) return b < 0 ? Rat(-b) : b;
    if (b == 0) return a < 0 ? Rat(-a) : a;
    Int n = int_gcd(rat_num(a), rat_num(b));
    Int d = int_lcm(rat_den(a), rat_den(b));
    if (n < 0) n = -n;
    return Rat(n, d);
}

inline int rat_sign(const Rat& q) { return q < 0 ? -1 : (q > 0 ? 1 : 0); }

inline double rat_to_double(const Rat& q) { return q.convert_to<double>(); }

inline Rat rat_factorial(int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rat(f);
}

}  // namespace mpqed
