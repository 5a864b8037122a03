#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "pbern/errors.hpp"

namespace pbern {

// Exact scalar arithmetic. Rational is arbitrary-precision, always stored in
// lowest terms with positive denominator (maintained by the backend and
// re-checked in tests). Canonical text form is "num/den", or "num" when the
// denominator is 1.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string rat_to_string(const Rational& q);
Rational parse_rational(std::string_view text);

inline Rational rat_div(const Rational& a, const Rational& b) {
    if (b == 0) throw ZeroDivisionError("division by zero rational");
    return a / b;
}

// H_0 = 0, H_n = 1 + 1/2 + ... + 1/n.
Rational harmonic(int n);

Rational factorial(int n);
Rational binomial(int n, int k);

// (x)_k = x(x-1)...(x-k+1); step variant (x)_{k,step} = prod_{i<k} (x - i*step).
Rational falling(const Rational& x, int k);
Rational falling_step(const Rational& x, int k, const Rational& step);
Rational rising(const Rational& x, int k);

Rational pow_rational(const Rational& base, int exp); // exp may be negative (base != 0)

// Classical Stirling triangles by recurrence, entries [n][k] for 0<=k<=n<=nmax.
// S2: x^n = sum S2(n,k)(x)_k.  S1 signed: (x)_n = sum S1(n,k)x^k.
std::vector<std::vector<Rational>> stirling2_triangle(int nmax);
std::vector<std::vector<Rational>> stirling1_triangle(int nmax);

} // namespace pbern
