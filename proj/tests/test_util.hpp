#pragma once

#include "doctest.h"

#include "pbern/xops.hpp"

namespace testutil {

using namespace pbern;

inline Rational q(long long num, long long den = 1) { return Rational(num, den); }

inline XPolynomial xp(std::initializer_list<Rational> coeffs) {
    return poly_from_rationals(std::vector<Rational>(coeffs));
}

inline LambdaPoly lp(std::initializer_list<Rational> coeffs) {
    return LambdaPoly(std::vector<Rational>(coeffs));
}

inline RingValue rv(long long num, long long den = 1) { return RingValue(Rational(num, den)); }
inline RingValue lv(std::initializer_list<Rational> coeffs) { return RingValue(lp(coeffs)); }

// tiny ordinary-coefficient polynomial product, used by test oracles only
inline std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

} // namespace testutil
