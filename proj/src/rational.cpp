#include "pbern/rational.hpp"

#include <cctype>

namespace pbern {

std::string rat_to_string(const Rational& q) {
    BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
    auto bad = [&] { return PreconditionError("malformed rational: '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    auto parse_int = [&](std::string_view s) -> BigInt {
        if (s.empty()) throw bad();
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw bad();
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw bad();
        return BigInt(std::string(s));
    };
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den <= 0) throw bad(); // canonical text keeps the sign on the numerator
    return Rational(num, den);
}

Rational harmonic(int n) {
    if (n < 0) throw PreconditionError("harmonic: n must be >= 0");
    Rational h = 0;
    for (int i = 1; i <= n; ++i) h += Rational(1, i);
    return h;
}

Rational factorial(int n) {
    if (n < 0) throw PreconditionError("factorial: n must be >= 0");
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

Rational binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt num = 1;
    for (int i = 0; i < k; ++i) num *= (n - i);
    BigInt den = 1;
    for (int i = 2; i <= k; ++i) den *= i;
    return Rational(num, den);
}

Rational falling(const Rational& x, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= (x - i);
    return r;
}

Rational falling_step(const Rational& x, int k, const Rational& step) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= (x - step * i);
    return r;
}

Rational rising(const Rational& x, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= (x + i);
    return r;
}

Rational pow_rational(const Rational& base, int exp) {
    if (exp < 0) {
        if (base == 0) throw ZeroDivisionError("pow: zero base with negative exponent");
        return rat_div(Rational(1), pow_rational(base, -exp));
    }
    Rational r = 1, b = base;
    int e = exp;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::vector<std::vector<Rational>> stirling2_triangle(int nmax) {
    std::vector<std::vector<Rational>> s(nmax + 1);
    for (int n = 0; n <= nmax; ++n) s[n].assign(n + 1, Rational(0));
    s[0][0] = 1;
    for (int n = 1; n <= nmax; ++n)
        for (int k = 1; k <= n; ++k)
            s[n][k] = (k < n ? Rational(k) * s[n - 1][k] : Rational(0)) + s[n - 1][k - 1];
    return s;
}

std::vector<std::vector<Rational>> stirling1_triangle(int nmax) {
    std::vector<std::vector<Rational>> s(nmax + 1);
    for (int n = 0; n <= nmax; ++n) s[n].assign(n + 1, Rational(0));
    s[0][0] = 1;
    for (int n = 1; n <= nmax; ++n)
        for (int k = 1; k <= n; ++k)
            s[n][k] = s[n - 1][k - 1] - (k < n ? Rational(n - 1) * s[n - 1][k] : Rational(0));
    return s;
}

} // namespace pbern
