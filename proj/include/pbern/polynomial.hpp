#pragma once

#include <vector>

#include "pbern/errors.hpp"
#include "pbern/rational.hpp"

namespace pbern {

// Rational as a coefficient ring. Declared ahead of the template so ordinary
// lookup at the definition point finds them (Rational lives in boost's
// namespace, so ADL would not).
inline Rational scale_rat(const Rational& v, const Rational& s) { return v * s; }
inline Rational div_rat(const Rational& v, const Rational& s) { return rat_div(v, s); }
inline bool is_zero(const Rational& v) { return v == 0; }

/**
 * Dense univariate polynomial over an exact coefficient ring, ascending
 * degree order. Canonical form: no trailing zero coefficient; the zero
 * polynomial stores nothing. The ring must provide +, -, *, ==, is_zero,
 * scaling by Rational and exact division by a nonzero Rational (free
 * functions scale_rat / div_rat, found by ADL).
 *
 * Instantiated with Rational (polynomials in the parameter lambda) and with
 * RingValue (polynomials in x whose coefficients may themselves be
 * lambda-polynomials).
 */
template <class Ring>
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Ring> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial constant(Ring v) {
        std::vector<Ring> c;
        if (!is_zero(v)) c.push_back(std::move(v));
        return Polynomial(std::move(c));
    }

    bool is_zero_poly() const { return c_.empty(); }
    // Degree of the zero polynomial is reported as -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Ring>& coeffs() const { return c_; }

    const Ring& coeff(int i) const {
        if (i < 0 || i > degree()) throw PreconditionError("polynomial coefficient index out of range");
        return c_[static_cast<std::size_t>(i)];
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        const auto& lo = a.c_.size() <= b.c_.size() ? a.c_ : b.c_;
        const auto& hi = a.c_.size() <= b.c_.size() ? b.c_ : a.c_;
        std::vector<Ring> out = hi;
        for (std::size_t i = 0; i < lo.size(); ++i) out[i] = out[i] + lo[i];
        return Polynomial(std::move(out));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<Ring> out = a.c_;
        out.reserve(std::max(a.c_.size(), b.c_.size()));
        while (out.size() < b.c_.size()) out.push_back(scale_rat(b.c_[out.size()], Rational(0)));
        for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] = out[i] - b.c_[i];
        return Polynomial(std::move(out));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.c_.empty() || b.c_.empty()) return Polynomial();
        std::vector<Ring> out;
        out.reserve(a.c_.size() + b.c_.size() - 1);
        for (std::size_t k = 0; k + 1 < a.c_.size() + b.c_.size(); ++k) {
            std::size_t i0 = k >= b.c_.size() ? k - b.c_.size() + 1 : 0;
            Ring acc = a.c_[i0] * b.c_[k - i0];
            for (std::size_t i = i0 + 1; i < a.c_.size() && i <= k; ++i) acc = acc + a.c_[i] * b.c_[k - i];
            out.push_back(std::move(acc));
        }
        return Polynomial(std::move(out));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    friend Polynomial scale_rat(const Polynomial& p, const Rational& s) {
        if (s == 0) return Polynomial();
        std::vector<Ring> out;
        out.reserve(p.c_.size());
        for (const auto& c : p.c_) out.push_back(scale_rat(c, s));
        return Polynomial(std::move(out));
    }

    friend Polynomial div_rat(const Polynomial& p, const Rational& s) {
        if (s == 0) throw ZeroDivisionError("polynomial division by zero rational");
        std::vector<Ring> out;
        out.reserve(p.c_.size());
        for (const auto& c : p.c_) out.push_back(div_rat(c, s));
        return Polynomial(std::move(out));
    }

    friend bool is_zero(const Polynomial& p) { return p.c_.empty(); }

    // Ring-element scaling (coefficient of an umbral composition, etc.).
    friend Polynomial scale_ring(const Polynomial& p, const Ring& v) {
        if (is_zero(v)) return Polynomial();
        std::vector<Ring> out;
        out.reserve(p.c_.size());
        for (const auto& c : p.c_) out.push_back(c * v);
        return Polynomial(std::move(out));
    }

    Ring evaluate(const Ring& at) const {
        if (c_.empty()) return scale_rat(at, Rational(0));
        Ring acc = c_.back();
        for (int i = degree() - 1; i >= 0; --i) acc = acc * at + c_[static_cast<std::size_t>(i)];
        return acc;
    }

  private:
    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }
    std::vector<Ring> c_;
};

// Polynomial in the degeneracy parameter lambda over Q.
using LambdaPoly = Polynomial<Rational>;

inline LambdaPoly lambda_monomial(int k = 1, const Rational& c = Rational(1)) {
    std::vector<Rational> v(static_cast<std::size_t>(k) + 1, Rational(0));
    v.back() = c;
    return LambdaPoly(std::move(v));
}

inline Rational eval_at(const LambdaPoly& p, const Rational& at) {
    Rational acc = 0;
    for (int i = p.degree(); i >= 0; --i) acc = acc * at + p.coeff(i);
    return acc;
}

} // namespace pbern
