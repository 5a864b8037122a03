#pragma once

#include <optional>
#include <string>
#include <variant>

#include "pbern/polynomial.hpp"

namespace pbern {

enum class Mode { rational, lambda };

inline const char* mode_name(Mode m) { return m == Mode::rational ? "RationalMode" : "LambdaMode"; }

/**
 * Exact coefficient carrier: a rational, or a dense polynomial in lambda
 * over the rationals. Every computation fixes one mode; combining values of
 * different modes is a contract violation and throws ModeError — lambda is
 * never silently promoted to a number. Division is defined only by nonzero
 * rationals (the units of Q[lambda]), plus exact shift-down by powers of
 * lambda for values that are divisible.
 */
class RingValue {
  public:
    RingValue() : v_(Rational(0)) {}
    explicit RingValue(Rational q) : v_(std::move(q)) {}
    explicit RingValue(LambdaPoly p) : v_(std::move(p)) {}

    static RingValue zero(Mode m) {
        return m == Mode::rational ? RingValue(Rational(0)) : RingValue(LambdaPoly());
    }
    static RingValue one(Mode m) {
        return m == Mode::rational ? RingValue(Rational(1)) : RingValue(LambdaPoly::constant(Rational(1)));
    }
    // The value lambda itself (LambdaMode) — the symbolic parameter.
    static RingValue lambda() { return RingValue(lambda_monomial()); }
    static RingValue of(Rational q, Mode m) {
        if (m == Mode::rational) return RingValue(std::move(q));
        return RingValue(LambdaPoly::constant(std::move(q)));
    }

    Mode mode() const { return std::holds_alternative<Rational>(v_) ? Mode::rational : Mode::lambda; }
    const Rational& rational_value() const {
        if (mode() != Mode::rational) throw ModeError("rational_value on LambdaMode value");
        return std::get<Rational>(v_);
    }
    const LambdaPoly& lambda_value() const {
        if (mode() != Mode::lambda) throw ModeError("lambda_value on RationalMode value");
        return std::get<LambdaPoly>(v_);
    }

    friend RingValue operator+(const RingValue& a, const RingValue& b) {
        check_modes(a, b, "add");
        if (a.mode() == Mode::rational) return RingValue(a.rational_value() + b.rational_value());
        return RingValue(a.lambda_value() + b.lambda_value());
    }
    friend RingValue operator-(const RingValue& a, const RingValue& b) {
        check_modes(a, b, "sub");
        if (a.mode() == Mode::rational) return RingValue(a.rational_value() - b.rational_value());
        return RingValue(a.lambda_value() - b.lambda_value());
    }
    friend RingValue operator*(const RingValue& a, const RingValue& b) {
        check_modes(a, b, "mul");
        if (a.mode() == Mode::rational) return RingValue(a.rational_value() * b.rational_value());
        return RingValue(a.lambda_value() * b.lambda_value());
    }
    RingValue operator-() const {
        return scale_rat(*this, Rational(-1));
    }
    friend bool operator==(const RingValue& a, const RingValue& b) {
        if (a.mode() != b.mode()) return false;
        if (a.mode() == Mode::rational) return a.rational_value() == b.rational_value();
        return a.lambda_value() == b.lambda_value();
    }
    friend bool operator!=(const RingValue& a, const RingValue& b) { return !(a == b); }

    friend RingValue scale_rat(const RingValue& v, const Rational& s) {
        if (v.mode() == Mode::rational) return RingValue(v.rational_value() * s);
        return RingValue(scale_rat(v.lambda_value(), s));
    }
    friend RingValue div_rat(const RingValue& v, const Rational& s) {
        if (s == 0) throw ZeroDivisionError("RingValue division by zero rational");
        if (v.mode() == Mode::rational) return RingValue(v.rational_value() / s);
        return RingValue(div_rat(v.lambda_value(), s));
    }
    friend bool is_zero(const RingValue& v) {
        if (v.mode() == Mode::rational) return v.rational_value() == 0;
        return v.lambda_value().is_zero_poly();
    }

    // Nonzero rational content of a unit: a RationalMode value, or a
    // degree-0 LambdaMode value. Empty when the value is zero or has
    // positive lambda-degree.
    std::optional<Rational> as_rational_unit() const {
        if (mode() == Mode::rational) {
            const Rational& q = rational_value();
            if (q == 0) return std::nullopt;
            return q;
        }
        const LambdaPoly& p = lambda_value();
        if (p.degree() != 0) return std::nullopt;
        return p.coeff(0);
    }

    friend RingValue zero_like(const RingValue& v) { return RingValue::zero(v.mode()); }
    friend RingValue one_like(const RingValue& v) { return RingValue::one(v.mode()); }

  private:
    static void check_modes(const RingValue& a, const RingValue& b, const char* op) {
        if (a.mode() != b.mode())
            throw ModeError(std::string("mode mismatch in RingValue ") + op + ": " + mode_name(a.mode()) +
                            " vs " + mode_name(b.mode()));
    }
    std::variant<Rational, LambdaPoly> v_;
};

// Polynomial evaluation at a rational lambda; at = 0 extracts the constant
// coefficient (the lambda -> 0 limit).
inline Rational eval_lambda(const RingValue& v, const Rational& at) {
    return eval_at(v.lambda_value(), at);
}

// Exact division by lambda^k; requires the k lowest coefficients to vanish.
inline RingValue div_lambda_power(const RingValue& v, int k) {
    if (k == 0) return v;
    const LambdaPoly& p = v.lambda_value();
    if (p.is_zero_poly()) return v;
    if (p.degree() < k) throw ZeroDivisionError("value not divisible by lambda^k");
    std::vector<Rational> out;
    for (int i = 0; i <= p.degree(); ++i) {
        if (i < k) {
            if (p.coeff(i) != 0) throw ZeroDivisionError("value not divisible by lambda^k");
        } else {
            out.push_back(p.coeff(i));
        }
    }
    return RingValue(LambdaPoly(std::move(out)));
}

// (x)_{n,step} = x(x-step)(x-2 step)...(x-(n-1) step); (x)_{0,step} = 1.
inline RingValue falling_factorial(const RingValue& x, int n, const RingValue& step) {
    if (n < 0) throw PreconditionError("falling_factorial: n must be >= 0");
    RingValue acc = one_like(x);
    RingValue offset = zero_like(x);
    for (int i = 0; i < n; ++i) {
        acc = acc * (x - offset);
        offset = offset + step;
    }
    return acc;
}

// Mode lifts: embed a rational into the target mode.
inline RingValue lift_to(const RingValue& v, Mode m) {
    if (v.mode() == m) return v;
    if (v.mode() == Mode::rational && m == Mode::lambda)
        return RingValue(LambdaPoly::constant(v.rational_value()));
    throw ModeError("cannot lower a LambdaMode value to RationalMode; use eval_lambda");
}

std::string ring_to_string(const RingValue& v);
RingValue parse_ring_value(std::string_view text, Mode m);

} // namespace pbern
