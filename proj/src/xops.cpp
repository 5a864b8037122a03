#include "pbern/xops.hpp"

namespace pbern {

XPolynomial x_monomial(int n, Mode m) {
    std::vector<RingValue> c(static_cast<std::size_t>(n) + 1, RingValue::zero(m));
    c.back() = RingValue::one(m);
    return XPolynomial(std::move(c));
}

XPolynomial constant_poly(const RingValue& c) { return XPolynomial::constant(c); }

XPolynomial poly_from_rationals(const std::vector<Rational>& coeffs, Mode m) {
    std::vector<RingValue> c;
    c.reserve(coeffs.size());
    for (const auto& q : coeffs) c.push_back(RingValue::of(q, m));
    return XPolynomial(std::move(c));
}

XPolynomial lift_lambda(const XPolynomial& p) {
    std::vector<RingValue> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.push_back(lift_to(v, Mode::lambda));
    return XPolynomial(std::move(c));
}

XPolynomial eval_lambda_poly(const XPolynomial& p, const Rational& at) {
    std::vector<RingValue> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.emplace_back(eval_lambda(v, at));
    return XPolynomial(std::move(c));
}

XPolynomial derivative(const XPolynomial& p, int times) {
    XPolynomial q = p;
    for (int t = 0; t < times; ++t) {
        if (q.degree() <= 0) return XPolynomial();
        std::vector<RingValue> c;
        c.reserve(static_cast<std::size_t>(q.degree()));
        for (int i = 1; i <= q.degree(); ++i) c.push_back(scale_rat(q.coeff(i), Rational(i)));
        q = XPolynomial(std::move(c));
    }
    return q;
}

XPolynomial shift(const XPolynomial& p, const RingValue& c) {
    if (p.is_zero_poly()) return p;
    int d = p.degree();
    std::vector<RingValue> out(static_cast<std::size_t>(d) + 1, zero_like(c));
    for (int m = 0; m <= d; ++m) {
        const RingValue& pm = p.coeff(m);
        if (is_zero(pm)) continue;
        RingValue cp = one_like(c); // c^{m-j}, built down from j = m
        for (int j = m; j >= 0; --j) {
            out[static_cast<std::size_t>(j)] =
                out[static_cast<std::size_t>(j)] + scale_rat(pm * cp, binomial(m, j));
            if (j > 0) cp = cp * c;
        }
    }
    return XPolynomial(std::move(out));
}

RingValue eval_poly(const XPolynomial& p, const RingValue& at) {
    if (p.is_zero_poly()) return zero_like(at);
    RingValue acc = p.coeff(p.degree());
    for (int i = p.degree() - 1; i >= 0; --i) acc = acc * at + p.coeff(i);
    return acc;
}

RingValue eval_at_zero(const XPolynomial& p, Mode m) {
    if (p.is_zero_poly()) return RingValue::zero(m);
    return p.coeff(0);
}

XPolynomial apply_operator(const Series& f, const XPolynomial& p) {
    if (p.is_zero_poly()) return p;
    if (f.order() < p.degree())
        throw OrderError("apply_operator: series order below polynomial degree");
    int d = p.degree();
    std::vector<RingValue> out(static_cast<std::size_t>(d) + 1, zero_like(f.coeff(0)));
    for (int m = 0; m <= d; ++m) {
        const RingValue& pm = p.coeff(m);
        if (is_zero(pm)) continue;
        for (int k = 0; k <= m; ++k)
            out[static_cast<std::size_t>(m - k)] =
                out[static_cast<std::size_t>(m - k)] + scale_rat(pm * f.coeff(k), binomial(m, k));
    }
    return XPolynomial(std::move(out));
}

RingValue functional(const Series& f, const XPolynomial& p) {
    XPolynomial q = apply_operator(f, p);
    return eval_at_zero(q, f.coeff(0).mode());
}

XPolynomial forward_diff(const XPolynomial& p, const RingValue& step, int order) {
    if (order < 0) throw PreconditionError("forward_diff: order must be >= 0");
    XPolynomial q = p;
    for (int i = 0; i < order; ++i) q = shift(q, step) - q;
    return q;
}

RingValue integrate_unit(const XPolynomial& p, Mode m) {
    if (p.is_zero_poly()) return RingValue::zero(m);
    RingValue acc = div_rat(p.coeff(0), Rational(1));
    for (int i = 1; i <= p.degree(); ++i) acc = acc + div_rat(p.coeff(i), Rational(i + 1));
    return acc;
}

XPolynomial operator_I(const XPolynomial& p, const RingValue& step, int power) {
    if (power < 0) throw PreconditionError("operator_I: power must be >= 0");
    XPolynomial q = p;
    for (int i = 0; i < power; ++i) {
        if (q.is_zero_poly()) return q;
        // antiderivative with zero constant term, then difference of shifts
        std::vector<RingValue> anti(static_cast<std::size_t>(q.degree()) + 2, zero_like(step));
        for (int j = 0; j <= q.degree(); ++j)
            anti[static_cast<std::size_t>(j) + 1] = div_rat(q.coeff(j), Rational(j + 1));
        XPolynomial big(std::move(anti));
        q = shift(big, step) - big;
    }
    return q;
}

XPolynomial umbral_compose(const XPolynomial& q, const std::vector<XPolynomial>& sequence) {
    if (q.is_zero_poly()) return q;
    if (static_cast<int>(sequence.size()) <= q.degree())
        throw PreconditionError("umbral_compose: sequence shorter than polynomial degree");
    XPolynomial acc;
    for (int k = 0; k <= q.degree(); ++k) acc = acc + scale_ring(sequence[static_cast<std::size_t>(k)], q.coeff(k));
    return acc;
}

XPolynomial falling_poly(int n, const RingValue& step) {
    if (n < 0) throw PreconditionError("falling_poly: n must be >= 0");
    Mode m = step.mode();
    XPolynomial acc = constant_poly(RingValue::one(m));
    XPolynomial x = x_monomial(1, m);
    RingValue offset = zero_like(step);
    for (int i = 0; i < n; ++i) {
        acc = acc * (x - constant_poly(offset));
        offset = offset + step;
    }
    return acc;
}

} // namespace pbern
