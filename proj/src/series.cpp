#include "pbern/series.hpp"

namespace pbern {

namespace {
std::vector<RingValue> zeros(int order, Mode m) {
    return std::vector<RingValue>(static_cast<std::size_t>(order) + 1, RingValue::zero(m));
}
} // namespace

Series one_series(int order, Mode m) {
    auto c = zeros(order, m);
    c[0] = RingValue::one(m);
    return Series(std::move(c));
}

Series t_series(int order, Mode m) {
    if (order < 1) throw OrderError("t_series needs order >= 1");
    auto c = zeros(order, m);
    c[1] = RingValue::one(m);
    return Series(std::move(c));
}

Series exp_series(int order, Mode m) {
    std::vector<RingValue> c(static_cast<std::size_t>(order) + 1, RingValue::one(m));
    return Series(std::move(c));
}

Series exp_at_series(const Rational& y, int order) {
    std::vector<RingValue> c;
    c.reserve(static_cast<std::size_t>(order) + 1);
    Rational p = 1;
    for (int n = 0; n <= order; ++n) {
        c.emplace_back(p);
        p *= y;
    }
    return Series(std::move(c));
}

Series expm1_series(int order, Mode m) {
    Series s = exp_series(order, m);
    s.coeff(0) = RingValue::zero(m);
    return s;
}

Series log1p_series(int order, Mode m) {
    auto c = zeros(order, m);
    Rational v = 1; // (-1)^{n-1} (n-1)!
    for (int n = 1; n <= order; ++n) {
        c[static_cast<std::size_t>(n)] = RingValue::of(v, m);
        v *= -n;
    }
    return Series(std::move(c));
}

Series deg_exp_series(const RingValue& lambda, int order) {
    std::vector<RingValue> c;
    c.reserve(static_cast<std::size_t>(order) + 1);
    RingValue one = one_like(lambda);
    RingValue acc = one; // (1)_{n,lambda} = prod_{i<n} (1 - i lambda)
    RingValue offset = zero_like(lambda);
    for (int n = 0; n <= order; ++n) {
        c.push_back(acc);
        acc = acc * (one - offset);
        offset = offset + lambda;
    }
    return Series(std::move(c));
}

Series deg_expm1_series(const RingValue& lambda, int order) {
    Series s = deg_exp_series(lambda, order);
    s.coeff(0) = zero_like(lambda);
    return s;
}

Series deg_log1p_series(const RingValue& lambda, int order) {
    // ((1+t)^lambda - 1)/lambda: EGF coefficient n >= 1 is
    // (lambda-1)(lambda-2)...(lambda-(n-1)), staying polynomial in lambda.
    std::vector<RingValue> c;
    c.reserve(static_cast<std::size_t>(order) + 1);
    c.push_back(zero_like(lambda));
    RingValue acc = one_like(lambda);
    for (int n = 1; n <= order; ++n) {
        c.push_back(acc);
        acc = acc * (lambda - RingValue::of(Rational(n), lambda.mode()));
    }
    return Series(std::move(c));
}

} // namespace pbern
