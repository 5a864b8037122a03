#pragma once

#include <optional>
#include <vector>

#include "pbern/ring_value.hpp"

namespace pbern {

/**
 * Truncated exponential generating function: the prefix c_0..c_N of
 * f(t) = sum c_n t^n/n!. Every generating function in this library is an
 * EGF, so Stirling and Bernoulli tables read directly off coefficients.
 *
 * Truncation policy: binary operations produce order = min of the input
 * orders; consumers needing more order get an OrderError, never silent
 * zero-padding.
 */
template <class Ring>
class TruncatedSeries {
  public:
    explicit TruncatedSeries(std::vector<Ring> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw PreconditionError("series needs at least the constant coefficient");
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Ring& coeff(int n) const {
        if (n < 0 || n > order()) throw OrderError("series coefficient beyond truncation order");
        return c_[static_cast<std::size_t>(n)];
    }
    Ring& coeff(int n) {
        if (n < 0 || n > order()) throw OrderError("series coefficient beyond truncation order");
        return c_[static_cast<std::size_t>(n)];
    }
    const std::vector<Ring>& coeffs() const { return c_; }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.c_ == b.c_; }
    friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a.c_ == b.c_); }

  private:
    std::vector<Ring> c_;
};

using Series = TruncatedSeries<RingValue>;

// o(f): index of the first nonzero coefficient; empty for the zero prefix.
template <class Ring>
std::optional<int> series_order(const TruncatedSeries<Ring>& f) {
    for (int n = 0; n <= f.order(); ++n)
        if (!is_zero(f.coeff(n))) return n;
    return std::nullopt;
}

template <class Ring>
bool is_invertible_series(const TruncatedSeries<Ring>& f) {
    return f.coeff(0).as_rational_unit().has_value();
}

// Delta series: c_0 = 0 and c_1 a nonzero rational (a unit of the ring).
template <class Ring>
bool is_delta_series(const TruncatedSeries<Ring>& f) {
    return f.order() >= 1 && is_zero(f.coeff(0)) && f.coeff(1).as_rational_unit().has_value();
}

template <class Ring>
TruncatedSeries<Ring> truncate(const TruncatedSeries<Ring>& f, int order) {
    if (order > f.order()) throw OrderError("cannot extend a truncated series");
    std::vector<Ring> c(f.coeffs().begin(), f.coeffs().begin() + order + 1);
    return TruncatedSeries<Ring>(std::move(c));
}

// EGF product: binomial convolution c_n = sum_k C(n,k) a_k b_{n-k}.
template <class Ring>
TruncatedSeries<Ring> egf_mul(const TruncatedSeries<Ring>& a, const TruncatedSeries<Ring>& b) {
    int n_out = std::min(a.order(), b.order());
    std::vector<Ring> out;
    out.reserve(static_cast<std::size_t>(n_out) + 1);
    for (int n = 0; n <= n_out; ++n) {
        Ring acc = a.coeff(0) * b.coeff(n);
        for (int k = 1; k <= n; ++k) acc = acc + scale_rat(a.coeff(k) * b.coeff(n - k), binomial(n, k));
        out.push_back(std::move(acc));
    }
    return TruncatedSeries<Ring>(std::move(out));
}

template <class Ring>
TruncatedSeries<Ring> egf_add(const TruncatedSeries<Ring>& a, const TruncatedSeries<Ring>& b) {
    int n_out = std::min(a.order(), b.order());
    std::vector<Ring> out;
    for (int n = 0; n <= n_out; ++n) out.push_back(a.coeff(n) + b.coeff(n));
    return TruncatedSeries<Ring>(std::move(out));
}

template <class Ring>
TruncatedSeries<Ring> egf_sub(const TruncatedSeries<Ring>& a, const TruncatedSeries<Ring>& b) {
    int n_out = std::min(a.order(), b.order());
    std::vector<Ring> out;
    for (int n = 0; n <= n_out; ++n) out.push_back(a.coeff(n) - b.coeff(n));
    return TruncatedSeries<Ring>(std::move(out));
}

template <class Ring>
TruncatedSeries<Ring> egf_scale(const TruncatedSeries<Ring>& a, const Rational& s) {
    std::vector<Ring> out;
    out.reserve(a.coeffs().size());
    for (const auto& c : a.coeffs()) out.push_back(scale_rat(c, s));
    return TruncatedSeries<Ring>(std::move(out));
}

template <class Ring>
TruncatedSeries<Ring> egf_scale_ring(const TruncatedSeries<Ring>& a, const Ring& v) {
    std::vector<Ring> out;
    out.reserve(a.coeffs().size());
    for (const auto& c : a.coeffs()) out.push_back(c * v);
    return TruncatedSeries<Ring>(std::move(out));
}

// Multiplicative inverse: requires a unit constant term. Solves the
// triangular system egf_mul(a, r) = 1 directly.
template <class Ring>
TruncatedSeries<Ring> egf_reciprocal(const TruncatedSeries<Ring>& a) {
    auto unit = a.coeff(0).as_rational_unit();
    if (!unit) throw PreconditionError("egf_reciprocal: constant term is not a rational unit");
    Rational inv0 = rat_div(Rational(1), *unit);
    std::vector<Ring> r;
    r.reserve(a.coeffs().size());
    r.push_back(scale_rat(one_like(a.coeff(0)), inv0));
    for (int n = 1; n <= a.order(); ++n) {
        Ring acc = scale_rat(a.coeff(1) * r[static_cast<std::size_t>(n - 1)], binomial(n, 1));
        for (int k = 2; k <= n; ++k)
            acc = acc + scale_rat(a.coeff(k) * r[static_cast<std::size_t>(n - k)], binomial(n, k));
        r.push_back(scale_rat(acc, -inv0));
    }
    return TruncatedSeries<Ring>(std::move(r));
}

// f/t for a series with zero constant term: d_m = c_{m+1}/(m+1). Order drops by one.
template <class Ring>
TruncatedSeries<Ring> divide_by_t(const TruncatedSeries<Ring>& f) {
    if (!is_zero(f.coeff(0))) throw PreconditionError("divide_by_t: nonzero constant term");
    if (f.order() < 1) throw OrderError("divide_by_t: order too small");
    std::vector<Ring> out;
    out.reserve(static_cast<std::size_t>(f.order()));
    for (int m = 0; m < f.order(); ++m) out.push_back(div_rat(f.coeff(m + 1), Rational(m + 1)));
    return TruncatedSeries<Ring>(std::move(out));
}

// t/f for a delta series f (the reciprocal of f/t).
template <class Ring>
TruncatedSeries<Ring> t_over(const TruncatedSeries<Ring>& f) {
    return egf_reciprocal(divide_by_t(f));
}

template <class Ring>
TruncatedSeries<Ring> egf_pow(const TruncatedSeries<Ring>& a, int k) {
    if (k < 0) throw PreconditionError("egf_pow: negative exponent");
    TruncatedSeries<Ring> r(std::vector<Ring>(a.coeffs().size(), zero_like(a.coeff(0))));
    r.coeff(0) = one_like(a.coeff(0));
    for (int i = 0; i < k; ++i) r = egf_mul(r, a);
    return r;
}

// exp(a) for a delta-constant-term series (a_0 = 0), via the derivative
// recurrence E_{n+1} = sum_k C(n,k) a_{k+1} E_{n-k}; exact, no divisions.
template <class Ring>
TruncatedSeries<Ring> egf_exp(const TruncatedSeries<Ring>& a) {
    if (!is_zero(a.coeff(0))) throw PreconditionError("egf_exp: constant term must vanish");
    std::vector<Ring> e;
    e.reserve(a.coeffs().size());
    e.push_back(one_like(a.coeff(0)));
    for (int n = 0; n < a.order(); ++n) {
        Ring acc = a.coeff(1) * e[static_cast<std::size_t>(n)];
        for (int k = 1; k <= n; ++k)
            acc = acc + scale_rat(a.coeff(k + 1) * e[static_cast<std::size_t>(n - k)], binomial(n, k));
        e.push_back(std::move(acc));
    }
    return TruncatedSeries<Ring>(std::move(e));
}

// log(a) for a_0 = 1, computed as log(1+u) = sum (-1)^{m-1} u^m / m.
template <class Ring>
TruncatedSeries<Ring> egf_log(const TruncatedSeries<Ring>& a) {
    if (!(a.coeff(0) == one_like(a.coeff(0))))
        throw PreconditionError("egf_log: constant term must be 1");
    int n_max = a.order();
    std::vector<Ring> u = a.coeffs();
    u[0] = zero_like(u[0]);
    TruncatedSeries<Ring> us(std::move(u));
    std::vector<Ring> res(static_cast<std::size_t>(n_max) + 1, zero_like(a.coeff(0)));
    TruncatedSeries<Ring> up = egf_pow(us, 0);
    for (int m = 1; m <= n_max; ++m) {
        up = egf_mul(up, us);
        Rational c = Rational((m % 2 == 1) ? 1 : -1, m);
        for (int n = m; n <= n_max; ++n) res[static_cast<std::size_t>(n)] = res[static_cast<std::size_t>(n)] + scale_rat(up.coeff(n), c);
    }
    return TruncatedSeries<Ring>(std::move(res));
}

// Composition outer(inner) for a delta inner series.
template <class Ring>
TruncatedSeries<Ring> egf_compose(const TruncatedSeries<Ring>& outer, const TruncatedSeries<Ring>& inner) {
    if (!is_delta_series(inner)) throw PreconditionError("egf_compose: inner series is not a delta series");
    int n_max = std::min(outer.order(), inner.order());
    std::vector<Ring> res(static_cast<std::size_t>(n_max) + 1, zero_like(inner.coeff(0)));
    res[0] = outer.coeff(0);
    // P_j = inner^j / j!; order of P_j is >= j, so j stops at n_max.
    TruncatedSeries<Ring> pj = egf_pow(truncate(inner, n_max), 0);
    for (int j = 1; j <= n_max; ++j) {
        pj = egf_scale(egf_mul(pj, inner), Rational(1, j));
        for (int n = j; n <= n_max; ++n)
            res[static_cast<std::size_t>(n)] = res[static_cast<std::size_t>(n)] + outer.coeff(j) * pj.coeff(n);
    }
    return TruncatedSeries<Ring>(std::move(res));
}

// Compositional inverse of a delta series, by term-by-term triangular
// extraction from f(g(t)) = t: the t^n coefficient of f(g) is linear in g_n
// with unit coefficient f_1.
template <class Ring>
TruncatedSeries<Ring> comp_inverse(const TruncatedSeries<Ring>& f) {
    if (!is_delta_series(f)) throw PreconditionError("comp_inverse: not a delta series");
    Rational f1 = *f.coeff(1).as_rational_unit();
    std::vector<Ring> g(f.coeffs().size(), zero_like(f.coeff(0)));
    g[1] = scale_rat(one_like(f.coeff(0)), rat_div(Rational(1), f1));
    for (int n = 2; n <= f.order(); ++n) {
        TruncatedSeries<Ring> partial(std::vector<Ring>(g.begin(), g.begin() + n + 1));
        TruncatedSeries<Ring> h = egf_compose(truncate(f, n), partial);
        g[static_cast<std::size_t>(n)] = scale_rat(h.coeff(n), rat_div(Rational(-1), f1));
    }
    return TruncatedSeries<Ring>(std::move(g));
}

// ---- standard series ----

Series one_series(int order, Mode m = Mode::rational);
Series t_series(int order, Mode m = Mode::rational);
Series exp_series(int order, Mode m = Mode::rational);            // e^t
Series exp_at_series(const Rational& y, int order);               // e^{yt}
Series expm1_series(int order, Mode m = Mode::rational);          // e^t - 1
Series log1p_series(int order, Mode m = Mode::rational);          // log(1+t)
Series deg_exp_series(const RingValue& lambda, int order);        // e_lambda(t)
Series deg_expm1_series(const RingValue& lambda, int order);      // e_lambda(t) - 1
Series deg_log1p_series(const RingValue& lambda, int order);      // log_lambda(1+t)

} // namespace pbern
