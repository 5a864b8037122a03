#include "pbern/bernoulli.hpp"

#include <map>
#include <mutex>

namespace pbern {

const char* poly_family_name(PolyFamily f) {
    switch (f) {
        case PolyFamily::bern: return "Bern";
        case PolyFamily::bern_order: return "BernOrder";
        case PolyFamily::deg_bern: return "DegBern";
        case PolyFamily::deg_bern_order: return "DegBernOrder";
        case PolyFamily::prob_bern: return "ProbBern";
        case PolyFamily::prob_bern_order: return "ProbBernOrder";
        case PolyFamily::prob_deg_bern: return "ProbDegBern";
        case PolyFamily::prob_deg_bern_order: return "ProbDegBernOrder";
    }
    return "?";
}

bool poly_family_degenerate(PolyFamily f) {
    return f == PolyFamily::deg_bern || f == PolyFamily::deg_bern_order ||
           f == PolyFamily::prob_deg_bern || f == PolyFamily::prob_deg_bern_order;
}

bool poly_family_probabilistic(PolyFamily f) {
    return f == PolyFamily::prob_bern || f == PolyFamily::prob_bern_order ||
           f == PolyFamily::prob_deg_bern || f == PolyFamily::prob_deg_bern_order;
}

bool poly_family_has_order(PolyFamily f) {
    return f == PolyFamily::bern_order || f == PolyFamily::deg_bern_order ||
           f == PolyFamily::prob_bern_order || f == PolyFamily::prob_deg_bern_order;
}

PolySequence poly_sequence(PolyFamily family, std::optional<RandomVariable> y,
                           std::optional<RingValue> lambda, int r, int n_max) {
    if (n_max < 0) throw PreconditionError("poly_sequence: N must be >= 0");
    if (poly_family_probabilistic(family)) {
        if (!y) throw PreconditionError("poly_sequence: probabilistic family needs a random variable");
    } else {
        y = RandomVariable::constant_one();
    }
    if (poly_family_degenerate(family)) {
        if (!lambda) throw PreconditionError("poly_sequence: degenerate family needs lambda");
    } else {
        lambda.reset();
    }
    if (poly_family_has_order(family)) {
        if (r < 0) throw PreconditionError("poly_sequence: order r must be >= 0");
    } else {
        r = 1;
    }

    Mode mode = lambda ? lambda->mode() : Mode::rational;
    int order = n_max + 1; // one spare so t/(M-1) still has order n_max

    Series m_series = lambda ? y->mgf_degenerate(*lambda, order) : y->mgf(order);
    Series first = egf_pow(t_over(egf_sub(m_series, one_series(order, mode))), r); // (t/(M-1))^r
    Series barf = egf_log(m_series);                                               // log M, delta

    // powers (log M)^j / j!; (log M)^j has order >= j, so j ranges to n_max
    std::vector<Series> pj;
    pj.push_back(one_series(n_max, mode));
    for (int j = 1; j <= n_max; ++j)
        pj.push_back(egf_scale(egf_mul(pj.back(), barf), Rational(1, j)));

    // M^x as a series over the polynomial ring: coefficient m is sum_j pj[j][m] x^j.
    std::vector<XPolynomial> mx;
    mx.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int m = 0; m <= n_max; ++m) {
        std::vector<RingValue> c(static_cast<std::size_t>(m) + 1, RingValue::zero(mode));
        for (int j = 0; j <= m; ++j) c[static_cast<std::size_t>(j)] = pj[static_cast<std::size_t>(j)].coeff(m);
        mx.emplace_back(std::move(c));
    }
    std::vector<XPolynomial> first_x;
    first_x.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int k = 0; k <= n_max; ++k) first_x.push_back(constant_poly(first.coeff(k)));

    TruncatedSeries<XPolynomial> product =
        egf_mul(TruncatedSeries<XPolynomial>(std::move(first_x)), TruncatedSeries<XPolynomial>(std::move(mx)));

    std::vector<XPolynomial> entries;
    entries.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        XPolynomial e = product.coeff(n);
        if (e.degree() != n) throw ConsistencyError("poly_sequence: entry degree dropped below n");
        entries.push_back(std::move(e));
    }
    return PolySequence{family, std::move(y), std::move(lambda), r, std::move(entries)};
}

std::shared_ptr<const PolySequence> poly_sequence_cached(PolyFamily family,
                                                         std::optional<RandomVariable> y,
                                                         std::optional<RingValue> lambda, int r, int n_max) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const PolySequence>> cache;
    std::string key = std::string(poly_family_name(family)) + "|" + (y ? y->spec_string() : "-") + "|" +
                      (lambda ? std::string(mode_name(lambda->mode())) + ring_to_string(*lambda) : "-") + "|" +
                      std::to_string(r) + "|" + std::to_string(n_max);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto seq =
        std::make_shared<const PolySequence>(poly_sequence(family, std::move(y), std::move(lambda), r, n_max));
    cache.emplace(std::move(key), seq);
    return seq;
}

const char* special_family_name(SpecialFamily f) {
    switch (f) {
        case SpecialFamily::bern_num: return "BernNum";
        case SpecialFamily::deg_bern_num: return "DegBernNum";
        case SpecialFamily::bern_second: return "BernSecondKind";
        case SpecialFamily::deg_bern_second: return "DegBernSecondKind";
        case SpecialFamily::frobenius_euler: return "FrobeniusEuler";
        case SpecialFamily::deg_frobenius_euler: return "DegFrobeniusEuler";
    }
    return "?";
}

bool special_family_degenerate(SpecialFamily f) {
    return f == SpecialFamily::deg_bern_num || f == SpecialFamily::deg_bern_second ||
           f == SpecialFamily::deg_frobenius_euler;
}

bool special_family_has_u(SpecialFamily f) {
    return f == SpecialFamily::frobenius_euler || f == SpecialFamily::deg_frobenius_euler;
}

SpecialSequence special_sequence(SpecialFamily family, std::optional<RingValue> lambda, int r,
                                 const Rational& u, int n_max) {
    if (n_max < 0) throw PreconditionError("special_sequence: N must be >= 0");
    if (special_family_degenerate(family)) {
        if (!lambda) throw PreconditionError("special_sequence: degenerate family needs lambda");
    } else {
        lambda.reset();
    }
    if (special_family_has_u(family)) {
        if (u == 1) throw PreconditionError("special_sequence: Frobenius-Euler requires u != 1");
        if (r < 0) throw PreconditionError("special_sequence: order r must be >= 0");
    } else {
        r = 1;
    }

    Mode mode = lambda ? lambda->mode() : Mode::rational;
    int order = n_max + 1;

    Series s = [&]() -> Series {
        switch (family) {
            case SpecialFamily::bern_num: return t_over(expm1_series(order, mode));
            case SpecialFamily::deg_bern_num: return t_over(deg_expm1_series(*lambda, order));
            case SpecialFamily::bern_second: return t_over(log1p_series(order, mode));
            case SpecialFamily::deg_bern_second: return t_over(deg_log1p_series(*lambda, order));
            case SpecialFamily::frobenius_euler:
            case SpecialFamily::deg_frobenius_euler: {
                Series base = family == SpecialFamily::frobenius_euler
                                  ? exp_series(order, mode)
                                  : deg_exp_series(*lambda, order);
                base.coeff(0) = base.coeff(0) - RingValue::of(u, mode); // e(t) - u
                return egf_pow(egf_scale(egf_reciprocal(base), 1 - u), r);
            }
        }
        throw Error("unreachable");
    }();

    std::vector<RingValue> entries(s.coeffs().begin(), s.coeffs().begin() + n_max + 1);
    return SpecialSequence{family, std::move(lambda), r, u, std::move(entries)};
}

std::vector<Rational> bernoulli_numbers_order(int a, int n_max) {
    if (a < 0 || n_max < 0) throw PreconditionError("bernoulli_numbers_order: bad arguments");
    Series s = egf_pow(t_over(expm1_series(n_max + 1)), a);
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) out.push_back(s.coeff(n).rational_value());
    return out;
}

XPolynomial scaled_bernoulli(int n, int a, const RingValue& lambda) {
    if (n < 0 || a < 0) throw PreconditionError("scaled_bernoulli: n, a must be >= 0");
    auto ba = bernoulli_numbers_order(a, n);
    std::vector<RingValue> coeffs;
    coeffs.reserve(static_cast<std::size_t>(n) + 1);
    RingValue lam_pow = one_like(lambda);
    std::vector<RingValue> powers(static_cast<std::size_t>(n) + 1, lam_pow);
    for (int e = 1; e <= n; ++e) {
        lam_pow = lam_pow * lambda;
        powers[static_cast<std::size_t>(e)] = lam_pow;
    }
    for (int k = 0; k <= n; ++k)
        coeffs.push_back(scale_rat(powers[static_cast<std::size_t>(n - k)],
                                   binomial(n, k) * ba[static_cast<std::size_t>(n - k)]));
    return XPolynomial(std::move(coeffs));
}

} // namespace pbern
