#include "pbern/represent.hpp"

namespace pbern {

namespace {

struct EngineContext {
    Mode mode;
    XPolynomial p;   // lifted to the computation mode
    int n;           // deg p
    Series f;        // compositional inverse of log M
    Series t_over_f; // t/f
    Series f_over_t; // f/t
};

// Shared setup for the expansion engines: series order N = deg p + r + 2 per
// the truncation policy; everything downstream consumes strictly less.
EngineContext make_context(const XPolynomial& p_in, const RandomVariable& y,
                           const std::optional<RingValue>& lambda, int r) {
    Mode mode = lambda ? lambda->mode() : Mode::rational;
    XPolynomial p = mode == Mode::lambda ? lift_lambda(p_in) : p_in;
    int n = std::max(p.degree(), 0);
    int order = n + r + 2;
    Series m_series = lambda ? y.mgf_degenerate(*lambda, order) : y.mgf(order);
    Series f = comp_inverse(egf_log(m_series));
    Series over = t_over(f);
    Series under = divide_by_t(f);
    return EngineContext{mode, std::move(p), n, std::move(f), std::move(over), std::move(under)};
}

RingValue delta_pow_at_zero(const XPolynomial& p, int order, Mode mode) {
    XPolynomial d = forward_diff(p, RingValue::one(mode), order);
    return eval_at_zero(d, mode);
}

std::vector<RingValue> inversion_coeffs(const EngineContext& ctx, const StirlingTable& s1y, int form) {
    const int n = ctx.n;
    const Mode mode = ctx.mode;
    std::vector<RingValue> a(static_cast<std::size_t>(n) + 1, RingValue::zero(mode));
    a[0] = integrate_unit(apply_operator(ctx.t_over_f, ctx.p), mode);
    if (n == 0) return a;

    auto s2 = stirling2_triangle(n);
    switch (form) {
        case 1: {
            // a_{r+1} = 1/(r+1) sum_{j=r}^{n-1} S_1^Y(j,r) Delta^{j+1} p(0) / j!
            std::vector<RingValue> dpz;
            for (int j = 0; j <= n - 1; ++j) dpz.push_back(delta_pow_at_zero(ctx.p, j + 1, mode));
            for (int r = 0; r < n; ++r) {
                RingValue acc = RingValue::zero(mode);
                for (int j = r; j <= n - 1; ++j) {
                    const RingValue& s = s1y.at(j, r);
                    if (is_zero(s)) continue;
                    acc = acc + div_rat(s * dpz[static_cast<std::size_t>(j)], factorial(j));
                }
                a[static_cast<std::size_t>(r) + 1] = div_rat(acc, Rational(r + 1));
            }
            break;
        }
        case 2: {
            // double sum with classical S_2 and Delta p^{(k)}(0)
            std::vector<RingValue> dpk; // Delta p^{(k)} (0)
            XPolynomial pk = ctx.p;
            for (int k = 0; k <= n - 1; ++k) {
                if (k > 0) pk = derivative(pk);
                dpk.push_back(delta_pow_at_zero(pk, 1, mode));
            }
            for (int r = 0; r < n; ++r) {
                RingValue acc = RingValue::zero(mode);
                for (int k = r; k <= n - 1; ++k) {
                    RingValue inner = RingValue::zero(mode);
                    for (int j = r; j <= k; ++j) {
                        if (s2[k][j] == 0) continue;
                        inner = inner + scale_rat(s1y.at(j, r), s2[k][j]);
                    }
                    acc = acc + div_rat(inner * dpk[static_cast<std::size_t>(k)], factorial(k));
                }
                a[static_cast<std::size_t>(r) + 1] = div_rat(acc, Rational(r + 1));
            }
            break;
        }
        case 3: {
            // point-evaluation form with C(j+1,k) p(k)
            std::vector<RingValue> pk; // p(0), p(1), ..., p(n)
            for (int k = 0; k <= n; ++k)
                pk.push_back(eval_poly(ctx.p, RingValue::of(Rational(k), mode)));
            for (int r = 0; r < n; ++r) {
                RingValue acc = RingValue::zero(mode);
                for (int j = r; j <= n - 1; ++j) {
                    const RingValue& s = s1y.at(j, r);
                    if (is_zero(s)) continue;
                    RingValue inner = RingValue::zero(mode);
                    for (int k = 0; k <= j + 1; ++k) {
                        Rational sign = ((j + 1 - k) % 2 == 0) ? 1 : -1;
                        inner = inner + scale_rat(pk[static_cast<std::size_t>(k)], sign * binomial(j + 1, k));
                    }
                    acc = acc + div_rat(s * inner, factorial(j));
                }
                a[static_cast<std::size_t>(r) + 1] = div_rat(acc, Rational(r + 1));
            }
            break;
        }
        default:
            throw PreconditionError("coefficient form must be 1, 2 or 3");
    }
    return a;
}

} // namespace

BasisExpansion expand_prob_bernoulli(const XPolynomial& p, const RandomVariable& y, int form) {
    EngineContext ctx = make_context(p, y, std::nullopt, 1);
    auto s1y = ctx.n > 0 ? stirling_cached(StirlingFamily::s1_prob, y, std::nullopt, ctx.n - 1)
                         : stirling_cached(StirlingFamily::s1_prob, y, std::nullopt, 0);
    BasisExpansion e;
    e.basis = PolyFamily::prob_bern;
    e.y = y;
    e.r = 1;
    e.coeffs = inversion_coeffs(ctx, *s1y, form);
    e.method = "prob-bernoulli-form" + std::to_string(form);
    return e;
}

BasisExpansion expand_prob_deg_bernoulli(const XPolynomial& p, const RandomVariable& y,
                                         const RingValue& lambda, int form) {
    EngineContext ctx = make_context(p, y, lambda, 1);
    auto s1y = ctx.n > 0 ? stirling_cached(StirlingFamily::s1_prob_deg, y, lambda, ctx.n - 1)
                         : stirling_cached(StirlingFamily::s1_prob_deg, y, lambda, 0);
    BasisExpansion e;
    e.basis = PolyFamily::prob_deg_bern;
    e.y = y;
    e.lambda = lambda;
    e.r = 1;
    e.coeffs = inversion_coeffs(ctx, *s1y, form);
    e.method = "prob-deg-bernoulli-form" + std::to_string(form);
    return e;
}

namespace {

// g(t)^a p as I^a ((t/f)^a p), cross-checked against the Stirling-weighted
// derivative sum sum_l S_2(l+a,a) a!/(l+a)! (t/f)^a p^{(l)}.
XPolynomial g_power_apply(const EngineContext& ctx, int a, const XPolynomial& p) {
    if (a == 0) return p;
    Series t_over_f_a = egf_pow(ctx.t_over_f, a);
    XPolynomial via_i = operator_I(apply_operator(t_over_f_a, p), RingValue::one(ctx.mode), a);

    int n = p.degree();
    auto s2 = stirling2_triangle(n + a);
    XPolynomial via_s2;
    XPolynomial pl = p;
    for (int l = 0; l <= n; ++l) {
        if (l > 0) pl = derivative(pl);
        Rational c = s2[l + a][a] * factorial(a) / factorial(l + a);
        if (c == 0) continue;
        via_s2 = via_s2 + scale_ring(apply_operator(t_over_f_a, pl), RingValue::of(c, ctx.mode));
    }
    if (via_i != via_s2)
        throw ConsistencyError("g(t)^a p: operator-iteration and Stirling-sum routes disagree");
    return via_i;
}

// f(t)^a p = (f/t)^a p^{(a)}.
XPolynomial f_power_apply(const EngineContext& ctx, int a, const XPolynomial& p) {
    if (a == 0) return p;
    return apply_operator(egf_pow(ctx.f_over_t, a), derivative(p, a));
}

} // namespace

BasisExpansion expand_higher(const XPolynomial& p, const RandomVariable& y,
                             const std::optional<RingValue>& lambda, int r) {
    if (r < 0) throw PreconditionError("expand_higher: order r must be >= 0");
    EngineContext ctx = make_context(p, y, lambda, r);
    const int n = ctx.n;
    const Mode mode = ctx.mode;

    std::vector<RingValue> a(static_cast<std::size_t>(n) + 1, RingValue::zero(mode));
    auto eval_at_int = [&](const XPolynomial& q, int j) {
        return eval_poly(q, RingValue::of(Rational(j), mode));
    };

    int g_block_end = r > n ? n : r - 1; // k ranges for the g(t)-powered block
    for (int k = 0; k <= g_block_end; ++k) {
        XPolynomial gp = g_power_apply(ctx, r - k, ctx.p);
        RingValue acc = RingValue::zero(mode);
        for (int j = 0; j <= k; ++j) {
            Rational sign = ((k - j) % 2 == 0) ? 1 : -1;
            acc = acc + scale_rat(eval_at_int(gp, j), sign * binomial(k, j));
        }
        a[static_cast<std::size_t>(k)] = div_rat(acc, factorial(k));
    }
    if (r <= n) {
        for (int k = r; k <= n; ++k) {
            XPolynomial fp = f_power_apply(ctx, k - r, ctx.p);
            RingValue acc = RingValue::zero(mode);
            for (int j = 0; j <= r; ++j) {
                Rational sign = ((r - j) % 2 == 0) ? 1 : -1;
                acc = acc + scale_rat(eval_at_int(fp, j), sign * binomial(r, j));
            }
            a[static_cast<std::size_t>(k)] = div_rat(acc, factorial(k));
        }
    }

    BasisExpansion e;
    e.basis = lambda ? PolyFamily::prob_deg_bern_order : PolyFamily::prob_bern_order;
    e.y = y;
    e.lambda = lambda;
    e.r = r;
    e.coeffs = std::move(a);
    e.method = lambda ? "higher-order-deg" : "higher-order";
    return e;
}

namespace {

// Divide by lambda^e: exact monomial shift in symbolic mode, plain rational
// division at fixed lambda.
RingValue divide_by_lambda_pow(const RingValue& v, const RingValue& lambda, int e) {
    if (e == 0) return v;
    if (lambda.mode() == Mode::lambda) return div_lambda_power(v, e);
    const Rational& lv = lambda.rational_value();
    if (lv == 0) throw ZeroDivisionError("division by lambda^e at lambda = 0");
    return div_rat(v, pow_rational(lv, e));
}

RingValue lambda_pow(const RingValue& lambda, int e) {
    RingValue acc = one_like(lambda);
    for (int i = 0; i < e; ++i) acc = acc * lambda;
    return acc;
}

// a_{r+1} for the degenerate classical basis, by three routes that must
// agree: iterated lambda-differences, the binomial point sum, and the
// Stirling-weighted derivative sum.
RingValue lambda_difference_coeff(const XPolynomial& p, const RingValue& lambda, int r, int n) {
    Mode mode = lambda.mode();
    XPolynomial dp = forward_diff(p, RingValue::one(mode), 1);

    XPolynomial dl = forward_diff(dp, lambda, r);
    RingValue form_a = div_rat(divide_by_lambda_pow(eval_at_zero(dl, mode), lambda, r), factorial(r + 1));

    RingValue sum_b = RingValue::zero(mode);
    for (int j = 0; j <= r; ++j) {
        Rational sign = ((r - j) % 2 == 0) ? 1 : -1;
        sum_b = sum_b + scale_rat(eval_poly(dp, scale_rat(lambda, Rational(j))), sign * binomial(r, j));
    }
    RingValue form_b = div_rat(divide_by_lambda_pow(sum_b, lambda, r), factorial(r + 1));

    auto s2 = stirling2_triangle(n);
    RingValue form_c = RingValue::zero(mode);
    XPolynomial pl = p;
    for (int l = 0; l <= n; ++l) {
        if (l > 0) pl = derivative(pl);
        if (l < r || s2[l][r] == 0) continue;
        RingValue term = scale_rat(lambda_pow(lambda, l - r), s2[l][r] / factorial(l));
        form_c = form_c + term * delta_pow_at_zero(pl, 1, mode);
    }
    form_c = div_rat(form_c, Rational(r + 1));

    if (!(form_a == form_b) || !(form_a == form_c))
        throw ConsistencyError("lambda-difference coefficient: alternative forms disagree");
    return form_a;
}

// a_0 for the degenerate classical basis: integrate the umbral composition
// of p with the scaled Bernoulli polynomials lambda^i B_i(x/lambda).
RingValue umbral_integral_a0(const XPolynomial& p, const RingValue& lambda) {
    std::vector<XPolynomial> seq;
    for (int i = 0; i <= std::max(p.degree(), 0); ++i) seq.push_back(scaled_bernoulli(i, 1, lambda));
    return integrate_unit(umbral_compose(p, seq), lambda.mode());
}

// f(t)^a p for Y = 1 degenerate, by three routes that must agree:
// iterated interval integration of p^{(a)}, iterated lambda-differences,
// and the Stirling-weighted derivative sum.
XPolynomial f_power_classical_deg(const XPolynomial& p, const RingValue& lambda, int a, int n) {
    if (a == 0) return p;

    XPolynomial via_ilam = operator_I(derivative(p, a), lambda, a);
    XPolynomial via_delta = forward_diff(p, lambda, a);
    if (via_ilam != via_delta)
        throw ConsistencyError("f(t)^a p: I_lambda and Delta_lambda routes disagree");

    auto s2 = stirling2_triangle(n);
    XPolynomial via_s2;
    XPolynomial pl = p;
    for (int l = 0; l <= n; ++l) {
        if (l > 0) pl = derivative(pl);
        if (l < a || s2[l][a] == 0) continue;
        via_s2 = via_s2 + scale_ring(pl, scale_rat(lambda_pow(lambda, l), factorial(a) * s2[l][a] / factorial(l)));
    }
    if (via_ilam != via_s2) throw ConsistencyError("f(t)^a p: Stirling-sum route disagrees");

    std::vector<RingValue> out;
    out.reserve(via_ilam.coeffs().size());
    for (const auto& c : via_ilam.coeffs()) out.push_back(divide_by_lambda_pow(c, lambda, a));
    return XPolynomial(std::move(out));
}

// g(t)^a p for Y = 1 degenerate: the I^a umbral-composition form and the
// Stirling-weighted form; must agree.
XPolynomial g_power_classical_deg(const XPolynomial& p, const RingValue& lambda, int a, int n) {
    Mode mode = lambda.mode();
    if (a == 0) return p;
    std::vector<XPolynomial> seq;
    for (int i = 0; i <= std::max(p.degree(), 0); ++i) seq.push_back(scaled_bernoulli(i, a, lambda));

    XPolynomial comp = umbral_compose(p, seq);
    XPolynomial via_i = operator_I(comp, RingValue::one(mode), a);

    auto s2 = stirling2_triangle(n + a);
    XPolynomial via_s2;
    XPolynomial pl = p;
    for (int l = 0; l <= n; ++l) {
        if (l > 0) pl = derivative(pl);
        Rational c = s2[l + a][a] * factorial(a) / factorial(l + a);
        if (c == 0) continue;
        via_s2 = via_s2 + scale_ring(umbral_compose(pl, seq), RingValue::of(c, mode));
    }
    if (via_i != via_s2) throw ConsistencyError("g(t)^a p: operator and Stirling-sum routes disagree");
    return via_i;
}

} // namespace

BasisExpansion expand_classical(const XPolynomial& p_in, ClassicalVariant variant,
                                const std::optional<RingValue>& lambda, std::optional<int> r_opt) {
    BasisExpansion e;
    e.y = RandomVariable::constant_one();

    if (variant == ClassicalVariant::derivative_integral) {
        const XPolynomial& p = p_in;
        int n = std::max(p.degree(), 0);
        std::vector<RingValue> a;
        XPolynomial pk = p;
        for (int k = 0; k <= n; ++k) {
            if (k > 0) pk = derivative(pk);
            a.push_back(div_rat(integrate_unit(pk, Mode::rational), factorial(k)));
        }
        e.basis = PolyFamily::bern;
        e.r = 1;
        e.coeffs = std::move(a);
        e.method = "classical-derivative-integral";
        return e;
    }

    if (!lambda) throw PreconditionError("expand_classical: this variant needs lambda");
    Mode mode = lambda->mode();
    XPolynomial p = mode == Mode::lambda ? lift_lambda(p_in) : p_in;
    int n = std::max(p.degree(), 0);

    if (variant == ClassicalVariant::deg_umbral_integral || variant == ClassicalVariant::deg_lambda_difference) {
        std::vector<RingValue> a(static_cast<std::size_t>(n) + 1, RingValue::zero(mode));
        a[0] = umbral_integral_a0(p, *lambda);
        if (variant == ClassicalVariant::deg_umbral_integral) {
            // the generic first-kind inversion at Y = 1, with degenerate S_{1,lambda}
            auto s1l = stirling_cached(StirlingFamily::s1_deg, std::nullopt, *lambda, std::max(n - 1, 0));
            auto s2 = stirling2_triangle(std::max(n, 1));
            std::vector<RingValue> dpz;
            for (int j = 0; j <= n - 1; ++j) dpz.push_back(delta_pow_at_zero(p, j + 1, mode));
            for (int r = 0; r < n; ++r) {
                RingValue acc = RingValue::zero(mode);
                for (int j = r; j <= n - 1; ++j) {
                    const RingValue& s = s1l->at(j, r);
                    if (is_zero(s)) continue;
                    acc = acc + div_rat(s * dpz[static_cast<std::size_t>(j)], factorial(j));
                }
                a[static_cast<std::size_t>(r) + 1] = div_rat(acc, Rational(r + 1));
            }
            e.method = "classical-deg-umbral";
        } else {
            for (int r = 0; r < n; ++r)
                a[static_cast<std::size_t>(r) + 1] = lambda_difference_coeff(p, *lambda, r, n);
            e.method = "classical-deg-lambda-diff";
        }
        e.basis = PolyFamily::deg_bern;
        e.lambda = lambda;
        e.r = 1;
        e.coeffs = std::move(a);
        return e;
    }

    // deg_higher_order: the degenerate higher-order engine at Y = 1 with the I_lambda / Delta_lambda /
    // Stirling and scaled-Bernoulli umbral forms.
    if (!r_opt) throw PreconditionError("expand_classical: higher variant needs r");
    int r = *r_opt;
    if (r < 0) throw PreconditionError("expand_classical: order r must be >= 0");
    std::vector<RingValue> a(static_cast<std::size_t>(n) + 1, RingValue::zero(mode));
    auto eval_at_int = [&](const XPolynomial& q, int j) {
        return eval_poly(q, RingValue::of(Rational(j), mode));
    };
    int g_block_end = r > n ? n : r - 1;
    for (int k = 0; k <= g_block_end; ++k) {
        XPolynomial gp = g_power_classical_deg(p, *lambda, r - k, n);
        RingValue acc = RingValue::zero(mode);
        for (int j = 0; j <= k; ++j) {
            Rational sign = ((k - j) % 2 == 0) ? 1 : -1;
            acc = acc + scale_rat(eval_at_int(gp, j), sign * binomial(k, j));
        }
        a[static_cast<std::size_t>(k)] = div_rat(acc, factorial(k));
    }
    if (r <= n) {
        for (int k = r; k <= n; ++k) {
            XPolynomial fp = f_power_classical_deg(p, *lambda, k - r, n);
            RingValue acc = RingValue::zero(mode);
            for (int j = 0; j <= r; ++j) {
                Rational sign = ((r - j) % 2 == 0) ? 1 : -1;
                acc = acc + scale_rat(eval_at_int(fp, j), sign * binomial(r, j));
            }
            a[static_cast<std::size_t>(k)] = div_rat(acc, factorial(k));
        }
    }
    e.basis = PolyFamily::deg_bern_order;
    e.lambda = lambda;
    e.r = r;
    e.coeffs = std::move(a);
    e.method = "classical-deg-higher";
    return e;
}

BasisExpansion expand_classical_higher(const XPolynomial& p, int r) {
    if (r < 0) throw PreconditionError("expand_classical_higher: order r must be >= 0");
    int n = std::max(p.degree(), 0);
    Mode mode = Mode::rational;
    std::vector<RingValue> a(static_cast<std::size_t>(n) + 1, RingValue::zero(mode));
    auto eval_at_int = [&](const XPolynomial& q, int j) {
        return eval_poly(q, RingValue::of(Rational(j), mode));
    };
    int g_block_end = r > n ? n : r - 1;
    for (int k = 0; k <= g_block_end; ++k) {
        XPolynomial ip = operator_I(p, RingValue::one(mode), r - k);
        RingValue acc = RingValue::zero(mode);
        for (int j = 0; j <= k; ++j) {
            Rational sign = ((k - j) % 2 == 0) ? 1 : -1;
            acc = acc + scale_rat(eval_at_int(ip, j), sign * binomial(k, j));
        }
        a[static_cast<std::size_t>(k)] = div_rat(acc, factorial(k));
    }
    if (r <= n) {
        for (int k = r; k <= n; ++k) {
            XPolynomial pk = derivative(p, k - r);
            RingValue acc = RingValue::zero(mode);
            for (int j = 0; j <= r; ++j) {
                Rational sign = ((r - j) % 2 == 0) ? 1 : -1;
                acc = acc + scale_rat(eval_at_int(pk, j), sign * binomial(r, j));
            }
            a[static_cast<std::size_t>(k)] = div_rat(acc, factorial(k));
        }
    }
    BasisExpansion e;
    e.basis = PolyFamily::bern_order;
    e.y = RandomVariable::constant_one();
    e.r = r;
    e.coeffs = std::move(a);
    e.method = "classical-higher";
    return e;
}

BasisExpansion oracle_expand(const XPolynomial& p_in, const PolySequence& basis) {
    Mode mode = basis.lambda ? basis.lambda->mode() : Mode::rational;
    XPolynomial residual = mode == Mode::lambda ? lift_lambda(p_in) : p_in;
    int n = std::max(residual.degree(), 0);
    if (static_cast<int>(basis.entries.size()) <= n)
        throw PreconditionError("oracle_expand: basis has fewer entries than deg p + 1");

    std::vector<RingValue> a(static_cast<std::size_t>(n) + 1, RingValue::zero(mode));
    for (int k = n; k >= 0; --k) {
        if (residual.degree() == k) {
            auto lead = basis.at(k).coeff(k).as_rational_unit();
            if (!lead) throw ConsistencyError("oracle_expand: basis leading coefficient is not a unit");
            RingValue ak = div_rat(residual.coeff(k), *lead);
            residual = residual - scale_ring(basis.at(k), ak);
            a[static_cast<std::size_t>(k)] = std::move(ak);
        }
        if (residual.degree() >= k) throw ConsistencyError("oracle_expand: residual degree did not drop");
    }
    if (!residual.is_zero_poly()) throw ConsistencyError("oracle_expand: nonzero residual after back-substitution");

    BasisExpansion e;
    e.basis = basis.family;
    e.y = basis.y;
    e.lambda = basis.lambda;
    e.r = basis.r;
    e.coeffs = std::move(a);
    e.method = "oracle";
    return e;
}

XPolynomial reconstruct(const BasisExpansion& expansion, const PolySequence& basis) {
    XPolynomial acc;
    for (std::size_t k = 0; k < expansion.coeffs.size(); ++k)
        acc = acc + scale_ring(basis.at(static_cast<int>(k)), expansion.coeffs[k]);
    return acc;
}

} // namespace pbern
