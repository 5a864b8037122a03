#include "pbern/stirling.hpp"

#include <map>
#include <mutex>

namespace pbern {

const char* family_name(StirlingFamily f) {
    switch (f) {
        case StirlingFamily::s1: return "S1";
        case StirlingFamily::s2: return "S2";
        case StirlingFamily::s1_deg: return "S1deg";
        case StirlingFamily::s2_deg: return "S2deg";
        case StirlingFamily::s1_prob: return "S1prob";
        case StirlingFamily::s2_prob: return "S2prob";
        case StirlingFamily::s1_prob_deg: return "S1probdeg";
        case StirlingFamily::s2_prob_deg: return "S2probdeg";
    }
    return "?";
}

bool family_is_degenerate(StirlingFamily f) {
    return f == StirlingFamily::s1_deg || f == StirlingFamily::s2_deg ||
           f == StirlingFamily::s1_prob_deg || f == StirlingFamily::s2_prob_deg;
}

bool family_is_probabilistic(StirlingFamily f) {
    return f == StirlingFamily::s1_prob || f == StirlingFamily::s2_prob ||
           f == StirlingFamily::s1_prob_deg || f == StirlingFamily::s2_prob_deg;
}

bool family_is_first_kind(StirlingFamily f) {
    return f == StirlingFamily::s1 || f == StirlingFamily::s1_deg || f == StirlingFamily::s1_prob ||
           f == StirlingFamily::s1_prob_deg;
}

const RingValue& StirlingTable::at(int n, int k) const {
    if (n < 0 || n > nmax_) throw OrderError("StirlingTable: n outside table range");
    if (k < 0 || k > n) return zero_;
    return entries_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

StirlingTable build_table(StirlingFamily family, std::optional<RandomVariable> y,
                          std::optional<RingValue> lambda, int nmax) {
    if (nmax < 0) throw PreconditionError("build_table: nmax must be >= 0");
    if (family_is_probabilistic(family) && !y)
        throw PreconditionError("build_table: probabilistic family needs a random variable");
    if (family_is_degenerate(family) && !lambda)
        throw PreconditionError("build_table: degenerate family needs lambda");
    if (!family_is_probabilistic(family)) y.reset();
    if (!family_is_degenerate(family)) lambda.reset();

    Mode mode = lambda ? lambda->mode() : Mode::rational;
    int order = std::max(nmax, 1);

    Series base = [&]() -> Series {
        switch (family) {
            case StirlingFamily::s2: return expm1_series(order, mode);
            case StirlingFamily::s1: return log1p_series(order, mode);
            case StirlingFamily::s2_deg: return deg_expm1_series(*lambda, order);
            case StirlingFamily::s1_deg: return deg_log1p_series(*lambda, order);
            case StirlingFamily::s2_prob: return egf_sub(y->mgf(order), one_series(order, mode));
            case StirlingFamily::s1_prob:
                return comp_inverse(egf_sub(y->mgf(order), one_series(order, mode)));
            case StirlingFamily::s2_prob_deg:
                return egf_sub(y->mgf_degenerate(*lambda, order), one_series(order, mode));
            case StirlingFamily::s1_prob_deg:
                return comp_inverse(egf_sub(y->mgf_degenerate(*lambda, order), one_series(order, mode)));
        }
        throw Error("unreachable");
    }();

    // entries(n,k) = EGF coefficient n of base^k / k!
    std::vector<std::vector<RingValue>> entries(static_cast<std::size_t>(nmax) + 1);
    for (int n = 0; n <= nmax; ++n)
        entries[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, RingValue::zero(mode));
    Series power = one_series(order, mode);
    for (int k = 0; k <= nmax; ++k) {
        if (k > 0) power = egf_scale(egf_mul(power, base), Rational(1, k));
        for (int n = k; n <= nmax; ++n)
            entries[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] = power.coeff(n);
    }
    return StirlingTable(family, std::move(y), std::move(lambda), nmax, std::move(entries));
}

std::shared_ptr<const StirlingTable> stirling_cached(StirlingFamily family,
                                                     std::optional<RandomVariable> y,
                                                     std::optional<RingValue> lambda, int nmax) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const StirlingTable>> cache;
    std::string key = std::string(family_name(family)) + "|" + (y ? y->spec_string() : "-") + "|" +
                      (lambda ? std::string(mode_name(lambda->mode())) + ring_to_string(*lambda) : "-") +
                      "|" + std::to_string(nmax);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto table =
        std::make_shared<const StirlingTable>(build_table(family, std::move(y), std::move(lambda), nmax));
    cache.emplace(std::move(key), table);
    return table;
}

Rational prob_s2_direct(const RandomVariable& y, int n, int k) {
    if (n < 0 || k < 0 || k > n) throw PreconditionError("prob_s2_direct: needs 0 <= k <= n");
    Rational acc = 0;
    for (int j = 0; j <= k; ++j) {
        Rational sign = ((k - j) % 2 == 0) ? 1 : -1;
        acc += sign * binomial(k, j) * sum_power_moment(y, j, n);
    }
    return acc / factorial(k);
}

RingValue prob_s1_closed_form(const RandomVariable& y, const std::optional<RingValue>& lambda, int n, int k) {
    Mode mode = lambda ? lambda->mode() : Mode::rational;
    if (k < 0 || k > n) return RingValue::zero(mode);

    auto s1 = stirling1_triangle(n);
    auto s2 = stirling2_triangle(n);
    // classical first kind, degenerate when lambda is present: S_{1,lambda}(a,b) or S_1(a,b)
    std::shared_ptr<const StirlingTable> s1deg;
    if (lambda) s1deg = stirling_cached(StirlingFamily::s1_deg, std::nullopt, *lambda, n);
    auto s1x = [&](int a, int b) -> RingValue {
        if (lambda) return s1deg->at(a, b);
        return RingValue(b <= a ? s1[a][b] : Rational(0));
    };
    auto lam_pow = [&](int e) {
        RingValue acc = RingValue::one(mode);
        for (int i = 0; i < e; ++i) acc = acc * *lambda;
        return acc;
    };

    switch (y.kind()) {
        case RVKind::bernoulli: {
            // p^{-n} S_1(n,k)  /  p^{-n} S_{1,lambda}(n,k)
            return scale_rat(s1x(n, k), pow_rational(y.param_p(), -n));
        }
        case RVKind::binomial: {
            const Rational& p = y.param_p();
            Rational m(y.param_m());
            RingValue acc = RingValue::zero(mode);
            for (int l = k; l <= n; ++l)
                for (int i = l; i <= n; ++i) {
                    Rational c = pow_rational(p, -l) * pow_rational(m, -i) * s2[i][l] * s1[n][i];
                    if (c != 0) acc = acc + scale_rat(s1x(l, k), c);
                }
            return acc;
        }
        case RVKind::poisson: {
            const Rational& alpha = y.param_alpha();
            RingValue acc = RingValue::zero(mode);
            for (int l = k; l <= n; ++l) {
                Rational c = pow_rational(alpha, -l) * s1[n][l];
                if (c != 0) acc = acc + scale_rat(s1x(l, k), c);
            }
            return acc;
        }
        case RVKind::geometric: {
            const Rational& p = y.param_p();
            RingValue acc = RingValue::zero(mode);
            for (int j = k; j <= n; ++j) {
                Rational c = binomial(n, j) * falling(Rational(n - 1), n - j) * pow_rational(p, j) *
                             pow_rational(p - 1, n - j);
                if (c != 0) acc = acc + scale_rat(s1x(j, k), c);
            }
            return acc;
        }
        case RVKind::exponential: {
            const Rational& alpha = y.param_alpha();
            if (!lambda) {
                Rational sign = ((n - k) % 2 == 0) ? 1 : -1;
                return RingValue(sign * binomial(n, k) * falling(Rational(n - 1), n - k) *
                                 pow_rational(alpha, k));
            }
            // sum_j C(n,j)(-1)^{n-j}(n-1)_{n-j} alpha^j lambda^{j-k} S_2(j,k)
            RingValue acc = RingValue::zero(mode);
            for (int j = k; j <= n; ++j) {
                Rational sign = ((n - j) % 2 == 0) ? 1 : -1;
                Rational c =
                    binomial(n, j) * sign * falling(Rational(n - 1), n - j) * pow_rational(alpha, j) * s2[j][k];
                if (c != 0) acc = acc + scale_rat(lam_pow(j - k), c);
            }
            return acc;
        }
        case RVKind::gamma: {
            const Rational& alpha = y.param_alpha();
            const Rational& beta = y.param_beta();
            if (!lambda) {
                // (1/k!) beta^k (-1/alpha)^n sum_l C(k,l)(-1)^l (l+(n-1)alpha)_{n,alpha}
                Rational acc = 0;
                for (int l = 0; l <= k; ++l) {
                    Rational sign = (l % 2 == 0) ? 1 : -1;
                    acc += binomial(k, l) * sign * falling_step(Rational(l) + Rational(n - 1) * alpha, n, alpha);
                }
                return RingValue(acc * pow_rational(beta, k) * pow_rational(rat_div(Rational(-1), alpha), n) /
                                 factorial(k));
            }
            // sum_{l=k}^n sum_{r=0}^l S_2(l,k) C(l,r) (1/l!) (-1)^{n-r} lambda^{l-k} beta^l alpha^{-n}
            //   (r+(n-1)alpha)_{n,alpha}
            RingValue acc = RingValue::zero(mode);
            for (int l = k; l <= n; ++l) {
                if (s2[l][k] == 0) continue;
                Rational inner = 0;
                for (int r = 0; r <= l; ++r) {
                    Rational sign = ((n - r) % 2 == 0) ? 1 : -1;
                    inner += binomial(l, r) * sign * falling_step(Rational(r) + Rational(n - 1) * alpha, n, alpha);
                }
                Rational c = s2[l][k] * inner * pow_rational(beta, l) * pow_rational(alpha, -n) / factorial(l);
                if (c != 0) acc = acc + scale_rat(lam_pow(l - k), c);
            }
            return acc;
        }
        default:
            throw PreconditionError("prob_s1_closed_form: no closed form for this random variable kind");
    }
}

IdentityReport check_orthogonality(const StirlingTable& second_kind, const StirlingTable& first_kind,
                                   std::uint64_t seed) {
    IdentityReport report;
    report.suite = std::string("orthogonality:") + family_name(second_kind.family());
    if (second_kind.nmax() != first_kind.nmax())
        throw PreconditionError("check_orthogonality: tables must share nmax");
    int nmax = second_kind.nmax();
    Mode mode = second_kind.mode();
    auto delta = [&](int a, int b) { return a == b ? RingValue::one(mode) : RingValue::zero(mode); };

    for (int n = 0; n <= nmax; ++n) {
        for (int l = 0; l <= n; ++l) {
            RingValue fwd = RingValue::zero(mode), bwd = RingValue::zero(mode);
            for (int k = l; k <= n; ++k) {
                fwd = fwd + second_kind.at(n, k) * first_kind.at(k, l);
                bwd = bwd + first_kind.at(n, k) * second_kind.at(k, l);
            }
            CaseResult c;
            c.name = "n=" + std::to_string(n) + ",l=" + std::to_string(l);
            if (fwd == delta(n, l) && bwd == delta(n, l)) {
                c.status = CaseStatus::pass;
            } else {
                c.status = CaseStatus::fail;
                c.lhs = ring_to_string(fwd) + ";" + ring_to_string(bwd);
                c.rhs = ring_to_string(delta(n, l));
            }
            report.cases.push_back(std::move(c));
        }
    }

    // inverse relations (b) and (c) on a seeded random sequence
    SplitMix64 rng(seed);
    std::vector<RingValue> a;
    for (int i = 0; i <= nmax; ++i) a.push_back(RingValue::of(Rational(rng.int_in(-9, 9)), mode));

    // (b): b_n = sum_{k<=n} S1(n,k) a_k  <=>  a_n = sum_{k<=n} S2(n,k) b_k
    std::vector<RingValue> b;
    for (int n = 0; n <= nmax; ++n) {
        RingValue acc = RingValue::zero(mode);
        for (int k = 0; k <= n; ++k) acc = acc + first_kind.at(n, k) * a[static_cast<std::size_t>(k)];
        b.push_back(acc);
    }
    bool ok_b = true;
    for (int n = 0; n <= nmax && ok_b; ++n) {
        RingValue acc = RingValue::zero(mode);
        for (int k = 0; k <= n; ++k) acc = acc + second_kind.at(n, k) * b[static_cast<std::size_t>(k)];
        ok_b = acc == a[static_cast<std::size_t>(n)];
    }
    CaseResult rb;
    rb.name = "inverse-relation-b";
    rb.status = ok_b ? CaseStatus::pass : CaseStatus::fail;
    report.cases.push_back(std::move(rb));

    // (c): b_n = sum_{k>=n} S1(k,n) a_k  <=>  a_n = sum_{k>=n} S2(k,n) b_k
    std::vector<RingValue> bc;
    for (int n = 0; n <= nmax; ++n) {
        RingValue acc = RingValue::zero(mode);
        for (int k = n; k <= nmax; ++k) acc = acc + first_kind.at(k, n) * a[static_cast<std::size_t>(k)];
        bc.push_back(acc);
    }
    bool ok_c = true;
    for (int n = 0; n <= nmax && ok_c; ++n) {
        RingValue acc = RingValue::zero(mode);
        for (int k = n; k <= nmax; ++k) acc = acc + second_kind.at(k, n) * bc[static_cast<std::size_t>(k)];
        ok_c = acc == a[static_cast<std::size_t>(n)];
    }
    CaseResult rc;
    rc.name = "inverse-relation-c";
    rc.status = ok_c ? CaseStatus::pass : CaseStatus::fail;
    report.cases.push_back(std::move(rc));
    return report;
}

} // namespace pbern
