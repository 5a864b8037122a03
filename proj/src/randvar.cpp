#include "pbern/randvar.hpp"

#include <sstream>

namespace pbern {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw PreconditionError(msg);
}

Series series_from_rationals(std::vector<Rational> v) {
    std::vector<RingValue> c;
    c.reserve(v.size());
    for (auto& q : v) c.emplace_back(std::move(q));
    return Series(std::move(c));
}

} // namespace

RandomVariable RandomVariable::constant_one() {
    RandomVariable y;
    y.kind_ = RVKind::constant_one;
    return y;
}

RandomVariable RandomVariable::make_bernoulli(const Rational& p) {
    require(p > 0 && p <= 1, "bernoulli: requires 0 < p <= 1");
    RandomVariable y;
    y.kind_ = RVKind::bernoulli;
    y.p_ = p;
    return y;
}

RandomVariable RandomVariable::make_binomial(int m, const Rational& p) {
    require(m >= 1, "binomial: requires m >= 1");
    require(p > 0 && p <= 1, "binomial: requires 0 < p <= 1");
    RandomVariable y;
    y.kind_ = RVKind::binomial;
    y.m_ = m;
    y.p_ = p;
    return y;
}

RandomVariable RandomVariable::make_poisson(const Rational& alpha) {
    require(alpha > 0, "poisson: requires alpha > 0");
    RandomVariable y;
    y.kind_ = RVKind::poisson;
    y.alpha_ = alpha;
    return y;
}

RandomVariable RandomVariable::make_geometric(const Rational& p) {
    require(p > 0 && p < 1, "geometric: requires 0 < p < 1");
    RandomVariable y;
    y.kind_ = RVKind::geometric;
    y.p_ = p;
    return y;
}

RandomVariable RandomVariable::make_exponential(const Rational& alpha) {
    require(alpha > 0, "exponential: requires alpha > 0");
    RandomVariable y;
    y.kind_ = RVKind::exponential;
    y.alpha_ = alpha;
    return y;
}

RandomVariable RandomVariable::make_gamma(const Rational& alpha, const Rational& beta) {
    require(alpha > 0 && beta > 0, "gamma: requires alpha > 0 and beta > 0");
    RandomVariable y;
    y.kind_ = RVKind::gamma;
    y.alpha_ = alpha;
    y.beta_ = beta;
    return y;
}

RandomVariable RandomVariable::make_custom(std::vector<Rational> raw) {
    require(!raw.empty() && raw[0] == 1, "custom: requires E[Y^0] = 1");
    require(raw.size() >= 2 && raw[1] != 0, "custom: requires E[Y] != 0");
    RandomVariable y;
    y.kind_ = RVKind::custom;
    y.custom_ = std::move(raw);
    return y;
}

const Rational& RandomVariable::param_p() const {
    if (kind_ != RVKind::bernoulli && kind_ != RVKind::binomial && kind_ != RVKind::geometric)
        throw PreconditionError("this random variable has no parameter p");
    return p_;
}

const Rational& RandomVariable::param_alpha() const {
    if (kind_ != RVKind::poisson && kind_ != RVKind::exponential && kind_ != RVKind::gamma)
        throw PreconditionError("this random variable has no parameter alpha");
    return alpha_;
}

const Rational& RandomVariable::param_beta() const {
    if (kind_ != RVKind::gamma) throw PreconditionError("this random variable has no parameter beta");
    return beta_;
}

int RandomVariable::param_m() const {
    if (kind_ != RVKind::binomial) throw PreconditionError("this random variable has no parameter m");
    return m_;
}

Rational RandomVariable::mean() const {
    switch (kind_) {
        case RVKind::constant_one: return 1;
        case RVKind::bernoulli: return p_;
        case RVKind::binomial: return Rational(m_) * p_;
        case RVKind::poisson: return alpha_;
        case RVKind::geometric: return rat_div(Rational(1), p_);
        case RVKind::exponential: return rat_div(Rational(1), alpha_);
        case RVKind::gamma: return rat_div(alpha_, beta_);
        case RVKind::custom: return custom_[1];
    }
    throw Error("unreachable");
}

std::vector<Rational> RandomVariable::raw_moments(int n_max) const {
    require(n_max >= 0, "raw_moments: N must be >= 0");
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    switch (kind_) {
        case RVKind::constant_one: {
            out.assign(static_cast<std::size_t>(n_max) + 1, Rational(1));
            break;
        }
        case RVKind::bernoulli: {
            out.push_back(1);
            for (int n = 1; n <= n_max; ++n) out.push_back(p_);
            break;
        }
        case RVKind::binomial: {
            auto s2 = stirling2_triangle(n_max);
            for (int n = 0; n <= n_max; ++n) {
                Rational acc = n == 0 ? Rational(1) : Rational(0);
                for (int k = 1; k <= n; ++k)
                    acc += s2[n][k] * falling(Rational(m_), k) * pow_rational(p_, k);
                out.push_back(acc);
            }
            break;
        }
        case RVKind::poisson: {
            auto s2 = stirling2_triangle(n_max);
            for (int n = 0; n <= n_max; ++n) {
                Rational acc = n == 0 ? Rational(1) : Rational(0);
                for (int k = 1; k <= n; ++k) acc += s2[n][k] * pow_rational(alpha_, k);
                out.push_back(acc);
            }
            break;
        }
        case RVKind::geometric: {
            // factorial moments E[(Y)_k] = k!(1-p)^{k-1}/p^k for Y on {1,2,...}
            auto s2 = stirling2_triangle(n_max);
            for (int n = 0; n <= n_max; ++n) {
                Rational acc = n == 0 ? Rational(1) : Rational(0);
                for (int k = 1; k <= n; ++k)
                    acc += s2[n][k] * factorial(k) * pow_rational(1 - p_, k - 1) / pow_rational(p_, k);
                out.push_back(acc);
            }
            break;
        }
        case RVKind::exponential: {
            for (int n = 0; n <= n_max; ++n) out.push_back(factorial(n) / pow_rational(alpha_, n));
            break;
        }
        case RVKind::gamma: {
            for (int n = 0; n <= n_max; ++n) out.push_back(rising(alpha_, n) / pow_rational(beta_, n));
            break;
        }
        case RVKind::custom: {
            if (static_cast<int>(custom_.size()) <= n_max)
                throw OrderError("custom moments: not enough moments supplied");
            out.assign(custom_.begin(), custom_.begin() + n_max + 1);
            break;
        }
    }
    return out;
}

std::vector<RingValue> RandomVariable::degenerate_moments(const RingValue& lambda, int n_max) const {
    auto raw = raw_moments(n_max);
    auto s1 = stirling1_triangle(n_max);
    std::vector<RingValue> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        RingValue acc = zero_like(lambda);
        RingValue lam_pow = one_like(lambda); // lambda^{n-k}, built from k = n downward
        for (int k = n; k >= 0; --k) {
            if (s1[n][k] != 0) acc = acc + scale_rat(lam_pow, s1[n][k] * raw[static_cast<std::size_t>(k)]);
            lam_pow = lam_pow * lambda;
        }
        out.push_back(std::move(acc));
    }
    return out;
}

Series RandomVariable::mgf(int order) const {
    Series s = series_from_rationals(raw_moments(order));
    // construction-time cross-checks against an independent series route
    switch (kind_) {
        case RVKind::geometric: {
            // p e^t / (1 - (1-p) e^t)
            Series et = exp_series(order);
            Series denom = egf_sub(one_series(order), egf_scale(et, 1 - p_));
            Series alt = egf_mul(egf_scale(et, p_), egf_reciprocal(denom));
            if (!(alt == s)) throw ConsistencyError("geometric MGF cross-check failed");
            break;
        }
        case RVKind::binomial: {
            Series b = make_bernoulli(p_).mgf(order);
            if (!(egf_pow(b, m_) == s)) throw ConsistencyError("binomial MGF cross-check failed");
            break;
        }
        case RVKind::exponential: {
            // 1/(1 - t/alpha)
            std::vector<Rational> lin{Rational(1), rat_div(Rational(-1), alpha_)};
            lin.resize(static_cast<std::size_t>(order) + 1, Rational(0));
            Series alt = egf_reciprocal(series_from_rationals(std::move(lin)));
            if (!(alt == s)) throw ConsistencyError("exponential MGF cross-check failed");
            break;
        }
        case RVKind::poisson: {
            // log MGF = alpha (e^t - 1)
            Series lhs = egf_log(s);
            Series rhs = egf_scale(expm1_series(order), alpha_);
            if (!(lhs == rhs)) throw ConsistencyError("poisson MGF cross-check failed");
            break;
        }
        case RVKind::gamma: {
            // exp(-alpha log(1 - t/beta))
            std::vector<Rational> lin{Rational(0), rat_div(Rational(-1), beta_)};
            lin.resize(static_cast<std::size_t>(order) + 1, Rational(0));
            Series u = series_from_rationals(std::move(lin));
            Series inner = egf_log(egf_add(one_series(order), u));
            Series alt = egf_exp(egf_scale(inner, -alpha_));
            if (!(alt == s)) throw ConsistencyError("gamma MGF cross-check failed");
            break;
        }
        default: break;
    }
    return s;
}

Series RandomVariable::mgf_degenerate(const RingValue& lambda, int order) const {
    return Series(degenerate_moments(lambda, order));
}

std::string RandomVariable::spec_string() const {
    switch (kind_) {
        case RVKind::constant_one: return "constant1";
        case RVKind::bernoulli: return "bernoulli:p=" + rat_to_string(p_);
        case RVKind::binomial:
            return "binomial:m=" + std::to_string(m_) + ",p=" + rat_to_string(p_);
        case RVKind::poisson: return "poisson:alpha=" + rat_to_string(alpha_);
        case RVKind::geometric: return "geometric:p=" + rat_to_string(p_);
        case RVKind::exponential: return "exponential:alpha=" + rat_to_string(alpha_);
        case RVKind::gamma:
            return "gamma:alpha=" + rat_to_string(alpha_) + ",beta=" + rat_to_string(beta_);
        case RVKind::custom: {
            std::string s = "custom:";
            for (std::size_t i = 0; i < custom_.size(); ++i) {
                if (i) s += ",";
                s += rat_to_string(custom_[i]);
            }
            return s;
        }
    }
    throw Error("unreachable");
}

namespace {

std::vector<std::pair<std::string, std::string>> parse_kv(std::string_view body) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t comma = body.find(',', pos);
        std::string_view piece = body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        std::size_t eq = piece.find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 >= piece.size())
            throw PreconditionError("malformed rv parameter: '" + std::string(piece) + "'");
        out.emplace_back(std::string(piece.substr(0, eq)), std::string(piece.substr(eq + 1)));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

Rational take_param(std::vector<std::pair<std::string, std::string>>& kv, const std::string& key) {
    for (auto it = kv.begin(); it != kv.end(); ++it) {
        if (it->first == key) {
            Rational v = parse_rational(it->second);
            kv.erase(it);
            return v;
        }
    }
    throw PreconditionError("rv spec missing parameter '" + key + "'");
}

} // namespace

RandomVariable RandomVariable::parse(std::string_view spec) {
    std::size_t colon = spec.find(':');
    std::string kind(spec.substr(0, colon));
    std::string_view body = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

    if (kind == "constant1") {
        if (!body.empty()) throw PreconditionError("constant1 takes no parameters");
        return constant_one();
    }
    if (kind == "custom") {
        std::vector<Rational> moments;
        std::size_t pos = 0;
        if (body.empty()) throw PreconditionError("custom: requires a moment list");
        while (pos <= body.size()) {
            std::size_t comma = body.find(',', pos);
            moments.push_back(parse_rational(
                body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        return make_custom(std::move(moments));
    }

    auto kv = parse_kv(body);
    auto done = [&kv, &spec] {
        if (!kv.empty())
            throw PreconditionError("unknown rv parameter '" + kv.front().first + "' in '" + std::string(spec) + "'");
    };
    if (kind == "bernoulli") {
        Rational p = take_param(kv, "p");
        done();
        return make_bernoulli(p);
    }
    if (kind == "binomial") {
        Rational m = take_param(kv, "m");
        Rational p = take_param(kv, "p");
        done();
        if (boost::multiprecision::denominator(m) != 1)
            throw PreconditionError("binomial: m must be a positive integer");
        return make_binomial(static_cast<int>(boost::multiprecision::numerator(m)), p);
    }
    if (kind == "poisson") {
        Rational a = take_param(kv, "alpha");
        done();
        return make_poisson(a);
    }
    if (kind == "geometric") {
        Rational p = take_param(kv, "p");
        done();
        return make_geometric(p);
    }
    if (kind == "exponential") {
        Rational a = take_param(kv, "alpha");
        done();
        return make_exponential(a);
    }
    if (kind == "gamma") {
        Rational a = take_param(kv, "alpha");
        Rational b = take_param(kv, "beta");
        done();
        return make_gamma(a, b);
    }
    throw PreconditionError("unknown random variable kind '" + kind + "'");
}

Rational sum_power_moment(const RandomVariable& y, int j, int n) {
    require(j >= 0 && n >= 0, "sum_power_moment: j, n must be >= 0");
    if (j == 0) return n == 0 ? Rational(1) : Rational(0); // S_0 = 0
    Series m = y.mgf(n);
    Series p = egf_pow(m, j);
    return p.coeff(n).rational_value();
}

} // namespace pbern
