#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pbern/series.hpp"

namespace pbern {

enum class RVKind { constant_one, bernoulli, binomial, poisson, geometric, exponential, gamma, custom };

/**
 * Exact moment provider for the random variable Y. Parameters are exact
 * rationals; parameter domains are enforced at construction, as is E[Y] != 0.
 *
 * Moment generating functions are treated as formal power series in t
 * throughout: convergence radii are never consulted. Each distribution
 * supplies moments by closed form, and where an independent generating
 * function construction exists the two are compared at construction time —
 * disagreement throws ConsistencyError.
 */
class RandomVariable {
  public:
    static RandomVariable constant_one();
    static RandomVariable make_bernoulli(const Rational& p);          // 0 < p <= 1
    static RandomVariable make_binomial(int m, const Rational& p);    // m >= 1, 0 < p <= 1
    static RandomVariable make_poisson(const Rational& alpha);        // alpha > 0
    static RandomVariable make_geometric(const Rational& p);          // 0 < p < 1, support {1,2,...}
    static RandomVariable make_exponential(const Rational& alpha);    // alpha > 0
    static RandomVariable make_gamma(const Rational& alpha, const Rational& beta); // alpha, beta > 0
    static RandomVariable make_custom(std::vector<Rational> raw_moments); // E[Y^0]=1, E[Y]!=0

    RVKind kind() const { return kind_; }
    Rational mean() const; // E[Y], nonzero by construction

    // Parameter accessors; throw unless the kind carries the parameter.
    const Rational& param_p() const;
    const Rational& param_alpha() const;
    const Rational& param_beta() const;
    int param_m() const;

    // E[Y^0..Y^N], exact.
    std::vector<Rational> raw_moments(int n_max) const;

    // E[(Y)_{n,lambda}] = sum_k S_1(n,k) lambda^{n-k} E[Y^k]; LambdaMode when
    // lambda is symbolic.
    std::vector<RingValue> degenerate_moments(const RingValue& lambda, int n_max) const;

    // E[e^{Yt}] as an EGF of raw moments (RationalMode).
    Series mgf(int order) const;
    // E[e_lambda^Y(t)] as an EGF of degenerate moments.
    Series mgf_degenerate(const RingValue& lambda, int order) const;

    // Canonical spec string, e.g. "exponential:alpha=3/2".
    std::string spec_string() const;
    static RandomVariable parse(std::string_view spec);

    friend bool operator==(const RandomVariable& a, const RandomVariable& b) {
        return a.spec_string() == b.spec_string();
    }

  private:
    RandomVariable() = default;
    RVKind kind_ = RVKind::constant_one;
    Rational p_, alpha_, beta_;
    int m_ = 0;
    std::vector<Rational> custom_;
};

// E[S_j^n] for S_j the sum of j i.i.d. copies of Y; S_0 = 0.
Rational sum_power_moment(const RandomVariable& y, int j, int n);

} // namespace pbern
