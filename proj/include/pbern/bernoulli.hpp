#pragma once

#include <memory>
#include <optional>

#include "pbern/randvar.hpp"
#include "pbern/xops.hpp"

namespace pbern {

/**
 * Polynomial families on the Bernoulli side. Everything is read off the
 * bivariate EGF (t/(M(t)-1))^r * M(t)^x where M is the plain or degenerate
 * MGF of Y; M^x is expanded as the finite sum of x^j (log M)^j / j!, so the
 * series module is instantiated over the polynomial ring in x here.
 */
enum class PolyFamily {
    bern,
    bern_order,
    deg_bern,
    deg_bern_order,
    prob_bern,
    prob_bern_order,
    prob_deg_bern,
    prob_deg_bern_order
};

const char* poly_family_name(PolyFamily f);
bool poly_family_degenerate(PolyFamily f);
bool poly_family_probabilistic(PolyFamily f);
bool poly_family_has_order(PolyFamily f);

struct PolySequence {
    PolyFamily family;
    std::optional<RandomVariable> y;
    std::optional<RingValue> lambda;
    int r = 1;
    std::vector<XPolynomial> entries; // entries[n] has degree n

    const XPolynomial& at(int n) const {
        if (n < 0 || n >= static_cast<int>(entries.size()))
            throw OrderError("PolySequence: index outside computed range");
        return entries[static_cast<std::size_t>(n)];
    }
};

PolySequence poly_sequence(PolyFamily family, std::optional<RandomVariable> y,
                           std::optional<RingValue> lambda, int r, int n_max);
std::shared_ptr<const PolySequence> poly_sequence_cached(PolyFamily family,
                                                         std::optional<RandomVariable> y,
                                                         std::optional<RingValue> lambda, int r, int n_max);

enum class SpecialFamily {
    bern_num,           // B_n:            t/(e^t - 1)
    deg_bern_num,       // beta_{n,lambda}: t/(e_lambda(t) - 1)
    bern_second,        // b_l:            t/log(1+t)
    deg_bern_second,    // b_{l,lambda}:   t/log_lambda(1+t)
    frobenius_euler,    // H_n^{(r)}(u):   ((1-u)/(e^t - u))^r, u != 1
    deg_frobenius_euler // h_{n,lambda}^{(r)}(u)
};

const char* special_family_name(SpecialFamily f);
bool special_family_degenerate(SpecialFamily f);
bool special_family_has_u(SpecialFamily f);

struct SpecialSequence {
    SpecialFamily family;
    std::optional<RingValue> lambda;
    int r = 1;
    Rational u;
    std::vector<RingValue> entries;

    const RingValue& at(int n) const {
        if (n < 0 || n >= static_cast<int>(entries.size()))
            throw OrderError("SpecialSequence: index outside computed range");
        return entries[static_cast<std::size_t>(n)];
    }
};

SpecialSequence special_sequence(SpecialFamily family, std::optional<RingValue> lambda, int r,
                                 const Rational& u, int n_max);

// lambda^n B_n^{(a)}(x/lambda) = sum_k C(n,k) B^{(a)}_{n-k} lambda^{n-k} x^k,
// a LambdaMode polynomial when lambda is symbolic.
XPolynomial scaled_bernoulli(int n, int a, const RingValue& lambda);

// Higher-order Bernoulli numbers B_n^{(a)} (EGF of (t/(e^t-1))^a).
std::vector<Rational> bernoulli_numbers_order(int a, int n_max);

} // namespace pbern
