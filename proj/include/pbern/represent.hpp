#pragma once

#include "pbern/bernoulli.hpp"
#include "pbern/stirling.hpp"

namespace pbern {

/**
 * Expansion of a polynomial in a (probabilistic, degenerate, higher-order)
 * Bernoulli basis: p(x) = sum_k coeffs[k] * basis_k(x), coefficients dense
 * including exact zeros. The engines compute coefficients from the
 * first-kind Stirling inversion of forward differences plus an integral
 * constant term; oracle_expand solves the triangular system by
 * back-substitution and is the independent ground truth.
 */
struct BasisExpansion {
    PolyFamily basis;
    std::optional<RandomVariable> y;
    std::optional<RingValue> lambda;
    int r = 1;
    std::vector<RingValue> coeffs; // a_0..a_n, n = deg p
    std::string method;
};

// p(x) = sum a_k B_k^Y(x); a_0 by the integral formula, a_{r+1} by the
// selected coefficient form (1, 2 or 3). All forms agree.
BasisExpansion expand_prob_bernoulli(const XPolynomial& p, const RandomVariable& y, int form = 1);

// Degenerate analogue with S_{1,lambda}^Y.
BasisExpansion expand_prob_deg_bernoulli(const XPolynomial& p, const RandomVariable& y,
                                         const RingValue& lambda, int form = 1);

// Higher-order bases B^{Y,(r)} / beta^{Y,(r)}_lambda; both the r > deg p and
// r <= deg p branches. g(t)^a p is computed by two routes (integral-operator
// iteration and the Stirling-weighted derivative sum) which must agree.
BasisExpansion expand_higher(const XPolynomial& p, const RandomVariable& y,
                             const std::optional<RingValue>& lambda, int r);

enum class ClassicalVariant {
    derivative_integral,  // a_k = (1/k!) integral of p^{(k)} over [0,1]
    deg_umbral_integral,  // degenerate a_0 via scaled-Bernoulli umbral composition
    deg_lambda_difference, // degenerate a_{r+1} via lambda-step differences
    deg_higher_order       // degenerate order-r coefficients, Y = 1
};

// Independent implementations of the Y = 1 special cases (they serve as
// cross-checks for the generic engines).
BasisExpansion expand_classical(const XPolynomial& p, ClassicalVariant variant,
                                const std::optional<RingValue>& lambda = std::nullopt,
                                std::optional<int> r = std::nullopt);

// Classical higher-order specialization (plain Bernoulli of order r).
BasisExpansion expand_classical_higher(const XPolynomial& p, int r);

// Triangular back-substitution against explicit basis polynomials.
BasisExpansion oracle_expand(const XPolynomial& p, const PolySequence& basis);

// Reconstruct sum a_k basis_k; exact identity with the expanded polynomial.
XPolynomial reconstruct(const BasisExpansion& expansion, const PolySequence& basis);

} // namespace pbern
