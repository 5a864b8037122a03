#pragma once

#include <vector>

#include "pbern/series.hpp"

namespace pbern {

// Polynomials in x with exact coefficients: the objects being expanded.
using XPolynomial = Polynomial<RingValue>;

XPolynomial x_monomial(int n, Mode m = Mode::rational);
XPolynomial constant_poly(const RingValue& c);
XPolynomial poly_from_rationals(const std::vector<Rational>& coeffs, Mode m = Mode::rational);

// Lift every coefficient into LambdaMode (rational constants embed losslessly).
XPolynomial lift_lambda(const XPolynomial& p);
// Evaluate LambdaMode coefficients at a rational lambda; result is RationalMode.
XPolynomial eval_lambda_poly(const XPolynomial& p, const Rational& at);

XPolynomial derivative(const XPolynomial& p, int times = 1);
// p(x + c), exact binomial shift.
XPolynomial shift(const XPolynomial& p, const RingValue& c);
RingValue eval_poly(const XPolynomial& p, const RingValue& at);
RingValue eval_at_zero(const XPolynomial& p, Mode m);

// f(t) acting as a differential operator: t^k x^n = (n)_k x^{n-k} extended
// linearly, so f(t)x^n = sum_k C(n,k) a_k x^{n-k}. Requires order(f) >= deg p.
XPolynomial apply_operator(const Series& f, const XPolynomial& p);

// <f(t)|p(x)> = (f(t)p(x))|_{x=0}.
RingValue functional(const Series& f, const XPolynomial& p);

// Delta_step^order p(x) = sum_i C(order,i)(-1)^{order-i} p(x + i step).
XPolynomial forward_diff(const XPolynomial& p, const RingValue& step, int order);

// Exact integral over [0,1].
RingValue integrate_unit(const XPolynomial& p, Mode m = Mode::rational);

// (I q)(x) = integral of q over [x, x+step], iterated `power` times.
// Equals applying ((e^{step t} - 1)/t)^power as an operator.
XPolynomial operator_I(const XPolynomial& p, const RingValue& step, int power);

// sum_k q_k * sequence[k] where q = sum q_k x^k.
XPolynomial umbral_compose(const XPolynomial& q, const std::vector<XPolynomial>& sequence);

// (x)_{n,step} as a polynomial in x; step = 1 gives the falling factorial.
XPolynomial falling_poly(int n, const RingValue& step);

} // namespace pbern
