#include "test_util.hpp"

#include "pbern/randvar.hpp"
#include "pbern/report.hpp"

#include <functional>

using namespace pbern;
using namespace testutil;

namespace {

// brute-force count of set partitions of {0..n-1} into exactly k blocks,
// by enumerating restricted growth strings
long long partitions_into_blocks(int n, int k) {
    if (n == 0) return k == 0 ? 1 : 0;
    long long count = 0;
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int i, int maxv) {
        if (i == n) {
            if (maxv + 1 == k) ++count;
            return;
        }
        for (int v = 0; v <= maxv + 1; ++v) {
            rgs[static_cast<std::size_t>(i)] = v;
            rec(i + 1, std::max(maxv, v));
        }
    };
    rec(1, 0); // element 0 is always in block 0
    return count;
}

Series random_series(SplitMix64& rng, int order, bool delta) {
    std::vector<RingValue> c;
    for (int i = 0; i <= order; ++i) c.push_back(rv(rng.int_in(-9, 9)));
    if (delta) {
        c[0] = rv(0);
        long long lead = rng.int_in(1, 9);
        if (rng.next() % 2) lead = -lead;
        c[1] = rv(lead);
    }
    return Series(std::move(c));
}

} // namespace

TEST_CASE("egf_mul basics and the S2 column oracle") {
    Series et = exp_series(8);
    Series sq = egf_mul(et, et);
    for (int n = 0; n <= 8; ++n) CHECK(sq.coeff(n) == RingValue(pow_rational(q(2), n)));
    SplitMix64 rng(3);
    Series f = random_series(rng, 8, false);
    CHECK(egf_mul(one_series(8), f) == f); // identity

    // (e^t-1)^2/2! coefficients are S_2(n,2); brute-force partition count
    Series em1 = expm1_series(8);
    Series s2col = egf_scale(egf_mul(em1, em1), q(1, 2));
    for (int n = 0; n <= 8; ++n)
        CHECK(s2col.coeff(n) == rv(partitions_into_blocks(n, 2)));
    CHECK(s2col.coeff(3) == rv(3));
}

TEST_CASE("egf_mul is commutative and associative") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        Series a = random_series(rng, 10, false);
        Series b = random_series(rng, 10, false);
        Series c = random_series(rng, 10, false);
        CHECK(egf_mul(a, b) == egf_mul(b, a));
        CHECK(egf_mul(egf_mul(a, b), c) == egf_mul(a, egf_mul(b, c)));
    }
}

TEST_CASE("egf_reciprocal") {
    Series et = exp_series(8);
    Series r = egf_reciprocal(et);
    for (int n = 0; n <= 8; ++n) CHECK(r.coeff(n) == rv(n % 2 == 0 ? 1 : -1));
    CHECK(egf_reciprocal(one_series(6)) == one_series(6));

    // reciprocal of (e^t-1)/t gives the Bernoulli numbers; solve the
    // triangular system by hand to order 2 as an oracle:
    //   d = (e^t-1)/t has EGF coefficients d_n = 1/(n+1)
    //   B_0 d_0 = 1 -> B_0 = 1
    //   B_1 + C(1,1) d_1 B_0 = 0 -> B_1 = -1/2
    //   B_2 + C(2,1) d_1 B_1 + C(2,2) d_2 B_0 = 0 -> B_2 = 1 - 1/3 - ... = 1/6
    Series bern = egf_reciprocal(divide_by_t(expm1_series(9)));
    CHECK(bern.coeff(0) == rv(1));
    CHECK(bern.coeff(1) == rv(-1, 2));
    CHECK(bern.coeff(2) == rv(1, 6));
    CHECK(egf_mul(bern, divide_by_t(expm1_series(9))) == one_series(8));

    CHECK_THROWS_AS(egf_reciprocal(expm1_series(4)), PreconditionError);
}

TEST_CASE("egf_exp and egf_log") {
    CHECK(egf_log(exp_series(8)) == t_series(8));
    Series zero(std::vector<RingValue>(9, rv(0)));
    CHECK(egf_exp(zero) == one_series(8));
    CHECK_THROWS_AS(egf_exp(one_series(4)), PreconditionError);
    CHECK_THROWS_AS(egf_log(t_series(4)), PreconditionError);

    // log of the Poisson MGF is alpha (e^t - 1)
    auto y = RandomVariable::make_poisson(q(3, 2));
    Series lm = egf_log(y.mgf(10));
    CHECK(lm == egf_scale(expm1_series(10), q(3, 2)));

    SplitMix64 rng(7);
    for (int trial = 0; trial < 15; ++trial) {
        Series d = random_series(rng, 8, true);
        CHECK(egf_log(egf_exp(d)) == d);
        Series u = random_series(rng, 8, false);
        u.coeff(0) = rv(1);
        CHECK(egf_exp(egf_log(u)) == u);
    }
}

TEST_CASE("egf_compose") {
    SplitMix64 rng(9);
    Series f = random_series(rng, 8, true);
    CHECK(egf_compose(t_series(8), f) == f);
    CHECK(egf_compose(expm1_series(10), log1p_series(10)) == t_series(10));

    RingValue lam = RingValue::lambda();
    CHECK(egf_compose(deg_expm1_series(lam, 10), deg_log1p_series(lam, 10)) ==
          t_series(10, Mode::lambda));
    CHECK(egf_compose(deg_log1p_series(lam, 10), deg_expm1_series(lam, 10)) ==
          t_series(10, Mode::lambda));

    CHECK_THROWS_AS(egf_compose(f, one_series(8)), PreconditionError);
}

TEST_CASE("comp_inverse") {
    CHECK(comp_inverse(t_series(6)) == t_series(6));
    Series li = comp_inverse(expm1_series(8));
    CHECK(li == log1p_series(8)); // c_n = (-1)^{n-1}(n-1)!
    CHECK(egf_compose(expm1_series(8), li) == t_series(8));
    CHECK(egf_compose(li, expm1_series(8)) == t_series(8));

    // exponential Y: inverse of log E[e^{Yt}] = -log(1 - t/alpha) is alpha(1 - e^{-t})
    Rational alpha(3, 2);
    auto y = RandomVariable::make_exponential(alpha);
    Series f_y = comp_inverse(egf_log(y.mgf(10)));
    std::vector<RingValue> expect{rv(0)};
    for (int n = 1; n <= 10; ++n) expect.push_back(RingValue(alpha * (n % 2 == 1 ? 1 : -1)));
    CHECK(f_y == Series(std::move(expect)));

    CHECK_THROWS_AS(comp_inverse(one_series(5)), PreconditionError);

    SplitMix64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        Series d = random_series(rng, 10, true);
        Series g = comp_inverse(d);
        CHECK(egf_compose(d, g) == t_series(10));
        CHECK(egf_compose(g, d) == t_series(10));
    }
}

TEST_CASE("apply_operator and functional") {
    // e^{yt} x^2 = (x+y)^2 with y = 3
    XPolynomial x2 = x_monomial(2);
    XPolynomial shifted = apply_operator(exp_at_series(q(3), 4), x2);
    CHECK(shifted == xp({q(9), q(6), q(1)}));
    // t^2 x^3 = 6x; as an EGF, t^2 = 2! t^2/2! carries coefficient 2
    Series t2(std::vector<RingValue>{rv(0), rv(0), rv(2), rv(0)});
    CHECK(apply_operator(t2, x_monomial(3)) == xp({q(0), q(6)}));
    // ((e^t-1)/t) x = x + 1/2
    CHECK(apply_operator(divide_by_t(expm1_series(3)), x_monomial(1)) == xp({q(1, 2), q(1)}));

    // <t^k | x^n> = n! delta_{n,k}; the EGF coefficient of t^k is k!
    for (int n = 0; n <= 4; ++n)
        for (int k = 0; k <= 4; ++k) {
            std::vector<RingValue> tk(6, rv(0));
            tk[static_cast<std::size_t>(k)] = RingValue(factorial(k));
            CHECK(functional(Series(tk), x_monomial(n)) ==
                  RingValue(n == k ? factorial(n) : Rational(0)));
        }
    // <e^{yt} | p> = p(y)
    XPolynomial p = xp({q(1), q(-2), q(0), q(5)});
    CHECK(functional(exp_at_series(q(2, 3), 4), p) == eval_poly(p, rv(2, 3)));
    // <(e^{yt}-1)/t | x> = y^2/2
    Series int_op = divide_by_t(egf_sub(exp_at_series(q(5), 4), one_series(4)));
    CHECK(functional(int_op, x_monomial(1)) == rv(25, 2));

    CHECK_THROWS_AS(apply_operator(t2, x_monomial(5)), OrderError);
}

TEST_CASE("apply_operator is multiplicative in the series argument") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 15; ++trial) {
        Series f = random_series(rng, 8, false);
        Series g = random_series(rng, 8, false);
        std::vector<Rational> pc;
        for (int i = 0; i <= 6; ++i) pc.emplace_back(rng.int_in(-9, 9));
        XPolynomial p = poly_from_rationals(pc);
        CHECK(apply_operator(egf_mul(f, g), p) == apply_operator(f, apply_operator(g, p)));
        // linearity spot check
        XPolynomial sum = apply_operator(f, p) + apply_operator(g, p);
        CHECK(apply_operator(egf_add(f, g), p) == sum);
    }
}

TEST_CASE("forward differences") {
    CHECK(eval_at_zero(forward_diff(x_monomial(3), rv(1), 2), Mode::rational) == rv(6));
    CHECK(forward_diff(constant_poly(rv(7)), rv(1), 1).is_zero_poly());
    RingValue lam = RingValue::lambda();
    XPolynomial x2l = x_monomial(2, Mode::lambda);
    CHECK(forward_diff(x2l, lam, 1) ==
          XPolynomial(std::vector<RingValue>{lv({q(0), q(0), q(1)}), lv({q(0), q(2)})}));

    // matches the binomial-sum definition
    SplitMix64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Rational> pc;
        for (int i = 0; i <= 5; ++i) pc.emplace_back(rng.int_in(-9, 9));
        XPolynomial p = poly_from_rationals(pc);
        RingValue a = rv(rng.int_in(-3, 3));
        int order = static_cast<int>(rng.next() % 4);
        XPolynomial direct;
        for (int i = 0; i <= order; ++i) {
            Rational sign = ((order - i) % 2 == 0) ? 1 : -1;
            direct = direct + scale_rat(shift(p, scale_rat(a, Rational(i))), sign * binomial(order, i));
        }
        CHECK(forward_diff(p, a, order) == direct);
    }

    // Delta (x)_n = n (x)_{n-1}
    for (int n = 1; n <= 10; ++n) {
        XPolynomial fp = falling_poly(n, rv(1));
        CHECK(forward_diff(fp, rv(1), 1) == scale_rat(falling_poly(n - 1, rv(1)), Rational(n)));
    }
}

TEST_CASE("delta powers of monomials give S2") {
    auto s2 = stirling2_triangle(10);
    for (int n = 0; n <= 10; ++n)
        for (int j = 0; j <= n; ++j) {
            RingValue v = eval_at_zero(forward_diff(x_monomial(n), rv(1), j), Mode::rational);
            CHECK(div_rat(v, factorial(j)) == RingValue(s2[n][j]));
        }
}

TEST_CASE("integrate_unit") {
    CHECK(integrate_unit(constant_poly(rv(1))) == rv(1));
    CHECK(integrate_unit(x_monomial(2)) == rv(1, 3));
    // B_3(x) = x^3 - 3/2 x^2 + 1/2 x integrates to zero over [0,1]
    XPolynomial b3 = xp({q(0), q(1, 2), q(-3, 2), q(1)});
    CHECK(integrate_unit(b3) == rv(0));
}

TEST_CASE("operator_I") {
    CHECK(operator_I(constant_poly(rv(1)), rv(1), 1) == constant_poly(rv(1)));
    CHECK(operator_I(x_monomial(1), rv(1), 1) == xp({q(1, 2), q(1)}));
    RingValue lam = RingValue::lambda();
    CHECK(operator_I(x_monomial(1, Mode::lambda), lam, 1) ==
          XPolynomial(std::vector<RingValue>{lv({q(0), q(0), q(1, 2)}), lv({q(0), q(1)})}));

    // I^m equals the operator ((e^t-1)/t)^m given by S_2(l+m,m) m!/(l+m)! t^l
    auto s2 = stirling2_triangle(12);
    SplitMix64 rng(19);
    for (int m = 1; m <= 3; ++m) {
        std::vector<Rational> pc;
        for (int i = 0; i <= 6; ++i) pc.emplace_back(rng.int_in(-9, 9));
        XPolynomial p = poly_from_rationals(pc);
        std::vector<RingValue> sc;
        for (int l = 0; l <= 6; ++l)
            sc.push_back(RingValue(s2[l + m][m] * factorial(m) * factorial(l) / factorial(l + m)));
        CHECK(operator_I(p, rv(1), m) == apply_operator(Series(std::move(sc)), p));
    }
}

TEST_CASE("umbral composition") {
    std::vector<XPolynomial> monos;
    for (int k = 0; k <= 5; ++k) monos.push_back(x_monomial(k));
    XPolynomial p = xp({q(2), q(0), q(1), q(4)});
    CHECK(umbral_compose(p, monos) == p);

    // x^2 with B_k(x) gives B_2(x) = x^2 - x + 1/6
    std::vector<XPolynomial> bern{constant_poly(rv(1)), xp({q(-1, 2), q(1)}), xp({q(1, 6), q(-1), q(1)})};
    CHECK(umbral_compose(x_monomial(2), bern) == xp({q(1, 6), q(-1), q(1)}));

    CHECK_THROWS_AS(umbral_compose(p, bern), PreconditionError);
}

TEST_CASE("series order classification") {
    CHECK(is_delta_series(expm1_series(5)));
    CHECK(!is_delta_series(exp_series(5)));
    CHECK(is_invertible_series(exp_series(5)));
    CHECK(!is_invertible_series(expm1_series(5)));
    CHECK(series_order(expm1_series(5)) == 1);
    CHECK(series_order(one_series(5)) == 0);
    CHECK(!series_order(Series(std::vector<RingValue>(4, rv(0)))).has_value());
    // delta classification holds for lambda-mode series with rational-unit linear term
    CHECK(is_delta_series(deg_expm1_series(RingValue::lambda(), 5)));
    CHECK_THROWS_AS(truncate(one_series(3), 5), OrderError);
}
