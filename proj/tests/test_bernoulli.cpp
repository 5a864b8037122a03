#include "test_util.hpp"

#include "pbern/bernoulli.hpp"
#include "pbern/stirling.hpp"
#include "pbern/verify.hpp"

using namespace pbern;
using namespace testutil;

TEST_CASE("classical Bernoulli polynomials") {
    auto seq = poly_sequence(PolyFamily::bern, {}, {}, 1, 4);
    CHECK(seq.at(0) == constant_poly(rv(1)));
    CHECK(seq.at(1) == xp({q(-1, 2), q(1)}));
    CHECK(seq.at(2) == xp({q(1, 6), q(-1), q(1)})); // x^2 - x + 1/6
    CHECK(seq.at(3) == xp({q(0), q(1, 2), q(-3, 2), q(1)}));
    for (int n = 0; n <= 4; ++n) CHECK(seq.at(n).degree() == n);
}

TEST_CASE("degenerate Bernoulli polynomials") {
    auto seq = poly_sequence(PolyFamily::deg_bern, {}, RingValue::lambda(), 1, 3);
    // beta_{1,lambda}(x) = x + (lambda-1)/2
    CHECK(seq.at(1) == XPolynomial(std::vector<RingValue>{lv({q(-1, 2), q(1, 2)}), lv({q(1)})}));
    // lambda -> 0 recovers the plain family
    auto plain = poly_sequence(PolyFamily::bern, {}, {}, 1, 3);
    for (int n = 0; n <= 3; ++n) CHECK(eval_lambda_poly(seq.at(n), q(0)) == plain.at(n));
}

TEST_CASE("probabilistic Bernoulli basics") {
    for (const auto& y : fixture_random_variables()) {
        auto seq = poly_sequence(PolyFamily::prob_bern, y, {}, 1, 8);
        CHECK(seq.at(0) == constant_poly(RingValue(rat_div(q(1), y.mean()))));
        for (int n = 0; n <= 8; ++n) CHECK(seq.at(n).degree() == n);
        // B_n^Y(1) - B_n^Y(0) = delta_{n,1}
        for (int n = 0; n <= 8; ++n) {
            RingValue diff = eval_poly(seq.at(n), rv(1)) - eval_poly(seq.at(n), rv(0));
            CHECK(diff == (n == 1 ? rv(1) : rv(0)));
        }
    }
}

TEST_CASE("lowering by the basis delta series") {
    auto y = RandomVariable::make_poisson(q(3, 2));
    auto seq = poly_sequence(PolyFamily::prob_bern, y, {}, 1, 6);
    Series f = comp_inverse(egf_log(y.mgf(8)));
    for (int n = 1; n <= 6; ++n)
        CHECK(apply_operator(f, seq.at(n)) == scale_rat(seq.at(n - 1), Rational(n)));
}

TEST_CASE("constant1 reduces probabilistic to classical") {
    auto prob = poly_sequence(PolyFamily::prob_bern, RandomVariable::constant_one(), {}, 1, 10);
    auto plain = poly_sequence(PolyFamily::bern, {}, {}, 1, 10);
    for (int n = 0; n <= 10; ++n) CHECK(prob.at(n) == plain.at(n));
    RingValue lam = RingValue::lambda();
    auto probd = poly_sequence(PolyFamily::prob_deg_bern, RandomVariable::constant_one(), lam, 1, 8);
    auto plaind = poly_sequence(PolyFamily::deg_bern, {}, lam, 1, 8);
    for (int n = 0; n <= 8; ++n) CHECK(probd.at(n) == plaind.at(n));
}

TEST_CASE("order-r families") {
    // order 0 is M^x alone: entries are plain powers sum_j S-numbers... check via Y=1: e^{xt} -> x^n
    auto seq0 = poly_sequence(PolyFamily::bern_order, {}, {}, 0, 5);
    for (int n = 0; n <= 5; ++n) CHECK(seq0.at(n) == x_monomial(n));
    // order 1 equals the plain family
    auto y = RandomVariable::make_exponential(q(3, 2));
    auto seq1 = poly_sequence(PolyFamily::prob_bern_order, y, {}, 1, 6);
    auto plain = poly_sequence(PolyFamily::prob_bern, y, {}, 1, 6);
    for (int n = 0; n <= 6; ++n) CHECK(seq1.at(n) == plain.at(n));
    // B_0^{Y,(r)} = E[Y]^{-r}
    auto seq3 = poly_sequence(PolyFamily::prob_bern_order, y, {}, 3, 4);
    CHECK(seq3.at(0) == constant_poly(RingValue(pow_rational(y.mean(), -3))));
}

TEST_CASE("special sequences") {
    auto b = special_sequence(SpecialFamily::bern_num, {}, 1, 0, 6);
    CHECK(b.at(0) == rv(1));
    CHECK(b.at(1) == rv(-1, 2));
    CHECK(b.at(2) == rv(1, 6));
    CHECK(b.at(4) == rv(-1, 30));

    // b_l: t/log(1+t) = 1 + t/2 - t^2/12 + ...; EGF rescale gives b_2 = -1/6
    auto bl = special_sequence(SpecialFamily::bern_second, {}, 1, 0, 4);
    CHECK(bl.at(0) == rv(1));
    CHECK(bl.at(1) == rv(1, 2));
    CHECK(bl.at(2) == rv(-1, 6));
    CHECK(bl.at(3) == rv(1, 4));

    // H_0^{(r)}(u) = 1 and the entries[0] = 1 invariant across families
    for (int r = 0; r <= 3; ++r)
        CHECK(special_sequence(SpecialFamily::frobenius_euler, {}, r, q(-1, 2), 5).at(0) == rv(1));
    RingValue lam = RingValue::lambda();
    CHECK(special_sequence(SpecialFamily::deg_bern_num, lam, 1, 0, 4).at(0) ==
          RingValue::one(Mode::lambda));
    CHECK(special_sequence(SpecialFamily::deg_bern_second, lam, 1, 0, 4).at(0) ==
          RingValue::one(Mode::lambda));

    // degenerate Frobenius-Euler at lambda = 0 equals the plain one
    for (int r = 1; r <= 2; ++r) {
        auto hd = special_sequence(SpecialFamily::deg_frobenius_euler, lam, r, q(-1, 2), 8);
        auto h = special_sequence(SpecialFamily::frobenius_euler, {}, r, q(-1, 2), 8);
        for (int n = 0; n <= 8; ++n) CHECK(eval_lambda(hd.at(n), q(0)) == h.at(n).rational_value());
    }

    CHECK_THROWS_AS(special_sequence(SpecialFamily::frobenius_euler, {}, 1, q(1), 4), PreconditionError);
    CHECK_THROWS_AS(special_sequence(SpecialFamily::deg_bern_num, {}, 1, 0, 4), PreconditionError);
}

TEST_CASE("scaled Bernoulli polynomials") {
    RingValue lam = RingValue::lambda();
    CHECK(scaled_bernoulli(0, 1, lam) == constant_poly(RingValue::one(Mode::lambda)));
    // n=1: x - lambda/2
    CHECK(scaled_bernoulli(1, 1, lam) ==
          XPolynomial(std::vector<RingValue>{lv({q(0), q(-1, 2)}), lv({q(1)})}));
    // n=2: x^2 - lambda x + lambda^2/6
    CHECK(scaled_bernoulli(2, 1, lam) ==
          XPolynomial(std::vector<RingValue>{RingValue(lambda_monomial(2, q(1, 6))),
                                             lv({q(0), q(-1)}), lv({q(1)})}));
    // umbral composition of x^2 with the scaled family reproduces it
    std::vector<XPolynomial> seq{scaled_bernoulli(0, 1, lam), scaled_bernoulli(1, 1, lam),
                                 scaled_bernoulli(2, 1, lam)};
    CHECK(umbral_compose(x_monomial(2, Mode::lambda), seq) == scaled_bernoulli(2, 1, lam));
}

TEST_CASE("unit-shift difference identity spot check") {
    auto y = RandomVariable::make_geometric(q(1, 3));
    auto seq = poly_sequence(PolyFamily::prob_bern, y, {}, 1, 6);
    auto s2t = stirling_cached(StirlingFamily::s2_prob, y, {}, 5);
    for (int n = 1; n <= 6; ++n) {
        XPolynomial lhs = shift(seq.at(n), rv(1)) - seq.at(n);
        XPolynomial rhs;
        for (int k = 0; k <= n - 1; ++k)
            rhs = rhs + scale_ring(falling_poly(k, rv(1)), scale_rat(s2t->at(n - 1, k), Rational(n)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("poly sequence caching") {
    auto y = RandomVariable::make_gamma(q(5, 2), q(3));
    auto a = poly_sequence_cached(PolyFamily::prob_bern, y, {}, 1, 5);
    auto b = poly_sequence_cached(PolyFamily::prob_bern, y, {}, 1, 5);
    CHECK(a.get() == b.get());
}
