#include "test_util.hpp"

#include "pbern/randvar.hpp"
#include "pbern/report.hpp"

using namespace pbern;
using namespace testutil;

namespace {

std::vector<RandomVariable> all_kinds() {
    return {RandomVariable::constant_one(),
            RandomVariable::make_bernoulli(q(2, 3)),
            RandomVariable::make_binomial(4, q(2, 5)),
            RandomVariable::make_poisson(q(3, 2)),
            RandomVariable::make_geometric(q(1, 3)),
            RandomVariable::make_exponential(q(3, 2)),
            RandomVariable::make_gamma(q(5, 2), q(3))};
}

} // namespace

TEST_CASE("raw moments") {
    auto expo = RandomVariable::make_exponential(q(3, 2));
    // E[Y^2] = 2/alpha^2, by integration by parts
    CHECK(expo.raw_moments(2)[2] == q(2) / (q(3, 2) * q(3, 2)));
    CHECK(RandomVariable::make_bernoulli(q(2, 3)).raw_moments(5)[5] == q(2, 3));
    auto one = RandomVariable::constant_one();
    for (const auto& m : one.raw_moments(7)) CHECK(m == q(1));
    // gamma: E[Y] = alpha/beta, E[Y^2] = alpha(alpha+1)/beta^2
    auto g = RandomVariable::make_gamma(q(5, 2), q(3));
    CHECK(g.raw_moments(2)[1] == q(5, 6));
    CHECK(g.raw_moments(2)[2] == q(5, 2) * q(7, 2) / q(9));
}

TEST_CASE("degenerate moments") {
    RingValue lam = RingValue::lambda();
    for (const auto& y : all_kinds()) {
        auto dm = y.degenerate_moments(lam, 3);
        CHECK(dm[0] == RingValue::one(Mode::lambda));
        CHECK(dm[1] == lift_to(RingValue(y.mean()), Mode::lambda));
    }
    auto one = RandomVariable::constant_one();
    CHECK(one.degenerate_moments(lam, 2)[2] == lv({q(1), q(-1)})); // (1)_{2,lambda} = 1 - lambda
}

TEST_CASE("degenerate moments at lambda=0 equal raw moments") {
    RingValue lam = RingValue::lambda();
    for (const auto& y : all_kinds()) {
        auto raw = y.raw_moments(10);
        auto dm = y.degenerate_moments(lam, 10);
        for (int n = 0; n <= 10; ++n)
            CHECK(eval_lambda(dm[static_cast<std::size_t>(n)], q(0)) == raw[static_cast<std::size_t>(n)]);
        // fixed rational lambda stays in rational mode
        auto dm_fixed = y.degenerate_moments(rv(1, 3), 4);
        CHECK(dm_fixed[2].mode() == Mode::rational);
    }
}

TEST_CASE("mgf equals raw moments and cross-checks hold") {
    for (const auto& y : all_kinds()) {
        Series m = y.mgf(10); // construction-time cross-checks run here
        auto raw = y.raw_moments(10);
        for (int n = 0; n <= 10; ++n) CHECK(m.coeff(n) == RingValue(raw[static_cast<std::size_t>(n)]));
    }
    // constant1 degenerate MGF is e_lambda(t): coefficients (1)_{n,lambda}
    RingValue lam = RingValue::lambda();
    Series e = RandomVariable::constant_one().mgf_degenerate(lam, 6);
    CHECK(e == deg_exp_series(lam, 6));
    // log of the Poisson MGF is alpha(e^t - 1): c_n = alpha for n >= 1
    Series lp_ = egf_log(RandomVariable::make_poisson(q(3, 2)).mgf(10));
    for (int n = 1; n <= 10; ++n) CHECK(lp_.coeff(n) == rv(3, 2));
}

TEST_CASE("geometric factorial-moment construction agrees with the rational MGF") {
    for (const Rational& p : {q(1, 3), q(2, 5), q(9, 10)}) {
        auto y = RandomVariable::make_geometric(p);
        Series m = y.mgf(12);
        Series alt = egf_mul(egf_scale(exp_series(12), p),
                             egf_reciprocal(egf_sub(one_series(12), egf_scale(exp_series(12), 1 - p))));
        CHECK(m == alt);
    }
}

TEST_CASE("binomial MGF is the m-th power of the Bernoulli MGF") {
    Series b = RandomVariable::make_bernoulli(q(2, 5)).mgf(10);
    Series bin = RandomVariable::make_binomial(4, q(2, 5)).mgf(10);
    CHECK(egf_pow(b, 4) == bin);
}

TEST_CASE("sum power moments") {
    auto y = RandomVariable::make_exponential(q(3, 2));
    CHECK(sum_power_moment(y, 0, 3) == q(0));
    CHECK(sum_power_moment(y, 0, 0) == q(1));
    for (int n = 0; n <= 6; ++n) CHECK(sum_power_moment(y, 1, n) == y.raw_moments(n)[static_cast<std::size_t>(n)]);
    CHECK(sum_power_moment(RandomVariable::constant_one(), 3, 2) == q(9)); // S_3 = 3
}

TEST_CASE("custom moments") {
    auto y = RandomVariable::make_custom({q(1), q(1, 2), q(1, 3), q(1, 4)});
    CHECK(y.mean() == q(1, 2));
    CHECK(y.raw_moments(3)[3] == q(1, 4));
    CHECK_THROWS_AS(y.raw_moments(7), OrderError);
    CHECK_THROWS_AS(RandomVariable::make_custom({q(1), q(0)}), PreconditionError);
    CHECK_THROWS_AS(RandomVariable::make_custom({q(2), q(1)}), PreconditionError);
}

TEST_CASE("parameter domain validation") {
    CHECK_THROWS_AS(RandomVariable::make_bernoulli(q(0)), PreconditionError);
    CHECK_THROWS_AS(RandomVariable::make_bernoulli(q(3, 2)), PreconditionError);
    CHECK_THROWS_AS(RandomVariable::make_geometric(q(1)), PreconditionError);
    CHECK_THROWS_AS(RandomVariable::make_poisson(q(-1)), PreconditionError);
    CHECK_THROWS_AS(RandomVariable::make_exponential(q(0)), PreconditionError);
    CHECK_THROWS_AS(RandomVariable::make_gamma(q(1), q(0)), PreconditionError);
    CHECK_THROWS_AS(RandomVariable::make_binomial(0, q(1, 2)), PreconditionError);
}

TEST_CASE("spec string parsing") {
    for (const auto& y : all_kinds()) {
        auto round = RandomVariable::parse(y.spec_string());
        CHECK(round.spec_string() == y.spec_string());
        CHECK(round.raw_moments(4) == y.raw_moments(4));
    }
    auto c = RandomVariable::parse("custom:1,1/2,1/3");
    CHECK(c.raw_moments(2)[2] == q(1, 3));
    CHECK_THROWS_AS(RandomVariable::parse("poisson:alpha=3/2,beta=1"), PreconditionError);
    CHECK_THROWS_AS(RandomVariable::parse("bernoulli:q=2/3"), PreconditionError);
    CHECK_THROWS_AS(RandomVariable::parse("cauchy:x=1"), PreconditionError);
    CHECK_THROWS_AS(RandomVariable::parse("bernoulli"), PreconditionError);
    CHECK_THROWS_AS(RandomVariable::parse("binomial:m=5/2,p=1/2"), PreconditionError);
}
