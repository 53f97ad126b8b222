#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ddcalc/error.hpp"
#include "ddcalc/turnout.hpp"
#include "oracles.hpp"

using namespace ddcalc;

namespace {

const QuadratureConfig kTight{1e-13, 1e-11, 200000};

TurnoutParams make(double r, double b_L, double b_R, double p = 0.2, double mu = 0.5) {
    TurnoutParams tp;
    tp.base = {r, mu, p, b_L, b_R, {Family::Normal, 1.0}, {Family::Normal, 0.5}};
    tp.c_bar = 10.0;
    tp.sigma = 2.5;
    tp.kappa = 1.0;
    return tp;
}

double intensity_of(const TurnoutParams& tp, double b, const QuadratureConfig& cfg = {}) {
    return intensity(b, TurnoutModel(tp), cfg);
}

}  // namespace

TEST_SUITE("turnout") {

TEST_CASE("validation enforces the turnout assumptions") {
    CHECK(validate(make(0.5, -0.5, 0.3)).ok());
    auto tp = make(0.5, -0.5, 0.3);
    tp.c_bar = 3.0;
    CHECK(validate(tp).has(ViolationCode::AssumptionC1));
    tp = make(0.5, -1.2, 0.3);
    CHECK(validate(tp).has(ViolationCode::AssumptionC1));
    tp = make(0.5, -0.5, 0.3);
    tp.sigma = 1.1;
    CHECK(validate(tp).has(ViolationCode::AssumptionC1));
    // Sign restrictions of the two-party model do not apply here.
    CHECK(validate(make(0.5, 0.4, 0.3)).ok());
    tp.c_bar = -1.0;
    CHECK(validate(tp).has(ViolationCode::Range));
    CHECK_THROWS_AS(TurnoutModel{tp}, ValidationError);
}

TEST_CASE("intensity against the closed-form inner integral") {
    const auto tp = make(0.5, -0.5, 0.3);
    for (double b : {-0.9, -0.5, 0.0, 0.2, 0.7})
        CHECK(intensity_of(tp, b, kTight) ==
              doctest::Approx(oracle::intensity_normal(b, 1.0, 2.5, 0.5, 1.0)).epsilon(1e-9));
}

TEST_CASE("intensity with logistic tastes against nested quadrature") {
    auto tp = make(0.5, -0.5, 0.3);
    tp.base.taste = {Family::Logistic, 0.6};
    tp.base.shock = {Family::Logistic, 0.3};
    tp.sigma = 1.5;
    tp.kappa = 0.9;
    const double Zu = 1.0 - 2.0 * oracle::logistic_cdf(-1.5, 0.6);
    const double Zg = 1.0 - 2.0 * oracle::logistic_cdf(-0.9, 0.3);
    auto logistic_pdf = [](double x, double s) {
        const double e = std::exp(-std::fabs(x) / s);
        return e / (s * (1 + e) * (1 + e));
    };
    for (double b : {-0.7, 0.0, 0.45}) {
        auto inner = [&](double c) {
            auto f = [&](double u) { return std::fabs(u + c) * logistic_pdf(u, 0.6) / Zu; };
            const double k = std::clamp(-c, -1.5, 1.5);
            return oracle::gauss_legendre(f, -1.5, k, 200) + oracle::gauss_legendre(f, k, 1.5, 200);
        };
        const double expected = oracle::gauss_legendre(
            [&](double g) { return inner(b + g) * logistic_pdf(g, 0.3) / Zg; }, -0.9, 0.9, 400);
        CHECK(intensity_of(tp, b, kTight) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("intensity is even and increasing in |b|") {
    const auto tp = make(0.5, -0.5, 0.3);
    for (double b : {0.05, 0.3, 0.6, 0.95}) CHECK(intensity_of(tp, b) == doctest::Approx(intensity_of(tp, -b)).epsilon(1e-10));
    CHECK(intensity_of(tp, 0.5) > intensity_of(tp, 0.1));
    double prev = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double v = intensity_of(tp, 0.045 * i);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("r_T symmetries and the equal-stake case") {
    CHECK(std::fabs(r_T(TurnoutModel(make(0.5, -0.4, 0.4))).value - 0.5) < 1e-8);
    CHECK(std::fabs(r_T(TurnoutModel(make(0.5, 0.7, -0.7))).value - 0.5) < 1e-8);
    for (double b_L : {-0.8, -0.3})
        for (double b_R : {0.1, 0.6}) {
            const double base = r_T(TurnoutModel(make(0.5, b_L, b_R))).value;
            CHECK(std::fabs(r_T(TurnoutModel(make(0.5, -b_L, b_R))).value - base) < 1e-8);
            CHECK(std::fabs(r_T(TurnoutModel(make(0.5, b_L, -b_R))).value - base) < 1e-8);
            CHECK(std::fabs(r_T(TurnoutModel(make(0.5, -b_L, -b_R))).value - base) < 1e-8);
            const auto rep = r_T(TurnoutModel(make(0.5, b_L, b_R)));
            CHECK(std::fabs(rep.residual) < 1e-9);
            CHECK(rep.value > 0.0);
            CHECK(rep.value < 1.0);
        }
    // Right's supporters care less: Right needs a larger base.
    CHECK(r_T(TurnoutModel(make(0.5, -0.8, 0.2))).value > 0.5);
}

TEST_CASE("win probabilities without and with a referendum") {
    CHECK(win_prob_turnout(TurnoutModel(make(0.5, -0.5, 0.3)), false).value == 0.5);
    CHECK(win_prob_turnout(TurnoutModel(make(0.6, -0.5, 0.3)), false).value == doctest::Approx(0.502).epsilon(1e-14));
    CHECK(win_prob_turnout(TurnoutModel(make(0.5, -0.4, 0.4)), true).value == doctest::Approx(0.5).epsilon(1e-12));

    const auto tp = make(0.58, -0.6, 0.25, 0.2, 0.6);
    const double k = 0.6 / (2.0 * 0.4);
    const double i_R = oracle::intensity_normal(0.25, 1.0, 2.5, 0.5, 1.0);
    const double i_L = oracle::intensity_normal(-0.6, 1.0, 2.5, 0.5, 1.0);
    const double none = 0.5 + k * (0.2 / 10.0) * (2 * 0.58 - 1);
    const double held = none + k / 10.0 * (0.58 * i_R - 0.42 * i_L);
    CHECK(win_prob_turnout(TurnoutModel(tp), false, kTight).value == doctest::Approx(none).epsilon(1e-12));
    CHECK(win_prob_turnout(TurnoutModel(tp), true, kTight).value == doctest::Approx(held).epsilon(1e-9));
}

TEST_CASE("net benefit flips sign at r_T") {
    for (double b_R : {0.15, 0.45, 0.8}) {
        const double rt = r_T(TurnoutModel(make(0.5, -0.5, b_R))).value;
        CHECK(net_benefit_turnout(TurnoutModel(make(rt - 1e-6, -0.5, b_R))) < 0.0);
        CHECK(net_benefit_turnout(TurnoutModel(make(rt + 1e-6, -0.5, b_R))) > 0.0);
        CHECK(std::fabs(net_benefit_turnout(TurnoutModel(make(rt, -0.5, b_R)))) < 1e-12);
    }
}

TEST_CASE("net benefit does not depend on p") {
    for (double p : {0.05, 0.2, 0.6}) {
        const double a = net_benefit_turnout(TurnoutModel(make(0.55, -0.5, 0.3, p)));
        const double b = net_benefit_turnout(TurnoutModel(make(0.55, -0.5, 0.3, p + 1e-3)));
        CHECK(std::fabs(a - b) < 1e-8);
    }
    const auto tp = make(0.55, -0.5, 0.3);
    const double direct = win_prob_turnout(TurnoutModel(tp), true).value - win_prob_turnout(TurnoutModel(tp), false).value;
    CHECK(net_benefit_turnout(TurnoutModel(tp)) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("expected turnout shares") {
    const auto tp = make(0.5, -0.5, 0.3);
    const TurnoutModel m(tp);
    const auto none = expected_turnout(m, false);
    CHECK(none.right == doctest::Approx(0.02));
    CHECK(none.left == doctest::Approx(0.02));
    const auto held = expected_turnout(m, true);
    CHECK(held.right == doctest::Approx((0.2 + intensity_of(tp, 0.3)) / 10.0));
    CHECK(held.left > held.right);
}

TEST_CASE("cost cap flag") {
    CHECK_FALSE(TurnoutModel(make(0.5, -0.5, 0.3)).cost_cap_possible());
    auto tight = make(0.5, -0.5, 0.3);
    tight.c_bar = 3.8;  // above p + kappa + sigma but below p + |b| + kappa + sigma
    REQUIRE(validate(tight).ok());
    CHECK(TurnoutModel(tight).cost_cap_possible());
    CHECK(win_prob_turnout(TurnoutModel(tight), true).clamped);
    CHECK_FALSE(win_prob_turnout(TurnoutModel(tight), false).clamped);
}

}  // TEST_SUITE
