#include <doctest.h>

#include <cmath>
#include <random>

#include "ddcalc/calculus.hpp"
#include "ddcalc/error.hpp"
#include "ddcalc/rng.hpp"
#include "oracles.hpp"

using namespace ddcalc;

namespace {

const QuadratureConfig kTight{1e-13, 1e-11, 200000};

ElectorateParams threshold_primitives(double b_R, double r) {
    return {r, 0.5, 0.05, -1.0, b_R, {Family::Normal, 1.0}, {Family::Normal, 0.5}};
}

ElectorateParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (;;) {
        ElectorateParams p;
        p.mu = 0.1 + 0.8 * U(rng);
        p.r = 0.02 + 0.96 * U(rng);
        p.p = 0.01 + 0.8 * U(rng);
        p.b_L = -0.05 - 1.5 * U(rng);
        p.b_R = p.b_L + 0.01 + 2.5 * U(rng);
        p.taste = {U(rng) < 0.5 ? Family::Normal : Family::Logistic, 0.1 + 1.2 * U(rng)};
        p.shock = {U(rng) < 0.5 ? Family::Normal : Family::Logistic, 0.1 + 0.8 * U(rng)};
        if (validate(p).ok()) return p;
    }
}

ElectorateParams mirror(const ElectorateParams& p) {
    ElectorateParams m = p;
    m.b_L = -p.b_R;
    m.b_R = -p.b_L;
    m.r = 1.0 - p.r;
    return m;
}

}  // namespace

TEST_SUITE("calculus") {

TEST_CASE("lambda_win") {
    CHECK(lambda_win(0.5, 0.7) == doctest::Approx(0.5));
    CHECK(lambda_win(0.9, 0.5) == doctest::Approx(0.9));
    CHECK(lambda_win(0.6, 0.7) == doctest::Approx(0.5 + 7.0 / 3.0 * 0.1).epsilon(1e-14));
    const auto c = lambda_win_checked(0.95, 0.8);
    CHECK(c.clamped);
    CHECK(c.value == 1.0);
    CHECK_FALSE(lambda_win_checked(0.55, 0.8).clamped);
    CHECK_THROWS_AS(lambda_win(0.5, 1.0), DomainError);
    CHECK_THROWS_AS(lambda_win(0.5, 0.0), DomainError);
}

TEST_CASE("multi-issue share") {
    const ElectorateParams p{0.5, 0.5, 0.2, -0.5, -0.1, {Family::Normal, 0.2}, {Family::Normal, 0.25}};
    const Electorate e(p);
    CHECK(right_share_multi(e, 0.3) == doctest::Approx(0.5).epsilon(1e-14));
    double prev = -1.0;
    for (int i = -100; i <= 100; ++i) {
        const double s = right_share_multi(e, i * 0.01);
        CHECK(s > prev);
        prev = s;
    }
    for (double pp : {0.05, 0.3, 1.0}) {
        ElectorateParams q{0.5, 0.5, pp, -0.4, 0.4, {Family::Logistic, 0.7}, {Family::Normal, 0.3}};
        CHECK(right_share_multi(Electorate(q), 0.0) == doctest::Approx(0.5).epsilon(1e-14));
    }
}

TEST_CASE("win probabilities against the direct transcription") {
    for (double b_R : {-0.6, -0.2, 0.0, 0.5, 1.0, 1.7})
        for (double r : {0.3, 0.5, 0.62}) {
            const Electorate e(threshold_primitives(b_R, r));
            const oracle::TwoParty o{r, 0.5, 0.05, -1.0, b_R, 1.0, 0.5};
            CHECK(win_prob(e, Regime::NoReferendum, false, kTight).value == doctest::Approx(o.win_none()).epsilon(1e-9));
            CHECK(win_prob(e, Regime::NonBinding, true, kTight).value ==
                  doctest::Approx(o.win_nonbinding()).epsilon(1e-9));
            CHECK(win_prob(e, Regime::Binding, true).value == doctest::Approx(oracle::lambda(r, 0.5)));
        }
}

TEST_CASE("no-referendum integral against semi-analytic Monte Carlo") {
    // 1e6 shock draws; each contributes lambda(s(gamma)) exactly.
    const Electorate e(threshold_primitives(0.5, 0.5));
    CounterStream g(99, 0, 0);
    const int n = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = lambda_win(right_share_multi(e, sample_normal(g, 0.5)), 0.5);
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    CHECK(std::fabs(win_prob(e, Regime::NoReferendum, false).value - mean) < 3.0 * se);
}

TEST_CASE("symmetric cases give one half") {
    for (double pp : {0.05, 0.4}) {
        ElectorateParams p{0.5, 0.5, pp, -0.7, 0.7, {Family::Normal, 1.0}, {Family::Normal, 0.5}};
        const Electorate e(p);
        CHECK(win_prob(e, Regime::Binding, true).value == doctest::Approx(0.5));
        CHECK(win_prob(e, Regime::NonBinding, true).value == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(std::fabs(net_benefit(e, Regime::NonBinding).value) < 1e-9);
    }
}

TEST_CASE("binding referendum is irrelevant when both parties start aligned") {
    const Electorate e(threshold_primitives(-0.3, 0.4));
    CHECK(net_benefit(e, Regime::Binding).value == 0.0);
    CHECK_THROWS_AS(net_benefit(e, Regime::NoReferendum), UsageError);
    CHECK_THROWS_AS(win_prob(e, Regime::NoReferendum, true), UsageError);
}

TEST_CASE("net benefit identity and mirror antisymmetry on random parameters") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 200; ++i) {
        const auto p = random_params(rng);
        const Electorate e(p);
        for (Regime g : {Regime::Binding, Regime::NonBinding}) {
            const double nb = net_benefit(e, g, kTight).value;
            const double diff =
                win_prob(e, g, true, kTight).value - win_prob(e, Regime::NoReferendum, false, kTight).value;
            CHECK(std::fabs(nb - diff) < 1e-9);
        }
        const auto m = mirror(p);
        if (validate(m).ok() && p.b_R > 0.0 && m.b_R > 0.0) {
            // Both configurations misaligned: relabeling parties and the y-axis negates Right's gain.
            for (Regime g : {Regime::Binding, Regime::NonBinding})
                CHECK(std::fabs(net_benefit(e, g, kTight).value + net_benefit(Electorate(m), g, kTight).value) < 1e-9);
        }
    }
}

TEST_CASE("binding gain strictly increases in r") {
    for (double b_R : {0.2, 1.0, 1.8}) {
        double prev = -2.0;
        for (int i = 1; i < 20; ++i) {
            const double d = net_benefit(Electorate(threshold_primitives(b_R, i / 20.0)), Regime::Binding).value;
            CHECK(d > prev);
            prev = d;
        }
    }
}

TEST_CASE("aligned non-binding gain is non-positive at r = 1/2") {
    for (double b_R : {-0.9, -0.5, -0.2, -0.01}) {
        const Electorate e(threshold_primitives(b_R, 0.5));
        CHECK(net_benefit(e, Regime::NonBinding).value <= 1e-12);
    }
}

}
