#include <doctest.h>

#include <cmath>

#include "ddcalc/error.hpp"
#include "ddcalc/third_party.hpp"
#include "oracles.hpp"

using namespace ddcalc;

namespace {

const QuadratureConfig kTight{1e-13, 1e-11, 200000};

ThirdPartyParams make(double r, double b_L, double b_R, double p = 0.2, double sigma = 1.0, double mu = 0.6) {
    ThirdPartyParams tp;
    tp.base = {r, mu, p, b_L, b_R, {Family::Normal, 1.0}, {Family::Normal, 0.5}};
    tp.sigma = sigma;
    return tp;
}

/// Direct transcription of the entry-deterrence gain with normal taste and shock.
double gain_oracle(const ThirdPartyParams& tp) {
    const auto& b = tp.base;
    const double ts = b.taste.scale * tp.sigma, gs = b.shock.scale;
    const double k = b.mu / (2.0 * (1.0 - b.mu));
    auto B = [&](double x) { return oracle::normal_cdf(x, ts); };
    auto g = [&](double x) { return oracle::normal_pdf(x, gs); };
    auto lam_hat = [&](double x) {
        return 0.5 - k * ((1 - b.r) * B(b.p - tp.v - b.b_L - x) - b.r * B(-tp.v - b.b_R - x));
    };
    auto share = [&](double x) { return b.r * B(x + b.b_R + b.p) + (1 - b.r) * B(x + b.b_L - b.p); };
    const double inside = oracle::gauss_legendre(
        [&](double x) { return (oracle::lambda(share(x), b.mu) - lam_hat(x)) * g(x); }, -b.b_R, -b.b_L);
    const double tail = oracle::gauss_legendre(
        [&](double x) { return (oracle::lambda(b.r, b.mu) - lam_hat(x)) * g(x); }, -b.b_L, 12.0 * gs);
    return inside + tail;
}

}  // namespace

TEST_SUITE("third_party") {

TEST_CASE("validation of the third-party setting") {
    CHECK(validate(make(0.5, -0.5, -0.1)).ok());
    auto bad = make(0.5, -0.5, 0.1);
    CHECK(validate(bad).has(ViolationCode::ThirdParty));
    bad = make(0.5, -0.5, -0.1);
    bad.v = 0.0;
    CHECK_FALSE(validate(bad).ok());
    CHECK_THROWS_AS(ThirdPartyModel{bad}, ValidationError);
}

TEST_CASE("lambda_hat symmetric limit and monotonicity in p") {
    auto tp = make(0.5, -1e-6, -1e-7, 1e-9);
    tp.v = -1e-9;
    CHECK(std::fabs(lambda_hat(ThirdPartyModel(tp), 0.0) - 0.5) < 1e-6);
    for (double gam : {-0.5, 0.0, 0.4})
        for (double r : {0.3, 0.5, 0.7}) {
            double prev = 2.0;
            for (double p : {0.05, 0.1, 0.2, 0.4, 0.8}) {
                const double v = lambda_hat(ThirdPartyModel(make(r, -0.5, -0.2, p)), gam);
                CHECK(v < prev);
                prev = v;
            }
        }
}

TEST_CASE("worse-off condition cases") {
    for (double r : {0.5, 0.6, 0.8}) CHECK(worse_off_condition(ThirdPartyModel(make(r, -0.5, -0.2))));
    CHECK(worse_off_condition(ThirdPartyModel(make(0.2, -0.5, -0.2, 3.0))));
    CHECK_FALSE(worse_off_condition(ThirdPartyModel(make(0.05, -0.5, -0.2, 0.01, 1.0, 0.3))));
}

TEST_CASE("net benefit against the direct transcription") {
    for (double r : {0.3, 0.5, 0.7})
        for (double sigma : {1.0, 4.0}) {
            const auto tp = make(r, -0.8, -0.3, 0.2, sigma);
            CHECK(net_benefit_third(ThirdPartyModel(tp), kTight).value ==
                  doctest::Approx(gain_oracle(tp)).epsilon(1e-8));
        }
}

TEST_CASE("small taste gap with an advantaged Right favours a referendum") {
    for (double r : {0.5, 0.55, 0.6})
        for (double gap : {0.01, 0.02})
            for (double b_L : {-1.0, -0.5, -0.2}) {
                const auto tp = make(r, b_L, b_L + gap);
                CHECK(net_benefit_third(ThirdPartyModel(tp)).value > 0.0);
            }
}

TEST_CASE("phi identities and thresholds") {
    const DistributionSpec G{Family::Normal, 0.5};
    for (double b_L : {-1.5, -0.6, -0.2}) {
        CHECK(phi(b_L, b_L, G) > 0.0);
        CHECK(phi(b_L, 0.0, G) == doctest::Approx(2.0 * cdf(G, b_L) - 0.5).epsilon(1e-14));
        CHECK(phi(b_L, b_L / 2, G) > phi(b_L, b_L / 4, G));
        CHECK(phi(b_L, b_L / 2, G) < phi(b_L + 0.05, b_L / 2, G));
    }
    const auto t = phi_thresholds(-1.0, G);
    CHECK(std::fabs(t.b_L_star.value - (-0.33724487509804085)) < 1e-12);
    REQUIRE(t.b_R_star.has_value());
    CHECK(t.b_R_star->value > -1.0);
    CHECK(t.b_R_star->value < 0.0);
    CHECK(std::fabs(phi(-1.0, t.b_R_star->value, G)) < 1e-9);
    // b_R* sits above b_L* only while G(-b_L) < 7/8; at b_L = -1 it does not.
    CHECK(t.b_R_star->value < t.b_L_star.value);
    const auto mild = phi_thresholds(-0.4, G);
    REQUIRE(mild.b_R_star.has_value());
    CHECK(mild.b_R_star->value > mild.b_L_star.value);
    CHECK_FALSE(phi_thresholds(-0.2, G).b_R_star.has_value());
}

TEST_CASE("large taste scale: gain sign follows (r - 1/2) phi") {
    // At the 50x proxy a few cells close to the knife edge still carry the
    // finite-scale sign; at 1000x every cell has converged.
    const DistributionSpec G{Family::Normal, 0.5};
    for (double multiple : {1.0, 20.0}) {
        int agree = 0, total = 0;
        for (double r : {0.3, 0.4, 0.45, 0.55, 0.6, 0.7})
            for (double b_L : {-1.2, -0.8, -0.5, -0.25})
                for (double frac : {0.1, 0.4, 0.7, 0.95}) {
                    const double b_R = b_L * frac;
                    const double ph = phi(b_L, b_R, G);
                    if (std::fabs(ph) < 0.01) continue;
                    auto tp = make(r, b_L, b_R);
                    tp.sigma = multiple * sigma_star_proxy(tp);
                    const double gain = net_benefit_third(ThirdPartyModel(tp)).value;
                    ++total;
                    if ((gain > 0) == ((r - 0.5) * ph > 0)) ++agree;
                }
        CHECK(total > 50);
        if (multiple == 1.0) CHECK(agree >= 0.95 * total);
        else CHECK(agree == total);
    }
}

TEST_CASE("classification cases") {
    auto classify = [](double r, double b_L, double b_R) {
        auto tp = make(r, b_L, b_R);
        tp.sigma = sigma_star_proxy(tp);
        return classify_prop_b1(ThirdPartyModel(tp));
    };
    const auto a = classify(0.6, -0.3, -0.1);  // b_L above b_L*
    CHECK(a.decision == Decision::Hold);
    CHECK(a.standing == Standing::Advantaged);
    CHECK(a.agree());

    const DistributionSpec G{Family::Normal, 0.5};
    const auto th = phi_thresholds(-1.0, G);
    REQUIRE(th.b_R_star.has_value());
    const double b_R = 0.5 * th.b_R_star->value;  // between b_R* and 0
    const auto b = classify(0.4, -1.0, b_R);
    CHECK(b.decision == Decision::Hold);
    CHECK(b.standing == Standing::Disadvantaged);
    const auto c = classify(0.6, -1.0, b_R);
    CHECK(c.decision == Decision::NotHold);
    CHECK(c.agree());

    CHECK_THROWS_AS(classify_prop_b1(ThirdPartyModel(make(0.6, -0.3, -0.1))), UsageError);
    auto high_mu = make(0.6, -0.3, -0.1, 0.2, 1.0, 0.7);
    high_mu.sigma = sigma_star_proxy(high_mu);
    CHECK_THROWS_AS(classify_prop_b1(ThirdPartyModel(high_mu)), UsageError);
}

}  // TEST_SUITE
