#include <doctest.h>

#include <cmath>
#include <random>

#include "ddcalc/congruence.hpp"
#include "ddcalc/thresholds.hpp"
#include "oracles.hpp"

using namespace ddcalc;

namespace {

const QuadratureConfig kTight{1e-13, 1e-11, 200000};

ElectorateParams threshold_figure(double b_R, double r) {
    return {r, 0.5, 0.05, -1.0, b_R, {Family::Normal, 1.0}, {Family::Normal, 0.5}};
}

RegionGrid region_figure(int nb, int nr) {
    RegionGrid grid;
    grid.base = {0.5, 0.7, 1.0, -1.0, -0.5, {Family::Logistic, 1.0}, {Family::Normal, 0.5}};
    for (int i = 1; i < nb; ++i) grid.b_R_values.push_back(-1.0 + static_cast<double>(i) / nb);
    for (int j = 1; j < nr; ++j) grid.r_values.push_back(static_cast<double>(j) / nr);
    return grid;
}

}  // namespace

TEST_SUITE("congruence") {

TEST_CASE("binding referendum makes the second issue congruent") {
    for (double b_R : {-0.6, -0.1, 0.3, 1.5})
        for (double r : {0.3, 0.5, 0.7}) {
            const Electorate e(threshold_figure(b_R, r));
            const auto rep = second_issue_congruence(e, Regime::Binding);
            CHECK(rep.prob_with_ref == 1.0);
            CHECK(rep.delta >= 0.0);
            const auto nb = second_issue_congruence(e, Regime::NonBinding);
            CHECK(rep.prob_with_ref >= nb.prob_with_ref);
        }
}

TEST_CASE("delta equals the difference of the reported probabilities") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int checked = 0;
    while (checked < 100) {
        ElectorateParams p{0.05 + 0.9 * U(rng), 0.1 + 0.8 * U(rng), 0.02 + 0.6 * U(rng), -0.1 - U(rng), 0.0,
                           {Family::Normal, 0.2 + U(rng)}, {Family::Logistic, 0.2 + 0.5 * U(rng)}};
        p.b_R = p.b_L + 0.01 + 2.0 * U(rng);
        if (!validate(p).ok()) continue;
        ++checked;
        const Electorate e(p);
        for (Regime g : {Regime::Binding, Regime::NonBinding}) {
            for (const auto& rep : {second_issue_congruence(e, g), traditional_issue_congruence(e, g)}) {
                CHECK(std::fabs(rep.delta - (rep.prob_with_ref - rep.prob_no_ref)) < 1e-10);
                CHECK(rep.prob_no_ref >= 0.0);
                CHECK(rep.prob_no_ref <= 1.0);
                CHECK(rep.prob_with_ref >= 0.0);
                CHECK(rep.prob_with_ref <= 1.0);
            }
        }
    }
}

TEST_CASE("misaligned non-binding referendum never hurts second-issue congruence") {
    for (int i = 0; i <= 20; ++i)
        for (int j = 1; j < 20; ++j) {
            const Electorate e(threshold_figure(0.1 * i, j / 20.0));
            CHECK(second_issue_congruence(e, Regime::NonBinding).delta >= -1e-12);
        }
    CHECK(second_issue_congruence(Electorate(threshold_figure(0.4, 0.5)), Regime::NonBinding).delta > 0.0);
}

TEST_CASE("aligned non-binding delta matches the direct expression") {
    for (double b_R : {-0.8, -0.4, -0.1})
        for (double r : {0.2, 0.5, 0.65}) {
            const Electorate e(threshold_figure(b_R, r));
            const oracle::TwoParty o{r, 0.5, 0.05, -1.0, b_R, 1.0, 0.5};
            const double gs = o.gamma_star();
            auto lam = [&](double x) { return oracle::lambda(o.share(x), 0.5) * o.g(x); };
            const double expected = 1.0 - oracle::normal_cdf(1.0, 0.5) + oracle::gauss_legendre(lam, gs, 1.0) -
                                    oracle::gauss_legendre(lam, -b_R, gs);
            CHECK(second_issue_congruence(e, Regime::NonBinding, kTight).delta ==
                  doctest::Approx(expected).epsilon(1e-8));
        }
}

TEST_CASE("traditional issue: binding has no effect with aligned parties") {
    for (double r : {0.2, 0.45, 0.7}) {
        const auto rep = traditional_issue_congruence(Electorate(threshold_figure(-0.4, r)), Regime::Binding);
        CHECK(rep.delta == 0.0);
    }
}

TEST_CASE("traditional issue: aligned non-binding improves only between r_star and one half") {
    const double rs = r_star(Primitives::of(Electorate(threshold_figure(-0.5, 0.5)))).value;
    REQUIRE(rs < 0.5);
    auto delta = [](double r) {
        return traditional_issue_congruence(Electorate(threshold_figure(-0.5, r)), Regime::NonBinding).delta;
    };
    CHECK(delta(0.5 * (rs + 0.5)) > 0.0);
    CHECK(delta(rs - 0.02) < 0.0);
    CHECK(delta(0.6) < 0.0);
}

TEST_CASE("traditional issue: binding with b_R above -b_L hurts between one half and r_bind") {
    const double rb = r_bind(Primitives::of(Electorate(threshold_figure(1.5, 0.5)))).value;
    REQUIRE(rb > 0.5);
    auto delta = [](double r) {
        return traditional_issue_congruence(Electorate(threshold_figure(1.5, r)), Regime::Binding).delta;
    };
    CHECK(delta(0.5 * (0.5 + rb)) < 0.0);
    CHECK(delta(0.4) > 0.0);
    CHECK(delta(std::min(0.99, rb + 0.02)) > 0.0);
}

TEST_CASE("knife edge r = 1/2 reports both conventions") {
    const auto rep = traditional_issue_congruence(Electorate(threshold_figure(-0.5, 0.5)), Regime::NonBinding);
    CHECK(rep.knife_edge);
    REQUIRE(rep.alt_delta.has_value());
    CHECK(std::fabs(*rep.alt_delta + rep.delta) < 1e-12);
    CHECK(std::fabs(*rep.alt_prob_no_ref + rep.prob_no_ref - 1.0) < 1e-12);
    const auto off = traditional_issue_congruence(Electorate(threshold_figure(-0.5, 0.4)), Regime::NonBinding);
    CHECK_FALSE(off.knife_edge);
    CHECK_FALSE(off.alt_delta.has_value());
}

TEST_CASE("region grid: negative cells exist, including both issues at once") {
    const auto grid = region_figure(20, 25);
    const auto cells = classify_congruence_region(grid);
    REQUIRE(cells.size() == grid.b_R_values.size() * grid.r_values.size());
    int second = 0, both = 0, valid = 0;
    for (const auto& c : cells) {
        if (!c.valid) continue;
        ++valid;
        if (c.delta_second < 0.0) ++second;
        if (c.flag == RegionFlag::Both) {
            ++both;
            CHECK(c.delta_traditional < 0.0);
        }
    }
    CHECK(valid > 0);
    CHECK(second > 0);
    CHECK(both > 0);
}

TEST_CASE("region grid is empty for misaligned parties") {
    RegionGrid grid = region_figure(4, 10);
    grid.b_R_values = {0.05, 0.5, 1.0, 2.0};
    for (const auto& c : classify_congruence_region(grid))
        if (c.valid) CHECK(c.delta_second >= -1e-12);
}

TEST_CASE("region grid: invalid cells are flagged and parallel equals serial") {
    auto grid = region_figure(8, 10);
    grid.r_values.push_back(0.95);  // violates the mu/r condition at mu = 0.7
    const auto par = classify_congruence_region(grid);
    const auto ser = classify_congruence_region_serial(grid);
    REQUIRE(par.size() == ser.size());
    bool saw_invalid = false;
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].valid == ser[i].valid);
        CHECK(par[i].delta_second == ser[i].delta_second);
        CHECK(par[i].delta_traditional == ser[i].delta_traditional);
        CHECK(par[i].flag == ser[i].flag);
        if (!par[i].valid) saw_invalid = true;
    }
    CHECK(saw_invalid);
}

}  // TEST_SUITE
