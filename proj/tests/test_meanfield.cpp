#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "prp/meanfield.hpp"

using namespace prp;

TEST_CASE("u0_logistic closed values") {
    for (long kappa : {1L, 2L, 5L, 100L})
        CHECK(u0_logistic(1.0, 0.0, kappa) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(u0_logistic(1.0, 1.0, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(u0_logistic(0.0, 1.0, 2), std::invalid_argument);

    // matches the series engine fed with the logistic control
    for (double phi : {0.3, 1.0, 2.0})
        for (long kappa : {1L, 3L, 17L}) {
            const U0Result r = u0_selfreg(1.3, phi, ControlFunction::logistic(kappa));
            CHECK(r.status == SeriesStatus::Finite);
            CHECK(r.value == doctest::Approx(u0_logistic(1.3, phi, kappa)).epsilon(1e-14));
        }
}

TEST_CASE("u0_logistic is nonincreasing in kappa and obeys the sqrt-kappa scaling") {
    double prev = u0_logistic(1.0, 0.5, 1);
    for (long kappa = 2; kappa <= 512; kappa *= 2) {
        const double cur = u0_logistic(1.0, 0.5, kappa);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }
    const double a = u0_logistic(1.0, 1.0, 400) * std::sqrt(400.0);
    const double b = u0_logistic(1.0, 1.0, 1600) * std::sqrt(1600.0);
    CHECK(std::abs(a / b - 1.0) < 0.05);
}

TEST_CASE("u0_selfreg closed values") {
    // c = delta_0: series collapses to 1
    for (double lambda : {0.5, 1.0, 2.0}) {
        const U0Result r = u0_selfreg(lambda, 1.7, ControlFunction::indicator(1));
        CHECK(r.status == SeriesStatus::Finite);
        CHECK(r.value == doctest::Approx(1.0 / lambda).epsilon(1e-14));
    }
    // all-one geometric
    const U0Result g = u0_selfreg(1.0, 0.5, ControlFunction::all_one());
    CHECK(g.value == doctest::Approx(0.5).epsilon(1e-13));
    // divergent series: u0 = 0
    const U0Result z = u0_selfreg(1.0, 1.5, ControlFunction::all_one());
    CHECK(z.status == SeriesStatus::Infinite);
    CHECK(z.value == 0.0);
}

TEST_CASE("u0_selfreg is nonincreasing under pointwise control increase") {
    const std::vector<ControlFunction> nested = {
        ControlFunction::table({1.0, 0.2, 0.1}, 0.05),
        ControlFunction::table({1.0, 0.5, 0.3}, 0.1),
        ControlFunction::table({1.0, 0.8, 0.6}, 0.3),
    };
    for (double phi : {0.5, 1.0, 2.0}) {
        double prev = u0_selfreg(1.0, phi, nested[0]).value;
        for (std::size_t i = 1; i < nested.size(); ++i) {
            CHECK(nested[i - 1].pointwise_leq(nested[i]));
            const double cur = u0_selfreg(1.0, phi, nested[i]).value;
            CHECK(cur <= prev + 1e-14);
            prev = cur;
        }
    }
}

TEST_CASE("stationary profiles at the pinned points") {
    // logistic kappa=2, lambda=phi=1 -> (2/3, 4/15, 1/15)
    const auto r = stationary_profile(MeanFieldFlavor::logistic(2), 1.0, 1.0);
    REQUIRE(r.status == ProfileStatus::Endemic);
    REQUIRE(r.profile->u.size() == 3);
    CHECK(r.profile->u[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(r.profile->u[1] == doctest::Approx(4.0 / 15.0).epsilon(1e-13));
    CHECK(r.profile->u[2] == doctest::Approx(1.0 / 15.0).epsilon(1e-13));
    CHECK(r.profile->mass() == doctest::Approx(1.0).epsilon(1e-13));

    // logistic kappa=1, lambda=2 -> (1/2, 1/2)
    const auto r1 = stationary_profile(MeanFieldFlavor::logistic(1), 2.0, 1.0);
    REQUIRE(r1.status == ProfileStatus::Endemic);
    CHECK(r1.profile->u[0] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(r1.profile->u[1] == doctest::Approx(0.5).epsilon(1e-13));

    // phi=0, lambda=0.5 -> u0 = 2 >= 1: no endemic equilibrium
    const auto r2 = stationary_profile(MeanFieldFlavor::logistic(3), 0.5, 0.0);
    CHECK(r2.status == ProfileStatus::NoEndemicEquilibrium);
    CHECK(r2.u0 == doctest::Approx(2.0));

    // self-regulating flavor with a geometric tail
    const auto r3 =
        stationary_profile(MeanFieldFlavor::selfreg(ControlFunction::constant(0.4)), 1.0, 1.5);
    REQUIRE(r3.status == ProfileStatus::Endemic);
    CHECK(r3.u0 == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(r3.profile->mass() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("stationary profile solves the ODE (residual check)") {
    std::vector<std::pair<MeanFieldFlavor, std::pair<double, double>>> cases = {
        {MeanFieldFlavor::logistic(2), {1.0, 1.0}},
        {MeanFieldFlavor::logistic(6), {1.5, 2.0}},
        {MeanFieldFlavor::selfreg(ControlFunction::constant(0.4)), {1.0, 1.5}},
        {MeanFieldFlavor::selfreg(ControlFunction::all_one()), {1.0, 0.6}},
    };
    for (const auto& [flavor, lp] : cases) {
        const auto r = stationary_profile(flavor, lp.first, lp.second);
        REQUIRE(r.status == ProfileStatus::Endemic);
        const Eigen::VectorXd du = meanfield_rhs(flavor, lp.first, lp.second, r.profile->u);
        CHECK(du.cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("integration: fixed point, convergence, mass conservation") {
    const MeanFieldFlavor flavor = MeanFieldFlavor::logistic(2);
    const auto st = stationary_profile(flavor, 1.0, 1.0);
    REQUIRE(st.status == ProfileStatus::Endemic);

    // the stationary profile stays put
    IntegrationOptions opts;
    opts.dt = 0.01;
    const auto fixed = integrate_meanfield(flavor, 1.0, 1.0, st.profile->u, 100.0, opts);
    CHECK((fixed.u - st.profile->u).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(fixed.mass_drift < 1e-9 * 100.0);

    // a perturbed start converges back
    Eigen::VectorXd pert(3);
    pert << 0.99, 0.01, 0.0;
    const auto conv = integrate_meanfield(flavor, 1.0, 1.0, pert, 100.0, opts);
    CHECK((conv.u - st.profile->u).cwiseAbs().maxCoeff() < 1e-4);

    // pure death: everything collapses onto state 0
    Eigen::VectorXd init(4);
    init << 0.1, 0.3, 0.4, 0.2;
    const auto dead =
        integrate_meanfield(MeanFieldFlavor::logistic(3), 0.0, 0.0, init, 60.0, opts);
    CHECK(dead.u[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(dead.u.tail(3).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("self-regulating integration grows the truncation and tracks leaks") {
    const MeanFieldFlavor flavor = MeanFieldFlavor::selfreg(ControlFunction::constant(0.4));
    const auto st = stationary_profile(flavor, 1.0, 1.5);
    REQUIRE(st.status == ProfileStatus::Endemic);
    IntegrationOptions opts;
    opts.dt = 0.005;
    const auto r = integrate_meanfield(flavor, 1.0, 1.5, st.profile->u, 50.0, opts);
    CHECK((r.u.head(st.profile->u.size()) - st.profile->u).cwiseAbs().maxCoeff() < 1e-6);

    // a state forced against a tiny truncation must error out
    Eigen::VectorXd tight(3);
    tight << 0.5, 0.3, 0.2;
    IntegrationOptions strict;
    strict.dt = 0.01;
    strict.max_truncation = 2;  // no room to grow
    CHECK_THROWS_AS(integrate_meanfield(MeanFieldFlavor::selfreg(ControlFunction::all_one()),
                                        1.0, 2.0, tight, 10.0, strict),
                    std::runtime_error);
}

TEST_CASE("u0 limits") {
    CHECK(u0_limit_logistic(1.0, 0.5) == doctest::Approx(0.5));
    CHECK(u0_limit_logistic(2.0, 3.0) == 0.0);

    // approached monotonically from above by the finite-kappa values
    double prev = u0_logistic(1.0, 0.5, 4);
    for (long kappa = 8; kappa <= 2048; kappa *= 2) {
        const double cur = u0_logistic(1.0, 0.5, kappa);
        CHECK(cur >= u0_limit_logistic(1.0, 0.5) - 1e-15);
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }

    // phi > 1: limit 0, fast decay in kappa
    CHECK(u0_logistic(1.0, 2.0, 256) < 1e-20);

    // self-regulating limit: equality with (1-phi)/lambda only at c == 1
    const U0Result all1 = u0_limit_selfreg(1.0, 0.5, ControlFunction::all_one());
    CHECK(all1.value == doctest::Approx(0.5).epsilon(1e-13));
    const U0Result below = u0_limit_selfreg(1.0, 0.5, ControlFunction::constant(0.9));
    CHECK(below.value > 0.5 + 1e-6);
}
