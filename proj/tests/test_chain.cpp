#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numeric>
#include <tuple>

#include "prp/chain.hpp"
#include "prp/rng.hpp"

using namespace prp;

namespace {

ControlFunction paper_square_law() {
    return ControlFunction::square_ratio(3, 2, Rational(1, 2));
}

// every state of {0..H}^N
void for_each_state(int N, int H, const std::function<void(const PatchState&)>& fn) {
    PatchState s(static_cast<std::size_t>(N), 0);
    while (true) {
        fn(s);
        int j = 0;
        while (j < N && s[j] == H) s[j++] = 0;
        if (j == N) return;
        s[j] += 1;
    }
}

}  // namespace

TEST_CASE("embedded step distribution at the pinned states") {
    const double phi = 1.7;
    // N=1, state 0, all-one control: up phi/(1+phi), rest holds
    auto d0 = embedded_step_distribution(phi, ControlFunction::all_one(), 1, {0});
    CHECK(d0.up[0] == doctest::Approx(phi / (1 + phi)));
    CHECK(d0.down[0] == 0.0);
    CHECK(d0.hold == doctest::Approx(1 / (1 + phi)));

    // N=1, c = delta_0, state 1: up 0, down 1/(1+phi), hold phi/(1+phi)
    auto d1 = embedded_step_distribution(phi, ControlFunction::indicator(1), 1, {1});
    CHECK(d1.up[0] == 0.0);
    CHECK(d1.down[0] == doctest::Approx(1 / (1 + phi)));
    CHECK(d1.hold == doctest::Approx(phi / (1 + phi)));
}

TEST_CASE("step distributions normalize over random states") {
    Rng rng(42);
    const std::vector<ControlFunction> specs = {
        ControlFunction::all_one(), ControlFunction::indicator(3),
        ControlFunction::logistic(5), ControlFunction::constant(0.3),
        paper_square_law()};
    for (const auto& c : specs)
        for (int trial = 0; trial < 50; ++trial) {
            const int N = 1 + static_cast<int>(rng.below(4));
            PatchState s(N);
            for (auto& v : s) v = static_cast<int>(rng.below(9));
            const double phi = 3.0 * rng.u01();
            const auto dist = embedded_step_distribution(phi, c, N, s);
            CHECK(dist.total() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(dist.hold >= -1e-12);
        }
}

TEST_CASE("classification follows the control tail") {
    // square-ratio law at the phi*c(inf)=1 boundary: transient
    CHECK(classify(2.0, paper_square_law()).cls == ChainClass::Transient);
    // indicator: always positive recurrent
    for (double phi : {0.5, 1.0, 2.0, 7.0})
        CHECK(classify(phi, ControlFunction::indicator(2)).cls ==
              ChainClass::PositiveRecurrent);
    // geometric cases
    CHECK(classify(0.5, ControlFunction::all_one()).cls == ChainClass::PositiveRecurrent);
    CHECK(classify(2.0, ControlFunction::all_one()).cls == ChainClass::Transient);
    CHECK(classify(1.0, ControlFunction::all_one()).cls == ChainClass::Inconclusive);
    CHECK(classify(2.0, ControlFunction::constant(0.5)).cls == ChainClass::Inconclusive);
    CHECK(classify(4.0, ControlFunction::constant(0.5)).cls == ChainClass::Transient);
    CHECK(classify(1.0, ControlFunction::constant(0.5)).cls ==
          ChainClass::PositiveRecurrent);
    CHECK(classify(0.0, paper_square_law()).cls == ChainClass::PositiveRecurrent);
}

TEST_CASE("reversible measure values and detailed balance") {
    CHECK(reversible_measure(1.3, ControlFunction::logistic(4), {0, 0, 0}) == 1.0);
    const double phi = 0.8;
    CHECK(reversible_measure(phi, ControlFunction::all_one(), {3}) ==
          doctest::Approx(phi * phi * phi));

    // nu(s) p(s, s+e_j) = nu(s+e_j) p(s+e_j, s) on a truncated graph
    const std::vector<ControlFunction> specs = {
        ControlFunction::all_one(), ControlFunction::indicator(3),
        ControlFunction::logistic(4), ControlFunction::constant(0.6),
        paper_square_law()};
    for (const auto& c : specs)
        for (double ph : {0.5, 2.0})
            for (int N : {1, 2, 3})
                for_each_state(N, 6, [&](const PatchState& s) {
                    const auto dist = embedded_step_distribution(ph, c, N, s);
                    const double nu_s = reversible_measure(ph, c, s);
                    for (int j = 0; j < N; ++j) {
                        PatchState up = s;
                        up[j] += 1;
                        const auto dist_up = embedded_step_distribution(ph, c, N, up);
                        const double nu_up = reversible_measure(ph, c, up);
                        const double flow = nu_s * dist.up[j];
                        const double back = nu_up * dist_up.down[j];
                        CHECK(flow == doctest::Approx(back).epsilon(1e-12));
                    }
                });
}

TEST_CASE("total mass closed forms and brute force") {
    // c = delta_0: only the n=0 term survives -> (1+phi)^N
    for (double phi : {0.4, 1.0, 2.5})
        for (int N : {1, 2, 3}) {
            const auto r = total_mass(phi, ControlFunction::indicator(1), N);
            CHECK(r.status == SeriesStatus::Finite);
            CHECK(r.value == doctest::Approx(std::pow(1 + phi, N)).epsilon(1e-12));
        }
    // all-one, phi = 0.5, N = 2 -> (1 + 0.5 * 2)^2 = 4
    const auto r = total_mass(0.5, ControlFunction::all_one(), 2);
    CHECK(r.value == doctest::Approx(4.0).epsilon(1e-12));
    // divergent
    CHECK(total_mass(1.0, ControlFunction::all_one(), 1).status == SeriesStatus::Infinite);

    // brute-force summation over the truncated state space + certified tail
    for (const auto& c : {ControlFunction::logistic(4), ControlFunction::constant(0.6)})
        for (int N : {1, 2, 3}) {
            const double phi = 0.9;
            const auto closed = total_mass(phi, c, N);
            REQUIRE(closed.status == SeriesStatus::Finite);
            double brute = 0.0;
            for_each_state(N, 40, [&](const PatchState& s) {
                brute += reversible_measure(phi, c, s);
            });
            CHECK(closed.value == doctest::Approx(brute).epsilon(1e-8));
        }
}

TEST_CASE("expected absorption time: closed cases") {
    for (double phi : {0.3, 1.0, 2.0}) {
        const auto tau = expected_absorption_time(phi, ControlFunction::indicator(1), 1, {1});
        CHECK(tau.value == doctest::Approx(1 + phi).epsilon(1e-10));
        CHECK(tau.refined == doctest::Approx(1 + phi).epsilon(1e-10));

        const auto tau2 =
            expected_absorption_time(phi, ControlFunction::indicator(2), 1, {1});
        CHECK(tau2.value == doctest::Approx((1 + phi) * (1 + phi)).epsilon(1e-10));
    }
    // phi = 0: immediate drift down, one step from 1
    const auto tau0 = expected_absorption_time(0.0, ControlFunction::logistic(3), 1, {1});
    CHECK(tau0.value == doctest::Approx(1.0).epsilon(1e-12));

    // transient chain refused
    CHECK_THROWS_AS(expected_absorption_time(2.0, ControlFunction::all_one(), 1, {1}),
                    std::domain_error);
}

TEST_CASE("absorption time: linear solve matches Monte Carlo") {
    Rng rng(2024);
    struct Point {
        double phi;
        ControlFunction c;
        int N;
    };
    const std::vector<Point> points = {{0.5, ControlFunction::all_one(), 1},
                                       {1.0, ControlFunction::logistic(3), 1},
                                       {0.8, ControlFunction::indicator(2), 2}};
    for (const auto& pt : points) {
        PatchState start(pt.N, 0);
        start[0] = 1;
        const auto solve = expected_absorption_time(pt.phi, pt.c, pt.N, start);
        const auto mc = mc_absorption_time(pt.phi, pt.c, pt.N, start, 20000, rng);
        CHECK(std::abs(solve.value - mc.mean) < 3.0 * mc.std_error);
        CHECK(std::abs(solve.value - solve.refined) < 1e-8 * (1.0 + solve.value));
    }
}

TEST_CASE("single-patch survival against birth-death theory") {
    // all-one control: escape probability from 1 is 1 - 1/phi
    const auto s = single_patch_survival(2.0, ControlFunction::all_one(), 1, 1e-7);
    CHECK(s.probability == doctest::Approx(0.5).epsilon(1e-5));

    // square law at phi=2: P(escape) = 1 / sum_{n>=0} 9/(n+3)^2
    //                               = 1 / (9 (pi^2/6 - 5/4))
    const double expected = 1.0 / (9.0 * (M_PI * M_PI / 6.0 - 1.25));
    const auto sq = single_patch_survival(2.0, paper_square_law(), 1, 1e-7);
    CHECK(sq.probability == doctest::Approx(expected).epsilon(1e-5));
    CHECK(sq.lower <= expected);
    CHECK(expected <= sq.upper);

    // positive recurrent: extinction is certain
    const auto pr = single_patch_survival(0.5, ControlFunction::all_one(), 1, 1e-7);
    CHECK(pr.probability == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("trial vector pmf and sampler") {
    // zero vector, d=1, lambda=phi=1 -> 1/2
    CHECK(trial_vector_pmf(1.0, 1.0, 1, {0, 0}) == doctest::Approx(0.5).epsilon(1e-12));

    // normalization with the exact geometric tail
    for (auto [d, lambda, phi] : std::vector<std::tuple<int, double, double>>{
             {1, 1.0, 1.0}, {2, 0.5, 2.0}}) {
        const long cap = 40;
        double sum = 0.0;
        std::vector<long> counts(2 * d, 0);
        // iterate all count vectors with total <= cap
        std::function<void(int, long)> rec = [&](int idx, long used) {
            if (idx == 2 * d - 1) {
                counts[idx] = 0;
                for (long v = 0; used + v <= cap; ++v) {
                    counts[idx] = v;
                    sum += trial_vector_pmf(lambda, phi, d, counts);
                }
                return;
            }
            for (long v = 0; used + v <= cap; ++v) {
                counts[idx] = v;
                rec(idx + 1, used + v);
            }
        };
        rec(0, 0);
        const double beta = 2.0 * d * lambda / (1.0 + phi);
        const double tail = std::pow(beta / (1 + beta), cap + 1);
        CHECK(sum + tail == doctest::Approx(1.0).epsilon(1e-10));
    }

    // sampler mean of the total within 3 sigma of 2d lambda/(1+phi)
    Rng rng(99);
    const int d = 2;
    const double lambda = 0.7, phi = 1.3;
    const long n = 100000;
    double total = 0.0;
    for (long i = 0; i < n; ++i) {
        const auto y = sample_trial_vector(lambda, phi, d, rng);
        total += std::accumulate(y.begin(), y.end(), 0.0);
    }
    const double mean = total / n;
    const double beta = 2.0 * d * lambda / (1.0 + phi);
    const double var = beta * (1.0 + beta);  // geometric total
    CHECK(std::abs(mean - beta) < 3.0 * std::sqrt(var / n));

    CHECK(sample_trial_vector(0.0, 1.0, 1, rng) == std::vector<long>{0, 0});
    CHECK(trial_vector_pmf(0.0, 1.0, 1, {0, 0}) == 1.0);
    CHECK(trial_vector_pmf(0.0, 1.0, 1, {1, 0}) == 0.0);
}

TEST_CASE("subcritical lambda bound closed cases") {
    for (double phi : {0.5, 1.0, 3.0})
        for (int d : {1, 2})
            CHECK(subcritical_lambda_bound(phi, ControlFunction::indicator(1), 1, d) ==
                  doctest::Approx(1.0 / (2 * d)).epsilon(1e-10));
    CHECK(subcritical_lambda_bound(0.0, ControlFunction::all_one(), 1, 1) ==
          doctest::Approx(0.5).epsilon(1e-10));
    CHECK(subcritical_lambda_bound(1.0, ControlFunction::indicator(2), 1, 1) ==
          doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("min mean control: examples and exhaustive check") {
    CHECK(min_mean_control(ControlFunction::indicator(1), 10, 3) == doctest::Approx(0.7));
    CHECK(min_mean_control(ControlFunction::logistic(2), 2, 2) == doctest::Approx(0.5));
    for (const auto& c : {ControlFunction::all_one(), ControlFunction::logistic(3),
                          ControlFunction::constant(0.4)})
        CHECK(min_mean_control(c, 5, 0) == doctest::Approx(1.0));

    // DP equals exhaustive enumeration over compositions
    const std::vector<ControlFunction> specs = {
        ControlFunction::indicator(2), ControlFunction::logistic(3),
        ControlFunction::constant(0.6), ControlFunction::all_one()};
    for (const auto& c : specs)
        for (int N = 1; N <= 4; ++N)
            for (int M = 0; M <= 6; ++M) {
                double best = 1e300;
                PatchState f(N, 0);
                std::function<void(int, int)> rec = [&](int idx, int left) {
                    if (idx == N - 1) {
                        f[idx] = left;
                        double s = 0;
                        for (int v : f) s += c.acceptance(v);
                        best = std::min(best, s / N);
                        return;
                    }
                    for (int v = 0; v <= left; ++v) {
                        f[idx] = v;
                        rec(idx + 1, left - v);
                    }
                };
                rec(0, M);
                CHECK(min_mean_control(c, N, M) == doctest::Approx(best).epsilon(1e-12));
            }
}
