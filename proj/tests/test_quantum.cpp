#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "whispers/quantum.hpp"

#include <cmath>

using namespace whispers;

namespace {
PromisePair pair_at(int n, int offset, int y = 0) {
    const int m = 2 * n;
    return PromisePair(RingPoint(((y + offset) % m + m) % m, m), RingPoint(y, m));
}
}  // namespace

TEST_CASE("link error for coinciding dots is zero, for opposite dots is zero") {
    CHECK(link_error_probability(pair_at(5, 0)) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(link_error_probability(pair_at(5, 5)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(link_error_probability(pair_at(8, 0, 3)) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("adjacent dots on the 6-ring err with probability 1/4") {
    CHECK(link_error_probability(pair_at(3, 1)) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(link_error_probability(pair_at(3, 5)) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(link_error_probability(pair_at(3, 2)) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(link_error_probability(pair_at(3, 4)) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("near-opposite pair on the 12-ring") {
    // offset 7 = N+1 at N=6: error cos^2(7*pi/12) = sin^2(pi/12)
    double expect = std::pow(std::sin(M_PI / 12.0), 2);
    CHECK(link_error_probability(pair_at(6, 7)) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(expect == doctest::Approx(0.06698729810778065).epsilon(1e-12));
}

TEST_CASE("error probability depends only on the offset, not on y") {
    for (int n : {3, 4, 7}) {
        for (int off : valid_offsets(n)) {
            double at0 = link_error_probability(pair_at(n, off, 0));
            for (int y = 1; y < 2 * n; ++y)
                CHECK(link_error_probability(pair_at(n, off, y)) ==
                      doctest::Approx(at0).epsilon(1e-14));
        }
    }
}

TEST_CASE("worst_case_error equals the closed form and the brute-force maximum") {
    for (int n = 3; n <= 12; ++n) {
        double closed = std::pow(std::sin(M_PI / (2.0 * n)), 2);
        CHECK(worst_case_error(n) == doctest::Approx(closed).epsilon(1e-13));

        double scanned = 0.0;
        for (int off : valid_offsets(n))
            for (int y = 0; y < 2 * n; ++y)
                scanned = std::max(scanned, link_error_probability(pair_at(n, off, y)));
        CHECK(worst_case_error(n) == doctest::Approx(scanned).epsilon(1e-13));
    }
    CHECK(worst_case_error(3) == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("worst-case error is bounded by (pi/2N)^2 and decreases in N") {
    double prev = 1.0;
    for (int n = 3; n <= 128; ++n) {
        double w = worst_case_error(n);
        double cap = std::pow(M_PI / (2.0 * n), 2);
        CHECK(w <= cap);
        CHECK(w < prev);
        prev = w;
    }
}

TEST_CASE("average error under the uniform input distribution") {
    // exact mean over the six offsets: (0 + 0 + 4 sin^2(pi/2N)) / 6
    CHECK(average_error_uniform(3) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    for (int n = 3; n <= 50; ++n) {
        double s = std::pow(std::sin(M_PI / (2.0 * n)), 2);
        CHECK(average_error_uniform(n) == doctest::Approx(2.0 * s / 3.0).epsilon(1e-13));
        CHECK(average_error_uniform(n) <= worst_case_error(n));
    }
    // N^2-scaled average tends to pi^2/6
    CHECK(average_error_uniform(100) * 100.0 * 100.0 ==
          doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-3));
}

TEST_CASE("sampled outcomes are signs and degenerate pairs are deterministic") {
    SplitMix64 rng(2024);
    PromisePair same = pair_at(4, 0);
    PromisePair anti = pair_at(4, 4);
    for (int i = 0; i < 200; ++i) {
        OutcomePair a = sample_outcomes(same, rng);
        CHECK((a.alice == 1 || a.alice == -1));
        CHECK(a.bob_flipped == a.alice);
        OutcomePair b = sample_outcomes(anti, rng);
        CHECK(b.bob_flipped == -b.alice);
    }
}

TEST_CASE("sampled agreement frequency matches the singlet statistics") {
    PromisePair p = pair_at(6, 1);
    const double agree = 1.0 - link_error_probability(p);  // no-jump pair
    const int trials = 200000;
    int same = 0;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng = SplitMix64::for_trial(31337, t);
        OutcomePair o = sample_outcomes(p, rng);
        if (o.alice == o.bob_flipped) ++same;
    }
    double freq = (double)same / trials;
    double sigma = std::sqrt(agree * (1.0 - agree) / trials);
    CHECK(std::abs(freq - agree) <= 3.0 * sigma);
}

TEST_CASE("Monte Carlo estimate sits within three sigmas of the exact error") {
    PromisePair p = pair_at(3, 1);
    auto e = run_two_party_mc(p, 1000000, 42);
    CHECK(e.trials == 1000000);
    CHECK(e.seed == 42);
    CHECK(std::abs(e.mean - 0.25) <= 3.0 * e.std_error);

    PromisePair q = pair_at(8, 9);  // N+1 on the 16-ring
    auto f = run_two_party_mc(q, 500000, 7);
    CHECK(std::abs(f.mean - link_error_probability(q)) <= 3.0 * f.std_error);
}

TEST_CASE("zero-error pairs never miscount") {
    auto e = run_two_party_mc(pair_at(5, 0), 20000, 1);
    CHECK(e.mean == 0.0);
    auto f = run_two_party_mc(pair_at(5, 5), 20000, 1);
    CHECK(f.mean == 0.0);
}

TEST_CASE("estimates are reproducible and independent of the thread count") {
    PromisePair p = pair_at(4, 5);
    auto a = run_two_party_mc(p, 100001, 777, 1);
    auto b = run_two_party_mc(p, 100001, 777, 1);
    CHECK(a == b);
    for (int threads : {2, 3, 8}) {
        auto c = run_two_party_mc(p, 100001, 777, threads);
        CHECK(a == c);
    }
    auto d = run_two_party_mc(p, 100001, 778, 1);
    CHECK(a.mean != d.mean);  // different seed, different stream
}

TEST_CASE("small-n validation") {
    CHECK_THROWS_AS(worst_case_error(2), std::invalid_argument);
    CHECK_THROWS_AS(average_error_uniform(1), std::invalid_argument);
}
