#include <doctest.h>

#include <cmath>

#include "xgewfi/errors.hpp"
#include "xgewfi/ks.hpp"
#include "xgewfi/reference.hpp"
#include "xgewfi/rng.hpp"

using namespace xgewfi;

namespace {

std::vector<double> random_sample(Rng& rng, std::size_t n, bool with_ties) {
    std::vector<double> v(n);
    for (auto& x : v) {
        // small integer grid injects plenty of ties
        x = with_ties ? static_cast<double>(rng.uniform_below(20)) : rng.normal();
    }
    return v;
}

}  // namespace

TEST_CASE("identical samples give D = 0 and p = 1") {
    const std::vector<double> v{1.0, 2.0, 2.0, 3.5};
    const KsResult r = ks_two_sample(v, v);
    CHECK(r.d_statistic == 0.0);
    CHECK(r.p_value == 1.0);
    CHECK(r.n_original == 4);
    CHECK(r.n_generated == 4);
}

TEST_CASE("disjoint supports give D = 1") {
    const KsResult r = ks_two_sample(std::vector<double>{0.0, 1.0}, std::vector<double>{10.0, 11.0});
    CHECK(r.d_statistic == 1.0);
}

TEST_CASE("overlapping shifted samples give D = 0.5") {
    const KsResult r =
        ks_two_sample(std::vector<double>{1, 2, 3, 4}, std::vector<double>{3, 4, 5, 6});
    CHECK(r.d_statistic == 0.5);
}

TEST_CASE("empty samples are rejected") {
    CHECK_THROWS_AS(ks_two_sample({}, std::vector<double>{1.0}), DataError);
    CHECK_THROWS_AS(ks_two_sample(std::vector<double>{1.0}, {}), DataError);
}

TEST_CASE("D is symmetric in its arguments") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_sample(rng, 1 + rng.uniform_below(100), trial % 2 == 0);
        const auto b = random_sample(rng, 1 + rng.uniform_below(100), trial % 2 == 0);
        CHECK(ks_two_sample(a, b).d_statistic == ks_two_sample(b, a).d_statistic);
    }
}

TEST_CASE("D is invariant under a strictly increasing transform") {
    Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_sample(rng, 1 + rng.uniform_below(80), true);
        auto b = random_sample(rng, 1 + rng.uniform_below(80), true);
        const double before = ks_two_sample(a, b).d_statistic;
        // x -> x^3 is exact and strictly increasing on the small integer grid
        for (auto& x : a) {
            x = x * x * x;
        }
        for (auto& x : b) {
            x = x * x * x;
        }
        CHECK(ks_two_sample(a, b).d_statistic == before);
    }
}

TEST_CASE("D is invariant under duplicating both samples") {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_sample(rng, 1 + rng.uniform_below(60), true);
        const auto b = random_sample(rng, 1 + rng.uniform_below(60), true);
        std::vector<double> aa(a);
        aa.insert(aa.end(), a.begin(), a.end());
        std::vector<double> bb(b);
        bb.insert(bb.end(), b.begin(), b.end());
        CHECK(ks_two_sample(aa, bb).d_statistic == ks_two_sample(a, b).d_statistic);
    }
}

TEST_CASE("the sweep equals brute-force pooled evaluation exactly") {
    Rng rng(404);
    for (int trial = 0; trial < 300; ++trial) {
        const auto a = random_sample(rng, 1 + rng.uniform_below(200), trial % 3 != 0);
        const auto b = random_sample(rng, 1 + rng.uniform_below(200), trial % 3 != 0);
        CHECK(ks_two_sample(a, b).d_statistic == reference::ks_statistic(a, b));
    }
}

TEST_CASE("p-value matches an independent series evaluation") {
    Rng rng(505);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = random_sample(rng, 1 + rng.uniform_below(200), false);
        const auto b = random_sample(rng, 1 + rng.uniform_below(200), false);
        const KsResult r = ks_two_sample(a, b);
        const double lambda =
            r.d_statistic * std::sqrt(static_cast<double>(a.size()) * static_cast<double>(b.size()) /
                                      static_cast<double>(a.size() + b.size()));
        CHECK(std::abs(r.p_value - reference::kolmogorov_series(lambda)) <= 1e-10);
        CHECK(r.p_value >= 0.0);
        CHECK(r.p_value <= 1.0);
    }
}

TEST_CASE("survival function endpoints") {
    CHECK(kolmogorov_survival(0.0) == 1.0);
    CHECK(kolmogorov_survival(10.0) < 1e-80);
    CHECK(kolmogorov_survival(0.5) > 0.9);
    CHECK(kolmogorov_survival(2.0) < 0.001);
}
