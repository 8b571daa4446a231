#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubicgda/rng.hpp"

using namespace cubicgda;

TEST_CASE("keyed streams are reproducible and order-independent") {
    KeyedRng a = KeyedRng::from(42, {7, 3});
    KeyedRng b = KeyedRng::from(42, {7, 3});
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    // Different tags give different streams.
    KeyedRng c = KeyedRng::from(42, {7, 4});
    KeyedRng d = KeyedRng::from(42, {7, 3});
    int same = 0;
    for (int i = 0; i < 64; ++i) same += (c.next_u64() == d.next_u64());
    CHECK(same == 0);
}

TEST_CASE("uniform doubles live in [0,1) and look uniform") {
    KeyedRng rng = KeyedRng::from(1, {});
    double sum = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_double();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("next_below covers the range uniformly") {
    KeyedRng rng = KeyedRng::from(9, {1});
    const int n = 5;
    std::vector<int> counts(n, 0);
    for (int i = 0; i < 50000; ++i) {
        const auto k = rng.next_below(n);
        REQUIRE(k >= 0);
        REQUIRE(k < n);
        ++counts[static_cast<size_t>(k)];
    }
    for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}

TEST_CASE("gaussians have roughly unit variance") {
    KeyedRng rng = KeyedRng::from(5, {2});
    double s1 = 0.0, s2 = 0.0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        const double g = rng.next_gaussian();
        s1 += g;
        s2 += g * g;
    }
    CHECK(std::abs(s1 / n) < 0.02);
    CHECK(std::abs(s2 / n - 1.0) < 0.03);
}
