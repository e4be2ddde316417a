#include <doctest.h>

#include <set>

#include "jndmix/rng.hpp"

using namespace jndmix;

TEST_CASE("same seed gives the same stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds give different streams") {
    Rng a(1), b(2);
    int equal = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++equal;
    CHECK(equal == 0);
}

TEST_CASE("uniform_open01 stays strictly inside (0, 1)") {
    Rng rng(7);
    for (int i = 0; i < 1000000; ++i) {
        const double u = rng.uniform_open01();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("next_below respects the bound and hits every residue") {
    Rng rng(3);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t v = rng.next_below(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
}

TEST_CASE("derive_seed is a pure function of (master, index)") {
    CHECK(derive_seed(99, 5) == derive_seed(99, 5));
    CHECK(derive_seed(99, 5) != derive_seed(99, 6));
    CHECK(derive_seed(99, 5) != derive_seed(98, 5));
}

TEST_CASE("normal draws are deterministic per seed") {
    Rng a(11), b(11);
    for (int i = 0; i < 100; ++i) CHECK(a.normal(2.5) == b.normal(2.5));
}

TEST_CASE("normal has roughly the requested spread") {
    Rng rng(13);
    const int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal(3.0);
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.05);
    CHECK(var == doctest::Approx(9.0).epsilon(0.05));
}
