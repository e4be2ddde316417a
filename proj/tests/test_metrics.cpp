#include <doctest.h>

#include <cmath>
#include <vector>

#include "jndmix/metrics.hpp"
#include "jndmix/errors.hpp"
#include "jndmix/rng.hpp"

using namespace jndmix;

namespace {

// Definition-based oracle, deliberately a different code path: O(n^2)
// average ranks by counting, then the covariance/sigma-sigma formula.
std::vector<double> oracle_ranks(const std::vector<double>& v) {
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::size_t less = 0, equal = 0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] < v[i]) ++less;
            if (v[j] == v[i]) ++equal;
        }
        ranks[i] = static_cast<double>(less) + (static_cast<double>(equal) + 1.0) / 2.0;
    }
    return ranks;
}

// Covariance over sigma*sigma, straight from the definition, in extended
// precision so the oracle is the more accurate side of the comparison.
double oracle_pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    long double mean_a = 0, mean_b = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= n;
    mean_b /= n;
    long double cov = 0, var_a = 0, var_b = 0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (a[i] - mean_a) * (b[i] - mean_b);
        var_a += (a[i] - mean_a) * (a[i] - mean_a);
        var_b += (b[i] - mean_b) * (b[i] - mean_b);
    }
    return static_cast<double>(cov / n / (std::sqrt(var_a / n) * std::sqrt(var_b / n)));
}

double oracle_srcc(const std::vector<double>& a, const std::vector<double>& b) {
    return oracle_pearson(oracle_ranks(a), oracle_ranks(b));
}

std::vector<double> random_series(Rng& rng, std::size_t n, bool with_ties) {
    std::vector<double> v(n);
    for (auto& x : v)
        x = with_ties ? static_cast<double>(rng.next_below(4)) : rng.uniform_open01() * 10.0;
    return v;
}

bool has_rank_variance(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] != v[0]) return true;
    return false;
}

} // namespace

TEST_CASE("rank_with_ties") {
    CHECK(rank_with_ties(std::vector<double>{10, 20, 30}) == std::vector<double>{1, 2, 3});
    CHECK(rank_with_ties(std::vector<double>{5, 5}) == std::vector<double>{1.5, 1.5});
    CHECK(rank_with_ties(std::vector<double>{7, 3, 7}) == std::vector<double>{2.5, 1, 2.5});
}

TEST_CASE("rank sums equal n(n+1)/2") {
    Rng rng(1);
    for (int iter = 0; iter < 100; ++iter) {
        const std::size_t n = 2 + rng.next_below(12);
        const auto ranks = rank_with_ties(random_series(rng, n, iter % 2 == 0));
        double sum = 0;
        for (double r : ranks) sum += r;
        CHECK(sum == doctest::Approx(n * (n + 1) / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("plcc basics") {
    const std::vector<double> gt{1, 2, 3, 5};
    CHECK(plcc(gt, gt) == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<double> neg(gt);
    for (double& v : neg) v = -v;
    CHECK(plcc(neg, gt) == doctest::Approx(-1.0).epsilon(1e-12));

    const std::vector<double> affine{2, 4, 6, 10};
    CHECK(plcc(gt, affine) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("srcc basics") {
    const std::vector<double> up{1, 2, 3, 4, 5};
    const std::vector<double> curved{1, 4, 9, 16, 25};
    CHECK(srcc(up, curved) == doctest::Approx(1.0).epsilon(1e-12));

    const std::vector<double> down{5, 4, 3, 2, 1};
    CHECK(srcc(down, up) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("srcc with a tie matches the frozen average-rank value") {
    const std::vector<double> pred{1, 2, 2, 4};
    const std::vector<double> gt{1, 2, 3, 4};
    CHECK(srcc(pred, gt) == doctest::Approx(0.9486832980505138).epsilon(1e-12));
}

TEST_CASE("metrics match the definition-based oracle on random series") {
    Rng rng(1729);
    int tested = 0;
    while (tested < 500) {
        const std::size_t n = 2 + rng.next_below(9);  // lengths up to 10
        const bool ties = rng.next_sign_bit();
        const std::vector<double> a = random_series(rng, n, ties);
        const std::vector<double> b = random_series(rng, n, ties);
        if (!has_rank_variance(a) || !has_rank_variance(b)) continue;
        ++tested;
        CHECK(srcc(a, b) == doctest::Approx(oracle_srcc(a, b)).epsilon(1e-12));
        CHECK(plcc(a, b) == doctest::Approx(oracle_pearson(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("srcc is invariant under strictly increasing transforms") {
    Rng rng(99);
    for (int iter = 0; iter < 50; ++iter) {
        const std::vector<double> a = random_series(rng, 8, false);
        const std::vector<double> b = random_series(rng, 8, false);
        std::vector<double> warped(a);
        for (double& v : warped) v = std::exp(v / 3.0) + v * v * v;
        CHECK(srcc(warped, b) == doctest::Approx(srcc(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("plcc is invariant under positive-affine transforms") {
    Rng rng(100);
    for (int iter = 0; iter < 50; ++iter) {
        const std::vector<double> a = random_series(rng, 8, false);
        const std::vector<double> b = random_series(rng, 8, false);
        const double scale = 0.5 + rng.uniform_open01() * 5.0;
        const double offset = rng.uniform_open01() * 20.0 - 10.0;
        std::vector<double> mapped(a);
        for (double& v : mapped) v = scale * v + offset;
        CHECK(plcc(mapped, b) == doctest::Approx(plcc(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("both metrics are symmetric in their arguments") {
    Rng rng(101);
    for (int iter = 0; iter < 30; ++iter) {
        const std::vector<double> a = random_series(rng, 7, iter % 2 == 0);
        const std::vector<double> b = random_series(rng, 7, false);
        if (!has_rank_variance(a)) continue;
        CHECK(srcc(a, b) == doctest::Approx(srcc(b, a)).epsilon(1e-14));
        CHECK(plcc(a, b) == doctest::Approx(plcc(b, a)).epsilon(1e-14));
    }
}

TEST_CASE("metric error contracts") {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> shorter{1, 2};
    const std::vector<double> flat{4, 4, 4};
    const std::vector<double> single{1};
    CHECK_THROWS_AS(plcc(a, shorter), ValidationError);
    CHECK_THROWS_AS(srcc(a, shorter), ValidationError);
    CHECK_THROWS_AS(plcc(a, flat), ValidationError);
    CHECK_THROWS_AS(srcc(flat, a), ValidationError);
    CHECK_THROWS_AS(srcc(single, single), ValidationError);
    const std::vector<double> with_nan{1.0, std::nan(""), 2.0};
    CHECK_THROWS_AS(plcc(with_nan, a), ValidationError);
}
