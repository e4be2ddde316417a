#include "jndmix/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "jndmix/errors.hpp"

namespace jndmix {
namespace {

void check_series(std::span<const double> pred, std::span<const double> gt) {
    if (pred.size() != gt.size())
        throw ValidationError("series length mismatch: " + std::to_string(pred.size()) +
                              " vs " + std::to_string(gt.size()));
    if (pred.size() < 2)
        throw ValidationError("series must have at least 2 values, got " +
                              std::to_string(pred.size()));
    for (double v : pred)
        if (!std::isfinite(v)) throw ValidationError("non-finite value in series");
    for (double v : gt)
        if (!std::isfinite(v)) throw ValidationError("non-finite value in series");
}

double pearson(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0)
        throw ValidationError("zero variance in series, correlation undefined");
    return std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
}

} // namespace

std::vector<double> rank_with_ties(std::span<const double> series) {
    const std::size_t n = series.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return series[i] < series[j]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && series[order[j + 1]] == series[order[i]]) ++j;
        // Tied block occupies positions i+1 .. j+1; everyone gets the mean.
        const double rank = static_cast<double>(i + j) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

double plcc(std::span<const double> pred, std::span<const double> gt) {
    check_series(pred, gt);
    return pearson(pred, gt);
}

double srcc(std::span<const double> pred, std::span<const double> gt) {
    check_series(pred, gt);
    const std::vector<double> rp = rank_with_ties(pred);
    const std::vector<double> rg = rank_with_ties(gt);
    return pearson(rp, rg);
}

} // namespace jndmix
