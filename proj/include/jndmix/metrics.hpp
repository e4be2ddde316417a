#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace jndmix {

struct MetricReport {
    double srcc = 0.0;
    double plcc = 0.0;
    std::size_t n = 0;
    std::uint64_t split_seed = 0;
    double train_fraction = 1.0;
};

// 1-based ranks with tied groups assigned the mean of their positions.
// The rank sum is always n(n+1)/2.
std::vector<double> rank_with_ties(std::span<const double> series);

// Pearson linear correlation. Errors on length mismatch, n < 2,
// non-finite values, or zero variance in either series.
double plcc(std::span<const double> pred, std::span<const double> gt);

// Spearman rank correlation: Pearson correlation of average-rank vectors.
double srcc(std::span<const double> pred, std::span<const double> gt);

} // namespace jndmix
