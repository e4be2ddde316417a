#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "jndmix/metrics.hpp"

namespace jndmix {

struct ManifestRecord {
    std::string path;
    double mos = 0.0;
    // Verbatim text of the mos field, so labels survive a copy bit-exactly.
    std::string mos_text;
};

struct DatasetManifest {
    std::string name;
    std::vector<ManifestRecord> records;
};

// Seeded partition. train and test hold record indices in shuffled order;
// taking a prefix of train yields nested fractional subsets.
struct Split {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    std::uint64_t seed = 0;
    double train_fraction = 1.0;
};

// Parses a CSV with header exactly "path,mos". Errors carry the offending
// row number or path.
DatasetManifest load_manifest(const std::filesystem::path& path);

// Fisher-Yates shuffle of all indices seeded by `seed`; the first
// round(0.8 n) become train (half-away-from-zero), the rest test.
Split make_split(const DatasetManifest& manifest, std::uint64_t seed);

// Keeps the test set and truncates train to round(fraction * |train|)
// elements. fraction must lie in (0, 1]; truncating to zero is an error.
Split subsample_train(const Split& split, double fraction);

// Runs eval on `repeats` splits seeded derive_seed(base_seed, k) and
// returns the arithmetic mean of their SRCC and PLCC.
MetricReport repeat_protocol(const DatasetManifest& manifest, int repeats,
                             double fraction, std::uint64_t base_seed,
                             const std::function<MetricReport(const Split&)>& eval);

} // namespace jndmix
