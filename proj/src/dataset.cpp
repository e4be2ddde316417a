#include "jndmix/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include "jndmix/errors.hpp"
#include "jndmix/rng.hpp"

namespace jndmix {
namespace {

std::size_t round_half_away(double x) {
    return static_cast<std::size_t>(std::round(x));
}

double parse_mos(const std::string& text, std::size_t line_no) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &consumed);
    } catch (const std::exception&) {
        throw ValidationError("unparsable mos \"" + text + "\" at line " +
                              std::to_string(line_no));
    }
    if (consumed != text.size() || !std::isfinite(value))
        throw ValidationError("unparsable mos \"" + text + "\" at line " +
                              std::to_string(line_no));
    return value;
}

} // namespace

DatasetManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest: " + path.string());

    DatasetManifest manifest;
    manifest.name = path.stem().string();

    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty manifest: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "path,mos")
        throw ValidationError("manifest header must be exactly \"path,mos\", got \"" + line +
                              "\"");

    std::unordered_set<std::string> seen;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw ValidationError("missing comma at line " + std::to_string(line_no));
        ManifestRecord record;
        record.path = line.substr(0, comma);
        record.mos_text = line.substr(comma + 1);
        record.mos = parse_mos(record.mos_text, line_no);
        if (!seen.insert(record.path).second)
            throw ValidationError("duplicate path in manifest: " + record.path);
        manifest.records.push_back(std::move(record));
    }
    if (manifest.records.size() < 2)
        throw ValidationError("manifest needs at least 2 records, got " +
                              std::to_string(manifest.records.size()));
    return manifest;
}

Split make_split(const DatasetManifest& manifest, std::uint64_t seed) {
    const std::size_t n = manifest.records.size();
    std::vector<std::size_t> indices(n);
    std::iota(indices.begin(), indices.end(), std::size_t{0});

    Rng rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t j = rng.next_below(i + 1);
        std::swap(indices[i], indices[j]);
    }

    const std::size_t train_size = round_half_away(0.8 * static_cast<double>(n));
    Split split;
    split.seed = seed;
    split.train_fraction = 1.0;
    split.train.assign(indices.begin(), indices.begin() + train_size);
    split.test.assign(indices.begin() + train_size, indices.end());
    return split;
}

Split subsample_train(const Split& split, double fraction) {
    if (!(fraction > 0.0) || !(fraction <= 1.0) || !std::isfinite(fraction))
        throw ValidationError("fraction must lie in (0, 1], got " + std::to_string(fraction));
    const std::size_t keep =
        round_half_away(fraction * static_cast<double>(split.train.size()));
    if (keep == 0)
        throw ValidationError("fraction " + std::to_string(fraction) +
                              " truncates the train set to zero records");
    Split out;
    out.seed = split.seed;
    out.train_fraction = fraction;
    out.train.assign(split.train.begin(), split.train.begin() + keep);
    out.test = split.test;
    return out;
}

MetricReport repeat_protocol(const DatasetManifest& manifest, int repeats,
                             double fraction, std::uint64_t base_seed,
                             const std::function<MetricReport(const Split&)>& eval) {
    if (repeats < 1)
        throw ValidationError("repeats must be at least 1, got " + std::to_string(repeats));

    std::vector<MetricReport> reports;
    reports.reserve(static_cast<std::size_t>(repeats));
    for (int k = 0; k < repeats; ++k) {
        Split split = make_split(manifest, derive_seed(base_seed, static_cast<std::uint64_t>(k)));
        if (fraction < 1.0) split = subsample_train(split, fraction);
        try {
            reports.push_back(eval(split));
        } catch (const Error& e) {
            throw ValidationError("eval failed at repeat " + std::to_string(k) + ": " + e.what());
        }
    }
    if (repeats == 1) return reports.front();

    MetricReport mean;
    for (const MetricReport& r : reports) {
        mean.srcc += r.srcc;
        mean.plcc += r.plcc;
    }
    mean.srcc /= repeats;
    mean.plcc /= repeats;
    mean.n = reports.front().n;
    mean.split_seed = base_seed;
    mean.train_fraction = fraction;
    return mean;
}

} // namespace jndmix
