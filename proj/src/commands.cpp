#include "jndmix/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_set>
#include <vector>

#include "fs_util.hpp"
#include "jndmix/augment.hpp"
#include "jndmix/dataset.hpp"
#include "jndmix/image_io.hpp"
#include "jndmix/jnd_estimator.hpp"
#include "jndmix/metrics.hpp"
#include "jndmix/rng.hpp"

namespace fs = std::filesystem;

namespace jndmix {
namespace {

constexpr std::size_t kMaxSampledViolations = 256;

// Work items are independent; indices are claimed from a shared counter so
// any worker count produces the same set of results.
template <typename Fn>
void parallel_for(int jobs, std::size_t n, Fn&& fn) {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(1, jobs)), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& thread : pool) thread.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

const char* mode_name(Mode mode) {
    switch (mode) {
        case Mode::jndmix: return "jndmix";
        case Mode::full_jnd: return "full-jnd";
        case Mode::gaussian: return "gaussian";
    }
    return "?";
}

// Relative manifest paths resolve against the manifest's own directory.
fs::path resolve(const fs::path& manifest_path, const std::string& record_path) {
    fs::path p(record_path);
    if (p.is_absolute()) return p;
    return manifest_path.parent_path() / p;
}

fs::path map_path(const fs::path& maps_dir, const fs::path& image_path) {
    return maps_dir / (image_path.stem().string() + ".jndm");
}

// Output stems must be unique or records would overwrite each other.
void check_unique_stems(const DatasetManifest& manifest) {
    std::unordered_set<std::string> stems;
    for (const ManifestRecord& record : manifest.records) {
        const std::string stem = fs::path(record.path).stem().string();
        if (!stems.insert(stem).second)
            throw ValidationError("duplicate image stem \"" + stem +
                                  "\"; output names would collide");
    }
}

struct RecordError {
    std::size_t index;
    std::string message;
    bool is_io;
};

int exit_code_for(const std::vector<RecordError>& errors, std::ostream& log) {
    if (errors.empty()) return kExitOk;
    bool any_io = false;
    for (const RecordError& e : errors) {
        log << "error: record " << e.index << ": " << e.message << "\n";
        any_io = any_io || e.is_io;
    }
    log << errors.size() << " record(s) failed\n";
    return any_io ? kExitIo : kExitValidation;
}

JndMap map_for_record(const RunConfig& config, const fs::path& image_path,
                      const Image& image) {
    JndMap map = config.estimator == EstimatorKind::chou_li
                     ? estimate_jnd(image)
                     : load_jnd_map(map_path(config.maps_dir, image_path));
    if (config.gain != 1.0) map = scale_map(map, config.gain);
    check_paired(image, map);
    return map;
}

void require_maps_or_estimator(const RunConfig& config) {
    if (config.estimator == EstimatorKind::import_maps && config.maps_dir.empty())
        throw ValidationError("--maps is required unless --estimator chou-li is given");
}

} // namespace

int cmd_estimate_jnd(const RunConfig& config, std::ostream& log) {
    const DatasetManifest manifest = load_manifest(config.manifest);
    check_unique_stems(manifest);
    if (config.out_dir.empty()) throw ValidationError("--out directory is required");
    fs::create_directories(config.out_dir);

    std::mutex mutex;
    std::vector<RecordError> errors;
    parallel_for(config.jobs, manifest.records.size(), [&](std::size_t i) {
        const ManifestRecord& record = manifest.records[i];
        try {
            const fs::path image_path = resolve(config.manifest, record.path);
            JndMap map = estimate_jnd(load_image(image_path));
            if (config.gain != 1.0) map = scale_map(map, config.gain);
            save_jnd_map(map, map_path(config.out_dir, image_path));
        } catch (const Error& e) {
            std::lock_guard lock(mutex);
            errors.push_back({i, e.what(), dynamic_cast<const IoError*>(&e) != nullptr});
        }
    });
    std::sort(errors.begin(), errors.end(),
              [](const RecordError& a, const RecordError& b) { return a.index < b.index; });
    return exit_code_for(errors, log);
}

int cmd_augment(const RunConfig& config, std::ostream& log) {
    if (config.mode == Mode::gaussian && !config.sigma)
        throw ValidationError("--sigma is required in gaussian mode");
    if (config.mode != Mode::gaussian) require_maps_or_estimator(config);
    if (config.out_dir.empty()) throw ValidationError("--out directory is required");

    const DatasetManifest manifest = load_manifest(config.manifest);
    check_unique_stems(manifest);
    fs::create_directories(config.out_dir);

    struct Result {
        std::string out_name;
        std::string mos_text;
        std::uint64_t seed = 0;
        std::optional<double> lambda;
        bool ok = false;
    };
    std::vector<Result> results(manifest.records.size());
    std::mutex mutex;
    std::vector<RecordError> errors;

    parallel_for(config.jobs, manifest.records.size(), [&](std::size_t i) {
        const ManifestRecord& record = manifest.records[i];
        Result& result = results[i];
        try {
            const fs::path image_path = resolve(config.manifest, record.path);
            const std::uint64_t seed = derive_seed(config.master_seed, i);
            const Image image = load_image(image_path);

            Image augmented;
            std::optional<double> lambda;
            switch (config.mode) {
                case Mode::jndmix: {
                    AugmentedSample sample =
                        jndmix(image, record.mos, map_for_record(config, image_path, image), seed);
                    augmented = std::move(sample.image);
                    lambda = sample.lambda;
                    break;
                }
                case Mode::full_jnd:
                    augmented = full_jnd_inject(image, map_for_record(config, image_path, image));
                    break;
                case Mode::gaussian:
                    augmented = gaussian_inject(image, *config.sigma, seed);
                    break;
            }
            const std::string out_name = image_path.stem().string() + ".png";
            save_image(augmented, config.out_dir / out_name);
            result = {out_name, record.mos_text, seed, lambda, true};
        } catch (const Error& e) {
            std::lock_guard lock(mutex);
            errors.push_back({i, e.what(), dynamic_cast<const IoError*>(&e) != nullptr});
        }
    });

    // Single-writer flush in record order, so the logs are deterministic.
    detail::AtomicWriter manifest_out(config.out_dir / "manifest.csv");
    manifest_out.write(std::string("path,mos\n"));
    detail::AtomicWriter audit_out(config.out_dir / "audit.csv");
    audit_out.write(std::string("path,seed,lambda,mode\n"));
    for (const Result& result : results) {
        if (!result.ok) continue;
        manifest_out.write(result.out_name + "," + result.mos_text + "\n");
        audit_out.write(result.out_name + "," + std::to_string(result.seed) + "," +
                        (result.lambda ? format_double(*result.lambda) : std::string()) + "," +
                        mode_name(config.mode) + "\n");
    }
    manifest_out.commit();
    audit_out.commit();

    std::sort(errors.begin(), errors.end(),
              [](const RecordError& a, const RecordError& b) { return a.index < b.index; });
    return exit_code_for(errors, log);
}

VerifyReport run_verify(const RunConfig& config) {
    require_maps_or_estimator(config);
    const DatasetManifest original = load_manifest(config.original);
    const DatasetManifest augmented = load_manifest(config.augmented);
    if (original.records.size() != augmented.records.size())
        throw ValidationError("mismatched file sets: " + std::to_string(original.records.size()) +
                              " original vs " + std::to_string(augmented.records.size()) +
                              " augmented records");

    VerifyReport report;
    report.per_record.assign(original.records.size(), 0);
    std::mutex mutex;

    parallel_for(config.jobs, original.records.size(), [&](std::size_t i) {
        const fs::path orig_path = resolve(config.original, original.records[i].path);
        const fs::path aug_path = resolve(config.augmented, augmented.records[i].path);
        const Image orig = load_image(orig_path);
        const Image aug = load_image(aug_path);
        if (orig.width != aug.width || orig.height != aug.height ||
            orig.channels != aug.channels)
            throw ValidationError("dimension mismatch between " + orig_path.string() + " and " +
                                  aug_path.string());
        const JndMap map = config.estimator == EstimatorKind::chou_li
                               ? (config.gain != 1.0 ? scale_map(estimate_jnd(orig), config.gain)
                                                     : estimate_jnd(orig))
                               : map_for_record(config, orig_path, orig);

        std::size_t count = 0;
        std::vector<Violation> local;
        for (int y = 0; y < orig.height; ++y) {
            for (int x = 0; x < orig.width; ++x) {
                for (int c = 0; c < orig.channels; ++c) {
                    const std::size_t idx =
                        (static_cast<std::size_t>(y) * orig.width + x) * orig.channels + c;
                    const int a = aug.data[idx];
                    if (a == 0 || a == 255) continue;  // clamped pixels are exempt
                    const int o = orig.data[idx];
                    const double bound = std::round(map.data[idx]);
                    if (std::abs(a - o) > bound) {
                        ++count;
                        if (local.size() < 16)
                            local.push_back({original.records[i].path, x, y, c, o, a, bound});
                    }
                }
            }
        }
        if (count > 0) {
            std::lock_guard lock(mutex);
            report.per_record[i] = count;
            report.total_violations += count;
            for (Violation& v : local) {
                if (report.sample.size() >= kMaxSampledViolations) break;
                report.sample.push_back(std::move(v));
            }
        }
    });
    return report;
}

int cmd_verify(const RunConfig& config, std::ostream& log) {
    const VerifyReport report = run_verify(config);
    for (const Violation& v : report.sample)
        log << "violation: " << v.path << " x=" << v.x << " y=" << v.y << " c=" << v.c
            << " |" << v.augmented << " - " << v.original << "| > " << v.bound << "\n";
    log << "violations: " << report.total_violations << "\n";
    return report.total_violations == 0 ? kExitOk : kExitValidation;
}

int cmd_split(const RunConfig& config, std::ostream&) {
    if (config.out_dir.empty()) throw ValidationError("--out directory is required");
    if (config.repeats < 1)
        throw ValidationError("--repeats must be at least 1, got " +
                              std::to_string(config.repeats));
    if (!(config.fraction > 0.0) || !(config.fraction <= 1.0))
        throw ValidationError("--fraction must lie in (0, 1], got " +
                              std::to_string(config.fraction));
    const DatasetManifest manifest = load_manifest(config.manifest);
    fs::create_directories(config.out_dir);

    for (int k = 0; k < config.repeats; ++k) {
        Split split =
            make_split(manifest, derive_seed(config.master_seed, static_cast<std::uint64_t>(k)));
        if (config.fraction < 1.0) split = subsample_train(split, config.fraction);

        std::string text;
        for (std::size_t idx : split.train) text += std::to_string(idx) + "\n";
        text += "---\n";
        for (std::size_t idx : split.test) text += std::to_string(idx) + "\n";

        detail::AtomicWriter out(config.out_dir / ("split_" + std::to_string(k) + ".txt"));
        out.write(text);
        out.commit();
    }
    return kExitOk;
}

namespace {

std::vector<double> load_scores(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open score file: " + path.string());
    std::vector<double> scores;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t consumed = 0;
        double value = 0.0;
        try {
            value = std::stod(line, &consumed);
        } catch (const std::exception&) {
            throw ValidationError("unparsable score \"" + line + "\" at " + path.string() +
                                  ":" + std::to_string(line_no));
        }
        if (consumed != line.size())
            throw ValidationError("unparsable score \"" + line + "\" at " + path.string() +
                                  ":" + std::to_string(line_no));
        scores.push_back(value);
    }
    return scores;
}

} // namespace

int cmd_metrics(const RunConfig& config, std::ostream& out, std::ostream& log) {
    const std::vector<double> pred = load_scores(config.pred);
    const std::vector<double> gt = load_scores(config.gt);
    if (pred.size() != gt.size()) {
        log << "misaligned score files: " << pred.size() << " predictions vs " << gt.size()
            << " ground-truth values\n";
        return kExitValidation;
    }
    const double s = srcc(pred, gt);
    const double p = plcc(pred, gt);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%zu\n", s, p, pred.size());
    out << buf;
    return kExitOk;
}

} // namespace jndmix
