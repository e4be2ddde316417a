#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace jndmix {

enum class Command { estimate_jnd, augment, verify, split, metrics };
enum class Mode { jndmix, full_jnd, gaussian };
enum class EstimatorKind { chou_li, import_maps };

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

struct RunConfig {
    Command command = Command::augment;

    std::filesystem::path manifest;   // --manifest
    std::filesystem::path maps_dir;   // --maps
    std::filesystem::path out_dir;    // --out
    std::filesystem::path original;   // verify: --original
    std::filesystem::path augmented;  // verify: --augmented
    std::filesystem::path pred;       // metrics: --pred
    std::filesystem::path gt;         // metrics: --gt

    std::uint64_t master_seed = 0;                          // --seed
    Mode mode = Mode::jndmix;                               // --mode
    std::optional<double> sigma;                            // --sigma
    double gain = 1.0;                                      // --gain
    double fraction = 1.0;                                  // --fraction
    int repeats = 1;                                        // --repeats
    EstimatorKind estimator = EstimatorKind::import_maps;   // --estimator
    int jobs = 1;                                           // --jobs
};

struct Violation {
    std::string path;
    int x = 0;
    int y = 0;
    int c = 0;
    int original = 0;
    int augmented = 0;
    double bound = 0.0;
};

struct VerifyReport {
    std::size_t total_violations = 0;
    std::vector<std::size_t> per_record;  // violation count per manifest row
    std::vector<Violation> sample;        // first violations, capped
};

// Writes one <image-stem>.jndm per manifest record into out_dir.
// Failures are reported per record; any failure yields a nonzero exit.
int cmd_estimate_jnd(const RunConfig& config, std::ostream& log);

// Augments every record with the per-index seed derive_seed(master_seed, i),
// writes PNGs, an output manifest with labels copied verbatim, and an
// audit CSV (path, seed, lambda, mode) sorted by record index.
int cmd_augment(const RunConfig& config, std::ostream& log);

// Checks |augmented - original| <= round(jnd) on every pixel not clamped
// at 0 or 255. Exit 0 iff zero violations. Library callers can use
// run_verify for the structured report.
VerifyReport run_verify(const RunConfig& config);
int cmd_verify(const RunConfig& config, std::ostream& log);

// Writes `repeats` split files (train indices, "---", test indices).
int cmd_split(const RunConfig& config, std::ostream& log);

// Prints "srcc,plcc,n" with six decimal places.
int cmd_metrics(const RunConfig& config, std::ostream& out, std::ostream& log);

} // namespace jndmix
