#pragma once

#include <cstdint>
#include <vector>

#include "jndmix/errors.hpp"

namespace jndmix {

// 8-bit image, row-major, channel-interleaved. channels is 1 (gray) or 3 (RGB).
struct Image {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::uint8_t> data;
};

// Per-pixel visibility thresholds in intensity units, same layout as Image.
struct JndMap {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<float> data;
};

// Single-channel real-valued luma plane, intermediate of the JND estimator.
struct LumaPlane {
    int width = 0;
    int height = 0;
    std::vector<double> data;
};

// Per-pixel injection direction, every element +1 or -1.
struct SignField {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<std::int8_t> data;
};

// Non-negative noise magnitudes, element-wise <= the JndMap it was scaled from.
struct NoiseField {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<float> data;
};

// Output of the jndmix operation. The label is copied from the source
// sample unchanged; lambda and seed are kept for audit.
struct AugmentedSample {
    Image image;
    double label = 0.0;
    double lambda = 0.0;
    std::uint64_t seed = 0;
};

inline std::size_t sample_count(int width, int height, int channels) {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
           static_cast<std::size_t>(channels);
}

// Throws ValidationError unless the image satisfies its invariants.
void check_image(const Image& image);

// Throws ValidationError unless the map satisfies its invariants
// (non-negative finite thresholds, payload matches dimensions).
void check_jnd_map(const JndMap& map);

// Throws ValidationError unless image and map have identical dimensions.
void check_paired(const Image& image, const JndMap& map);

} // namespace jndmix
