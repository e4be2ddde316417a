#include "jndmix/types.hpp"

#include <cmath>
#include <string>

namespace jndmix {

void check_image(const Image& image) {
    if (image.width <= 0 || image.height <= 0)
        throw ValidationError("image dimensions must be positive, got " +
                              std::to_string(image.width) + "x" + std::to_string(image.height));
    if (image.channels != 1 && image.channels != 3)
        throw ValidationError("image channels must be 1 or 3, got " +
                              std::to_string(image.channels));
    if (image.data.size() != sample_count(image.width, image.height, image.channels))
        throw ValidationError("image payload size " + std::to_string(image.data.size()) +
                              " does not match dimensions");
}

void check_jnd_map(const JndMap& map) {
    if (map.width <= 0 || map.height <= 0 || map.channels <= 0)
        throw ValidationError("jnd map dimensions must be positive");
    if (map.data.size() != sample_count(map.width, map.height, map.channels))
        throw ValidationError("jnd map payload size " + std::to_string(map.data.size()) +
                              " does not match dimensions");
    for (float t : map.data) {
        if (!std::isfinite(t) || t < 0.0f)
            throw ValidationError("jnd thresholds must be finite and non-negative, got " +
                                  std::to_string(t));
    }
}

void check_paired(const Image& image, const JndMap& map) {
    if (image.width != map.width || image.height != map.height ||
        image.channels != map.channels)
        throw ValidationError(
            "image/map dimension mismatch: image " + std::to_string(image.width) + "x" +
            std::to_string(image.height) + "x" + std::to_string(image.channels) + ", map " +
            std::to_string(map.width) + "x" + std::to_string(map.height) + "x" +
            std::to_string(map.channels));
}

} // namespace jndmix
