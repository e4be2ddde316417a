#include "jndmix/jnd_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jndmix {
namespace {

// Chou-Li background-luminance weights, sum 32.
constexpr int kBackground[5][5] = {
    {1, 1, 1, 1, 1},
    {1, 2, 2, 2, 1},
    {1, 2, 0, 2, 1},
    {1, 2, 2, 2, 1},
    {1, 1, 1, 1, 1},
};

// The four Chou-Li directional gradient operators; each half sums to 16.
constexpr int kGradient[4][5][5] = {
    {{0, 0, 0, 0, 0},
     {1, 3, 8, 3, 1},
     {0, 0, 0, 0, 0},
     {-1, -3, -8, -3, -1},
     {0, 0, 0, 0, 0}},
    {{0, 0, 1, 0, 0},
     {0, 8, 3, 0, 0},
     {1, 3, 0, -3, -1},
     {0, 0, -3, -8, 0},
     {0, 0, -1, 0, 0}},
    {{0, 0, 1, 0, 0},
     {0, 0, 3, 8, 0},
     {-1, -3, 0, 3, 1},
     {0, -8, -3, 0, 0},
     {0, 0, -1, 0, 0}},
    {{0, 1, 0, -1, 0},
     {0, 3, 0, -3, 0},
     {0, 8, 0, -8, 0},
     {0, 3, 0, -3, 0},
     {0, 1, 0, -1, 0}},
};

constexpr double kTextureAlpha = 0.117;

double luminance_adaptation(double bg) {
    if (bg <= 127.0) return 17.0 * (1.0 - std::sqrt(bg / 127.0)) + 3.0;
    return 3.0 / 128.0 * (bg - 127.0) + 3.0;
}

// Edge-replicated sample access.
inline double at(const LumaPlane& luma, int x, int y) {
    x = std::clamp(x, 0, luma.width - 1);
    y = std::clamp(y, 0, luma.height - 1);
    return luma.data[static_cast<std::size_t>(y) * luma.width + x];
}

} // namespace

LumaPlane to_luma(const Image& image) {
    check_image(image);
    LumaPlane luma;
    luma.width = image.width;
    luma.height = image.height;
    const std::size_t pixels = sample_count(image.width, image.height, 1);
    luma.data.resize(pixels);
    if (image.channels == 1) {
        for (std::size_t i = 0; i < pixels; ++i) luma.data[i] = image.data[i];
    } else {
        for (std::size_t i = 0; i < pixels; ++i) {
            const std::uint8_t* px = image.data.data() + 3 * i;
            luma.data[i] = 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2];
        }
    }
    return luma;
}

JndMap estimate_jnd(const Image& image) {
    const LumaPlane luma = to_luma(image);
    const int w = luma.width;
    const int h = luma.height;

    JndMap map;
    map.width = w;
    map.height = h;
    map.channels = image.channels;
    map.data.resize(sample_count(w, h, image.channels));

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double bg = 0.0;
            double grad[4] = {0.0, 0.0, 0.0, 0.0};
            for (int ky = 0; ky < 5; ++ky) {
                for (int kx = 0; kx < 5; ++kx) {
                    const double v = at(luma, x + kx - 2, y + ky - 2);
                    bg += kBackground[ky][kx] * v;
                    for (int k = 0; k < 4; ++k) grad[k] += kGradient[k][ky][kx] * v;
                }
            }
            bg /= 32.0;
            double max_grad = 0.0;
            for (double g : grad) max_grad = std::max(max_grad, std::abs(g) / 16.0);

            const double threshold =
                std::max(luminance_adaptation(bg), kTextureAlpha * max_grad);
            const float t = static_cast<float>(threshold);
            float* row = map.data.data() +
                         (static_cast<std::size_t>(y) * w + x) * image.channels;
            for (int c = 0; c < image.channels; ++c) row[c] = t;
        }
    }
    return map;
}

JndMap scale_map(const JndMap& map, double gain) {
    if (!std::isfinite(gain) || gain <= 0.0)
        throw ValidationError("gain must be positive and finite, got " + std::to_string(gain));
    check_jnd_map(map);
    JndMap scaled = map;
    for (float& t : scaled.data) t = static_cast<float>(t * gain);
    return scaled;
}

} // namespace jndmix
