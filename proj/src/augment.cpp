#include "jndmix/augment.hpp"

#include <cmath>
#include <string>

namespace jndmix {
namespace {

std::uint8_t quantize(double value) {
    // Round half away from zero, then clamp to the 8-bit range.
    const double rounded = std::round(value);
    if (rounded <= 0.0) return 0;
    if (rounded >= 255.0) return 255;
    return static_cast<std::uint8_t>(rounded);
}

} // namespace

double sample_lambda(Rng& rng) {
    return rng.uniform_open01();
}

SignField sample_sign_field(Rng& rng, int width, int height, int channels) {
    if (width <= 0 || height <= 0 || channels <= 0)
        throw ValidationError("sign field dimensions must be positive");
    SignField field;
    field.width = width;
    field.height = height;
    field.channels = channels;
    const std::size_t n = sample_count(width, height, channels);
    field.data.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        field.data[i] = rng.next_sign_bit() ? std::int8_t{1} : std::int8_t{-1};
    return field;
}

NoiseField make_noise(const JndMap& jnd, double lambda) {
    if (!(lambda > 0.0) || !(lambda <= 1.0))
        throw ValidationError("lambda must lie in (0, 1], got " + std::to_string(lambda));
    check_jnd_map(jnd);
    NoiseField noise;
    noise.width = jnd.width;
    noise.height = jnd.height;
    noise.channels = jnd.channels;
    noise.data.resize(jnd.data.size());
    for (std::size_t i = 0; i < jnd.data.size(); ++i)
        noise.data[i] = static_cast<float>(lambda * jnd.data[i]);
    return noise;
}

Image inject(const Image& image, const NoiseField& noise, const SignField& sign) {
    check_image(image);
    if (noise.width != image.width || noise.height != image.height ||
        noise.channels != image.channels || sign.width != image.width ||
        sign.height != image.height || sign.channels != image.channels)
        throw ValidationError("inject operands must have identical dimensions");

    Image out = image;
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = quantize(static_cast<double>(image.data[i]) +
                               static_cast<double>(sign.data[i]) * noise.data[i]);
    return out;
}

AugmentedSample jndmix(const Image& image, double label, const JndMap& jnd,
                       std::uint64_t seed) {
    check_paired(image, jnd);
    Rng rng(seed);
    const double lambda = sample_lambda(rng);
    const NoiseField noise = make_noise(jnd, lambda);
    const SignField sign =
        sample_sign_field(rng, image.width, image.height, image.channels);
    AugmentedSample sample;
    sample.image = inject(image, noise, sign);
    sample.label = label;
    sample.lambda = lambda;
    sample.seed = seed;
    return sample;
}

Image full_jnd_inject(const Image& image, const JndMap& jnd) {
    check_paired(image, jnd);
    check_jnd_map(jnd);
    Image out = image;
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = quantize(static_cast<double>(image.data[i]) + jnd.data[i]);
    return out;
}

Image gaussian_inject(const Image& image, double sigma, std::uint64_t seed) {
    check_image(image);
    if (!std::isfinite(sigma) || sigma <= 0.0)
        throw ValidationError("sigma must be positive and finite, got " + std::to_string(sigma));
    Rng rng(seed);
    Image out = image;
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = quantize(static_cast<double>(image.data[i]) + rng.normal(sigma));
    return out;
}

} // namespace jndmix
