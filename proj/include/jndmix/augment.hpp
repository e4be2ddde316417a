#pragma once

#include <cstdint>

#include "jndmix/rng.hpp"
#include "jndmix/types.hpp"

namespace jndmix {

// One ratio per augmented sample, uniform on the open interval (0, 1).
double sample_lambda(Rng& rng);

// Independent fair +1/-1 per element.
SignField sample_sign_field(Rng& rng, int width, int height, int channels);

// Element-wise lambda * jnd. lambda must lie in (0, 1].
NoiseField make_noise(const JndMap& jnd, double lambda);

// Per element: clamp(round_half_away_from_zero(x + sign * noise), 0, 255).
// All three operands must have identical dimensions.
Image inject(const Image& image, const NoiseField& noise, const SignField& sign);

// The full augmentation: draw lambda, scale the map, draw a sign field,
// inject. The label is copied unchanged; lambda and seed are recorded.
AugmentedSample jndmix(const Image& image, double label, const JndMap& jnd,
                       std::uint64_t seed);

// Ablation: add the whole map with positive sign, no lambda, no signs.
Image full_jnd_inject(const Image& image, const JndMap& jnd);

// Ablation: add Normal(0, sigma^2) noise per element, deterministic per seed.
Image gaussian_inject(const Image& image, double sigma, std::uint64_t seed);

} // namespace jndmix
