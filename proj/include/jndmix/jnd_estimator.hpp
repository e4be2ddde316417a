#pragma once

#include "jndmix/types.hpp"

namespace jndmix {

// BT.601 luma: Y = 0.299 R + 0.587 G + 0.114 B. Grayscale passes through.
LumaPlane to_luma(const Image& image);

// Pixel-domain JND model of Chou and Li: per pixel, the larger of a
// luminance-adaptation threshold (weighted 5x5 background mean) and a
// texture-masking threshold (maximal directional gradient). Borders use
// edge replication. The luma threshold is replicated across channels.
// Deterministic; all outputs lie in [0, 64].
JndMap estimate_jnd(const Image& image);

// Multiplies every threshold by gain. gain must be positive and finite.
JndMap scale_map(const JndMap& map, double gain);

} // namespace jndmix
