#pragma once

#include <filesystem>

#include "jndmix/types.hpp"

namespace jndmix {

// Decodes a PNG or JPEG file. Grayscale sources yield channels=1, color
// sources channels=3; alpha is dropped, palettes are expanded. Bit depths
// above 8 are rejected.
Image load_image(const std::filesystem::path& path);

// Writes a lossless 8-bit PNG. The write is atomic (temp file + rename)
// and byte-deterministic: the same image always produces the same file.
void save_image(const Image& image, const std::filesystem::path& path);

// Reads a threshold map, either JNDM sidecar (exact binary32 payload) or
// 16-bit PNG where threshold = sample / 256.
JndMap load_jnd_map(const std::filesystem::path& path);

// Writes the JNDM sidecar format; round-trips bit-exactly.
void save_jnd_map(const JndMap& map, const std::filesystem::path& path);

} // namespace jndmix
