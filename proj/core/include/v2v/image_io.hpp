#pragma once

#include <cstdint>
#include <filesystem>

#include "v2v/types.hpp"

namespace v2v {

/// BT.601 luma, rounded half-to-even.
std::uint8_t luma_bt601(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;

/// Decodes PGM/PPM (P2, P3, P5, P6; maxval <= 255) and, when built with
/// libpng, PNG. Color input is converted with luma_bt601.
Frame read_image(const std::filesystem::path& path);

bool is_supported_image(const std::filesystem::path& path);

void write_pgm(const Frame& frame, const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, Dims dims, std::span<const std::uint8_t> rgb);

}  // namespace v2v
