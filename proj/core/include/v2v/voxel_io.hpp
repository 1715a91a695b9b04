#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "v2v/types.hpp"

namespace v2v {

// A .v2vx file is one or more records back to back. Each record is a
// 24-byte header ("V2VX", u16 version = 1, u16 dtype = 1 for f32,
// u32 B, u32 H, u32 W, 4 reserved) followed by B*H*W little-endian f32
// values in bin-major, row-major order.
inline constexpr std::size_t kVoxelHeaderBytes = 24;

/// Counts must satisfy |v| < 2^24 so they survive the f32 encoding exactly.
inline constexpr std::int64_t kMaxExactCount = (std::int64_t{1} << 24) - 1;

std::uint64_t voxel_payload_bytes(int bins, Dims dims) noexcept;

void write_voxels(std::span<const DiscreteVoxel> voxels, std::ostream& out);
void write_voxels(std::span<const DiscreteVoxel> voxels, const std::filesystem::path& path);

std::vector<DiscreteVoxel> read_voxels(std::istream& in);
std::vector<DiscreteVoxel> read_voxels(const std::filesystem::path& path);

/// Interpolated voxels use the same container; values are rounded to f32.
void write_voxels(std::span<const InterpolatedVoxel> voxels, std::ostream& out);
void write_voxels(std::span<const InterpolatedVoxel> voxels, const std::filesystem::path& path);

/// Reads records as raw f32 values widened to double.
std::vector<InterpolatedVoxel> read_voxels_real(std::istream& in);

}  // namespace v2v
