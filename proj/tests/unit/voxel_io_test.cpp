#include <gtest/gtest.h>

#include <sstream>

#include "support/temp_dir.hpp"
#include "v2v/errors.hpp"
#include "v2v/voxel_io.hpp"

namespace v2v {
namespace {

DiscreteVoxel numbered(int bins, Dims d) {
  DiscreteVoxel v(bins, d);
  std::int32_t n = -7;
  for (auto& x : v.values()) x = n++;
  return v;
}

TEST(VoxelIo, RoundTripsSeveralRecords) {
  const std::vector<DiscreteVoxel> voxels{numbered(5, Dims{4, 3}), numbered(2, Dims{1, 6})};
  std::stringstream buf;
  write_voxels(voxels, buf);
  EXPECT_EQ(buf.str().size(), 2 * kVoxelHeaderBytes + 4 * (60 + 12));
  EXPECT_EQ(buf.str().substr(0, 4), "V2VX");
  EXPECT_EQ(read_voxels(buf), voxels);
}

TEST(VoxelIo, FileRoundTrip) {
  testing::TempDir dir;
  const std::vector<DiscreteVoxel> voxels{numbered(3, Dims{2, 2})};
  write_voxels(voxels, dir / "a.v2vx");
  EXPECT_EQ(read_voxels(dir / "a.v2vx"), voxels);
}

TEST(VoxelIo, PayloadSize) {
  EXPECT_EQ(voxel_payload_bytes(5, Dims{596, 180}), 2145600u);
}

TEST(VoxelIo, LargestExactCountSurvives) {
  DiscreteVoxel v(1, Dims{2, 1});
  v.at(0, 0, 0) = static_cast<std::int32_t>(kMaxExactCount);
  v.at(0, 1, 0) = -static_cast<std::int32_t>(kMaxExactCount);
  std::stringstream buf;
  write_voxels(std::vector<DiscreteVoxel>{v}, buf);
  EXPECT_EQ(read_voxels(buf).at(0), v);
}

TEST(VoxelIo, CountsBeyondFloatPrecisionAreRejected) {
  DiscreteVoxel v(1, Dims{1, 1});
  v.at(0, 0, 0) = 1 << 24;
  std::stringstream buf;
  EXPECT_THROW(write_voxels(std::vector<DiscreteVoxel>{v}, buf), DataError);
}

TEST(VoxelIo, CorruptInputIsRejected) {
  std::stringstream buf;
  write_voxels(std::vector<DiscreteVoxel>{numbered(2, Dims{2, 2})}, buf);
  const auto good = buf.str();

  auto bad_magic = good;
  bad_magic[1] = 'Q';
  std::istringstream a(bad_magic);
  EXPECT_THROW(read_voxels(a), DataError);

  std::istringstream b(good.substr(0, good.size() - 1));
  EXPECT_THROW(read_voxels(b), DataError);

  std::istringstream c(good.substr(0, 10));
  EXPECT_THROW(read_voxels(c), DataError);

  auto fractional = good;
  fractional[kVoxelHeaderBytes] = 1;  // low mantissa byte of a whole-number float
  std::istringstream d(fractional);
  EXPECT_THROW(read_voxels(d), DataError);
}

TEST(VoxelIo, InterpolatedValuesRoundToFloat) {
  InterpolatedVoxel v(2, Dims{1, 1});
  v.at(0, 0, 0) = -0.8;
  v.at(1, 0, 0) = -0.2;
  std::stringstream buf;
  write_voxels(std::vector<InterpolatedVoxel>{v}, buf);
  const auto back = read_voxels_real(buf);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].at(0, 0, 0), static_cast<double>(-0.8f));
  EXPECT_EQ(back[0].at(1, 0, 0), static_cast<double>(-0.2f));
}

}  // namespace
}  // namespace v2v
