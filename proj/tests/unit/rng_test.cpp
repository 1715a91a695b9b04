#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "v2v/rng.hpp"

namespace v2v {
namespace {

TEST(Philox, KnownAnswerVectors) {
  // Random123 kat_vectors for philox4x32-10.
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}),
            (std::array<std::uint32_t, 4>{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (std::array<std::uint32_t, 4>{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (std::array<std::uint32_t, 4>{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(DeriveRng, SameKeyGivesIdenticalDraws) {
  const RngKey key{42, 7, 3, StreamTag::noise, 11};
  auto a = derive_rng(key);
  auto b = derive_rng(key);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a(), b()) << "draw " << i;
}

TEST(DeriveRng, EpochChangesStream) {
  const RngKey key{42, 7, 3, StreamTag::params, 0};
  auto a = derive_rng(key);
  RngKey other = key;
  other.epoch = 4;
  auto b = derive_rng(other);
  int equal = 0;
  for (int i = 0; i < 1000; ++i) equal += a() == b();
  EXPECT_EQ(equal, 0);
}

TEST(DeriveRng, EveryKeyFieldMatters) {
  const RngKey base{1, 2, 3, StreamTag::init, 5};
  const std::uint64_t first = derive_rng(base)();
  RngKey k = base;
  k.global_seed = 9;
  EXPECT_NE(derive_rng(k)(), first);
  k = base;
  k.scene_id = 9;
  EXPECT_NE(derive_rng(k)(), first);
  EXPECT_NE(derive_rng(base.with_tag(StreamTag::crop))(), first);
  EXPECT_NE(derive_rng(base.with_frame(6))(), first);
}

// Pairs (a_i, b_i) from two keys differing only in frame_index, bucketed on a
// 10x10 grid. Under independence every cell expects 100 of 10^4 pairs; the
// statistic has 99 degrees of freedom, whose 0.999 quantile is 148.23.
TEST(DeriveRng, FrameIndexStreamsPassChiSquareIndependence) {
  const RngKey key{2024, 17, 0, StreamTag::noise, 1};
  auto a = derive_rng(key);
  auto b = derive_rng(key.with_frame(2));
  std::array<int, 100> cells{};
  constexpr int kDraws = 10000;
  for (int i = 0; i < kDraws; ++i) {
    const int x = static_cast<int>(a.uniform() * 10.0);
    const int y = static_cast<int>(b.uniform() * 10.0);
    ++cells[static_cast<std::size_t>(10 * x + y)];
  }
  double chi2 = 0.0;
  for (const int c : cells) chi2 += (c - 100.0) * (c - 100.0) / 100.0;
  EXPECT_LT(chi2, 148.23);
}

TEST(CounterRng, RandomAccessMatchesSequentialBlocks) {
  const RngKey key{5, 6, 7, StreamTag::noise, 8};
  CounterRng seq(key);
  const CounterRng ra(key);
  for (std::uint64_t blk = 0; blk < 50; ++blk) {
    const auto words = ra.block(blk);
    EXPECT_EQ(seq(), words[0]);
    EXPECT_EQ(seq(), words[1]);
  }
}

TEST(CounterRng, BelowStaysInRangeAndCoversIt) {
  CounterRng rng({1, 1, 1, StreamTag::crop, 0});
  std::array<int, 7> hits{};
  for (int i = 0; i < 7000; ++i) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    ++hits[v];
  }
  for (const int h : hits) EXPECT_GT(h, 850);
  EXPECT_EQ(rng.below(1), 0u);
}

TEST(CounterRng, NormalMomentsAreStandard) {
  const CounterRng rng({3, 3, 3, StreamTag::noise, 3});
  constexpr int kN = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < kN; ++i) {
    const double z = rng.normal_at(static_cast<std::uint64_t>(i));
    sum += z;
    sq += z * z;
  }
  const double mean = sum / kN;
  const double var = sq / kN - mean * mean;
  EXPECT_NEAR(mean, 0.0, 4.0 / std::sqrt(kN));
  EXPECT_NEAR(var, 1.0, 0.02);
}

TEST(CounterRng, UniformIsHalfOpen) {
  EXPECT_EQ(unit_double(0), 0.0);
  EXPECT_LT(unit_double(~std::uint64_t{0}), 1.0);
}

TEST(HashName, IsStableFnv1a) {
  EXPECT_EQ(hash_name(""), 0xCBF29CE484222325ULL);
  EXPECT_EQ(hash_name("a"), 0xAF63DC4C8601EC8CULL);
  EXPECT_NE(hash_name("scene_a"), hash_name("scene_b"));
}

}  // namespace
}  // namespace v2v
