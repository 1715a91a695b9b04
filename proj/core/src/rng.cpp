#include "v2v/rng.hpp"

#include <cmath>
#include <numbers>

namespace v2v {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(product);
  hi = static_cast<std::uint32_t>(product >> 32);
}

std::uint64_t chain(std::uint64_t salt, const RngKey& key) noexcept {
  std::uint64_t h = mix64(salt);
  h = mix64(h ^ key.global_seed);
  h = mix64(h ^ key.scene_id);
  h = mix64(h ^ key.epoch);
  h = mix64(h ^ static_cast<std::uint64_t>(key.stream_tag));
  h = mix64(h ^ key.frame_index);
  return h;
}

}  // namespace

const char* to_string(StreamTag tag) noexcept {
  switch (tag) {
    case StreamTag::params: return "params";
    case StreamTag::init: return "init";
    case StreamTag::noise: return "noise";
    case StreamTag::crop: return "crop";
    case StreamTag::degrade: return "degrade";
  }
  return "unknown";
}

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kMul0, ctr[0], lo0, hi0);
    mulhilo(kMul1, ctr[2], lo1, hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_name(std::string_view name) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

CounterRng::CounterRng(const RngKey& key) noexcept {
  const std::uint64_t k = chain(0x6B657900ULL, key);
  key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  stream_ = chain(0x73747200ULL, key);
}

std::array<std::uint64_t, 2> CounterRng::block(std::uint64_t index) const noexcept {
  const auto out = philox4x32({static_cast<std::uint32_t>(index),
                               static_cast<std::uint32_t>(index >> 32),
                               static_cast<std::uint32_t>(stream_),
                               static_cast<std::uint32_t>(stream_ >> 32)},
                              key_);
  return {static_cast<std::uint64_t>(out[0]) | (static_cast<std::uint64_t>(out[1]) << 32),
          static_cast<std::uint64_t>(out[2]) | (static_cast<std::uint64_t>(out[3]) << 32)};
}

CounterRng::result_type CounterRng::operator()() noexcept {
  if (buffered_ == 0) {
    buffer_ = block(next_block_++);
    buffered_ = 2;
  }
  return buffer_[2 - buffered_--];
}

std::uint64_t CounterRng::below(std::uint64_t n) noexcept {
  // Reject the low 2^64 mod n values so the remainder is unbiased.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = (*this)();
    if (r >= threshold) return r % n;
  }
}

namespace {
double box_muller(std::uint64_t a, std::uint64_t b) noexcept {
  const double u1 = 1.0 - unit_double(a);  // (0, 1]
  const double u2 = unit_double(b);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}
}  // namespace

double CounterRng::normal() noexcept {
  const std::uint64_t a = (*this)();
  const std::uint64_t b = (*this)();
  return box_muller(a, b);
}

double CounterRng::normal_at(std::uint64_t index) const noexcept {
  const auto words = block(index);
  return box_muller(words[0], words[1]);
}

CounterRng derive_rng(const RngKey& key) noexcept { return CounterRng(key); }

}  // namespace v2v
