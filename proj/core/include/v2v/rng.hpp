#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace v2v {

enum class StreamTag : std::uint64_t {
  params = 1,
  init = 2,
  noise = 3,
  crop = 4,
  degrade = 5,
};

const char* to_string(StreamTag tag) noexcept;

/// Identifies one independent random stream. Everything random in the
/// toolkit is a pure function of a key, so results never depend on which
/// worker ran first.
struct RngKey {
  std::uint64_t global_seed = 0;
  std::uint64_t scene_id = 0;
  std::uint64_t epoch = 0;
  StreamTag stream_tag = StreamTag::params;
  std::uint64_t frame_index = 0;

  RngKey with_tag(StreamTag tag) const noexcept {
    RngKey k = *this;
    k.stream_tag = tag;
    return k;
  }
  RngKey with_frame(std::uint64_t frame) const noexcept {
    RngKey k = *this;
    k.frame_index = frame;
    return k;
  }

  friend bool operator==(const RngKey&, const RngKey&) = default;
};

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// splitmix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// FNV-1a, used to turn scene names into 64-bit stream identifiers.
std::uint64_t hash_name(std::string_view name) noexcept;

/// Maps the top 53 bits to a double in [0, 1).
inline double unit_double(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Keyed, stateless generator. `block(i)` is random access; the call
/// operator walks blocks sequentially for code that just wants a stream.
/// Satisfies UniformRandomBitGenerator but callers should use the member
/// draws, since std distributions are not reproducible across libraries.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(const RngKey& key) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  std::array<std::uint64_t, 2> block(std::uint64_t index) const noexcept;

  result_type operator()() noexcept;
  double uniform() noexcept { return unit_double((*this)()); }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Unbiased integer in [0, n). n must be nonzero.
  std::uint64_t below(std::uint64_t n) noexcept;
  double normal() noexcept;

  /// Standard normal drawn from block `index` alone.
  double normal_at(std::uint64_t index) const noexcept;
  /// Uniform [0,1) drawn from block `index` alone.
  double uniform_at(std::uint64_t index) const noexcept { return unit_double(block(index)[0]); }

 private:
  std::array<std::uint32_t, 2> key_{};
  std::uint64_t stream_ = 0;
  std::uint64_t next_block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

CounterRng derive_rng(const RngKey& key) noexcept;

}  // namespace v2v
