#pragma once

#include <array>
#include <cstdint>

namespace wls {

/// Identifies the generator and the transforms layered on top of it. Bump it
/// whenever any of them changes, since simulated datasets change with it.
inline constexpr const char* kRngVersion = "philox4x32-10+box-muller/v1";

/// The Philox4x32-10 counter-based block cipher (Salmon et al., SC'11).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter encrypt(Counter ctr, Key key) noexcept;
};

/// Sequential stream over Philox blocks. The 64-bit seed is the key; the
/// 64-bit stream id occupies the upper half of the counter, so every
/// (seed, stream) pair is an independent sequence of 2^64 blocks.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint32_t next_u32() noexcept;

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Standard normal via the Box-Muller transform; both outputs are used.
  double normal() noexcept;

 private:
  Philox4x32::Key key_;
  std::uint64_t block_ = 0;
  std::uint64_t stream_;
  Philox4x32::Counter buffer_{};
  int used_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Stream ids used by the simulator, combined with the replicate index.
enum class StreamTag : std::uint64_t { Design = 1, Rotation = 2, Noise = 3 };

constexpr std::uint64_t stream_id(std::uint64_t replicate, StreamTag tag) noexcept {
  return (replicate << 8) | static_cast<std::uint64_t>(tag);
}

/// Stream for draws shared by all replicates of a scenario.
constexpr std::uint64_t shared_stream_id(StreamTag tag) noexcept {
  return (~std::uint64_t{0} << 8) | static_cast<std::uint64_t>(tag);
}

}  // namespace wls
