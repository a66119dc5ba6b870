#pragma once

#include <array>
#include <cstdint>

namespace micropush {

/// Counter-based Philox4x32-10 block function (Salmon et al., Random123).
/// Stateless: the same (counter, key) always yields the same 128 output bits.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

/// SplitMix64 finalizer, used to derive stream keys.
std::uint64_t splitmix64(std::uint64_t x);

/// Independent random substreams are keyed by (seed, purpose). Adding draws to
/// one purpose never shifts another purpose's sequence.
enum class StreamTag : std::uint64_t {
  Scene = 1,
  Actuation = 2,
  Contact = 3,
  Planner = 4,
};

/// A deterministic stream of random numbers: Philox4x32-10 keyed by
/// splitmix64(seed ^ splitmix64(tag)), consumed block by block.
class RngStream {
 public:
  RngStream() : RngStream(0, StreamTag::Scene) {}
  RngStream(std::uint64_t seed, StreamTag tag);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);

  std::uint64_t seed() const { return seed_; }
  StreamTag tag() const { return tag_; }
  /// Number of 64-bit draws consumed so far.
  std::uint64_t draws() const { return draws_; }

  bool operator==(const RngStream&) const = default;

 private:
  std::uint64_t seed_;
  StreamTag tag_;
  Philox4x32::Key key_{};
  std::uint64_t block_index_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int lane_ = 4;
  std::uint64_t draws_ = 0;
};

}  // namespace micropush
