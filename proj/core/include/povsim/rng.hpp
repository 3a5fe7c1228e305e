#pragma once

#include <cstddef>
#include <cstdint>

namespace povsim {

/// splitmix64 output finalizer (Stafford variant 13). A bijection on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// Portable deterministic generator: splitmix64 with a 64-bit Weyl state.
///
///   next():    state += 0x9e3779b97f4a7c15; return mix64(state)
///   uniform(): (next() >> 11) * 2^-53, in [0, 1)
///
/// The whole sequence is a pure function of the initial state, so any
/// reimplementation of the three lines above reproduces it bit for bit.
class RngStream {
public:
  explicit constexpr RngStream(std::uint64_t state) noexcept : state_(state) {}

  constexpr std::uint64_t next_u64() noexcept {
    state_ += kGoldenGamma;
    ++draws_;
    return mix64(state_);
  }

  constexpr double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// u < p. p = 0 never fires, p = 1 always fires.
  constexpr bool bernoulli(double p) noexcept { return uniform() < p; }

  /// floor(u * n) for n >= 1; result in [0, n).
  constexpr std::size_t below(std::size_t n) noexcept {
    const auto j = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return j < n ? j : n - 1; // u * n can round up to n for huge n
  }

  /// Skip `n` draws. The generator is a counter, so this is O(1).
  constexpr void discard(std::uint64_t n) noexcept {
    state_ += kGoldenGamma * n;
    draws_ += n;
  }

  constexpr std::uint64_t state() const noexcept { return state_; }
  /// Number of 64-bit draws consumed since construction.
  constexpr std::uint64_t draws() const noexcept { return draws_; }

private:
  std::uint64_t state_;
  std::uint64_t draws_ = 0;
};

/// Initial state for run `run_index` of the family keyed by `base_seed`:
///
///   mix64(base_seed ^ mix64(run_index + 0x9e3779b97f4a7c15))
///
/// Distinct run indices always give distinct initial states because mix64
/// is a bijection.
constexpr std::uint64_t stream_seed(std::uint64_t base_seed,
                                    std::uint64_t run_index) noexcept {
  return mix64(base_seed ^ mix64(run_index + kGoldenGamma));
}

constexpr RngStream derive_stream(std::uint64_t base_seed,
                                  std::uint64_t run_index) noexcept {
  return RngStream(stream_seed(base_seed, run_index));
}

} // namespace povsim
