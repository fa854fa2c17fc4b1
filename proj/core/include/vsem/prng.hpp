#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <span>
#include <string_view>

#include "vsem/error.hpp"

namespace vsem {

// Substituted for a zero seed; zero is a fixed point of every xorshift map.
inline constexpr std::uint64_t kZeroSeedFallback = 0x9E3779B97F4A7C15ULL;

struct ShiftTriple {
  int left_a;
  int right_b;
  int left_c;
};

// Full-period 64-bit xorshift triples, applied as x ^= x << a; x ^= x >> b;
// x ^= x << c. Variant 1 is the classic (13, 7, 17).
inline constexpr std::array<ShiftTriple, 3> kShiftTriples{{
    {13, 7, 17},
    {21, 35, 4},
    {12, 25, 27},
}};

/// 64-bit xorshift generator. Three variants differ only in their shift
/// triple. Not cryptographically secure.
///
/// The generator counts its own draws so callers can verify how many values
/// an algorithm consumed.
class XorShift {
 public:
  using result_type = std::uint64_t;

  /// Throws ConfigError unless variant_id is 1, 2 or 3.
  XorShift(int variant_id, std::uint64_t seed);

  result_type next() noexcept {
    const ShiftTriple& t = kShiftTriples[static_cast<std::size_t>(variant_ - 1)];
    state_ ^= state_ << t.left_a;
    state_ ^= state_ >> t.right_b;
    state_ ^= state_ << t.left_c;
    ++draws_;
    return state_;
  }

  result_type operator()() noexcept { return next(); }

  static constexpr result_type min() noexcept { return 1; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  int variant() const noexcept { return variant_; }
  std::uint64_t state() const noexcept { return state_; }
  std::uint64_t draws() const noexcept { return draws_; }

 private:
  int variant_;
  std::uint64_t state_;
  std::uint64_t draws_ = 0;
};

template <typename G>
concept WordSource = requires(G& g) {
  { g.next() } -> std::same_as<std::uint64_t>;
};

/// Inclusive [lo, hi] draw: lo + next() mod (hi - lo + 1). Exactly one
/// next() per call. No rejection sampling, so the result carries a small
/// modulo bias for range sizes that do not divide 2^64.
template <WordSource G>
std::int64_t draw_range(G& gen, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) {
    throw RangeError("draw_range: lo > hi");
  }
  const std::uint64_t word = gen.next();
  const std::uint64_t span =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  const std::uint64_t offset = span == 0 ? word : word % span;
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + offset);
}

/// Four per-stage seeds derived from a password.
struct SeedSet {
  std::uint64_t s1;
  std::uint64_t s2;
  std::uint64_t s3;
  std::uint64_t s4;

  std::uint64_t operator[](std::size_t k) const noexcept {
    const std::array<std::uint64_t, 4> v{s1, s2, s3, s4};
    return v[k];
  }

  friend bool operator==(const SeedSet&, const SeedSet&) = default;
};

// Per-stage base values; the first is the published 0xCAFEBDCDE.
inline constexpr std::array<std::uint64_t, 4> kSeedBases{
    0xCAFEBDCDEULL,
    0xCAFEBDCDEULL + 0x1111111111ULL,
    0xCAFEBDCDEULL + 2 * 0x1111111111ULL,
    0xCAFEBDCDEULL + 3 * 0x1111111111ULL,
};

// Added to the base in place of the fold when a password part is empty.
inline constexpr std::array<std::uint64_t, 4> kEmptyPartPads{
    0x9E3779B9ULL,
    0x7F4A7C15ULL,
    0x85EBCA6BULL,
    0xC2B2AE35ULL,
};

/// Order-sensitive fold of one password part: p = p * 31 + byte, wrapping.
std::uint64_t fold_part(std::span<const std::uint8_t> part) noexcept;

/// Splits the password into four contiguous parts of ceil(len / 4) bytes
/// (the tail parts may be short or empty) and offsets each stage base by
/// the fold of its part.
SeedSet derive_seeds(std::span<const std::uint8_t> password) noexcept;
SeedSet derive_seeds(std::string_view password) noexcept;

}  // namespace vsem
