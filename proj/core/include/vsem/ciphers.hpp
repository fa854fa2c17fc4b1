#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsem/prng.hpp"

namespace vsem {

using Bytes = std::vector<std::uint8_t>;

// The four byte-buffer transforms. Each is length preserving. Encryption
// applies them in this order; decryption applies the inverses in reverse.
enum class Stage : std::uint8_t {
  Xor = 1U << 0,         // X:  keystream XOR
  Transpose = 1U << 1,   // T:  random pair swaps
  Shift = 1U << 2,       // S:  per-byte rotate then XOR
  Circular = 1U << 3,    // CT: whole-buffer rotation then XOR
};

inline constexpr std::size_t kStageCount = 4;
inline constexpr std::array<Stage, kStageCount> kStageOrder{
    Stage::Xor, Stage::Transpose, Stage::Shift, Stage::Circular};

/// Generator variant each stage draws from.
int stage_variant(Stage stage) noexcept;
/// Index into SeedSet for the stage (0..3).
std::size_t stage_index(Stage stage) noexcept;
std::string_view stage_name(Stage stage) noexcept;

/// Selected subset of stages. Always non-empty.
class ChainSpec {
 public:
  /// Throws ConfigError for 0 or bits above bit 3.
  explicit ChainSpec(std::uint8_t mask);

  static ChainSpec full() { return ChainSpec(0x0F); }
  static ChainSpec only(Stage stage) { return ChainSpec(static_cast<std::uint8_t>(stage)); }

  /// Comma-separated stage names: "x", "t", "s", "ct", or "all".
  static ChainSpec parse(std::string_view text);

  std::uint8_t mask() const noexcept { return mask_; }
  bool has(Stage stage) const noexcept {
    return (mask_ & static_cast<std::uint8_t>(stage)) != 0;
  }
  std::string to_string() const;

  friend bool operator==(ChainSpec, ChainSpec) = default;

 private:
  std::uint8_t mask_;
};

// In-place transforms driven by a caller-owned generator. The generator
// state advances, which lets a caller continue a keystream across blocks.

void xor_stream(std::span<std::uint8_t> buf, XorShift& gen) noexcept;

/// Random perfect partial matching over positions, swapping each matched
/// pair. The result is a product of disjoint transpositions and therefore
/// its own inverse under the same generator state. One draw per position
/// that is still unmatched when visited; probing never draws.
void swap_transpose(std::span<std::uint8_t> buf, XorShift& gen) noexcept;

void shift_encrypt(std::span<std::uint8_t> buf, XorShift& gen) noexcept;
void shift_decrypt(std::span<std::uint8_t> buf, XorShift& gen) noexcept;

/// Rotates the buffer right by one drawn offset, then XORs every byte with
/// the same generator's stream. Empty buffers consume no draws.
void circular_encrypt(std::span<std::uint8_t> buf, XorShift& gen);
void circular_decrypt(std::span<std::uint8_t> buf, XorShift& gen);

// Seeded value forms, each with a fresh generator of the stage's variant.
Bytes xor_stream(Bytes buf, std::uint64_t seed);
Bytes swap_transpose(Bytes buf, std::uint64_t seed);
Bytes shift_encrypt(Bytes buf, std::uint64_t seed);
Bytes shift_decrypt(Bytes buf, std::uint64_t seed);
Bytes circular_encrypt(Bytes buf, std::uint64_t seed);
Bytes circular_decrypt(Bytes buf, std::uint64_t seed);

inline constexpr std::size_t kDefaultBlockSize = std::size_t{4} << 20;

struct PipelineOptions {
  /// Buffers longer than this are processed as consecutive blocks, each
  /// passing through the whole chain. 0 disables blocking.
  std::size_t block_size = kDefaultBlockSize;
};

Bytes encrypt_pipeline(Bytes buf, std::string_view password, ChainSpec chain,
                       PipelineOptions options = {});
Bytes decrypt_pipeline(Bytes buf, std::string_view password, ChainSpec chain,
                       PipelineOptions options = {});

}  // namespace vsem
