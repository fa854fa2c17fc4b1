#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "vsem/ciphers.hpp"

namespace vsem {

// Layout (all offsets in bytes):
//   0..3   magic "VSEM"
//   4      version, 0x01
//   5      chain bitmask (bit0 X, bit1 T, bit2 S, bit3 CT)
//   6..13  "VSEMCHK\0" encrypted on its own with the selected chain
//   14..   payload ciphertext
inline constexpr std::array<std::uint8_t, 4> kContainerMagic{'V', 'S', 'E', 'M'};
inline constexpr std::uint8_t kContainerVersion = 0x01;
inline constexpr std::array<std::uint8_t, 8> kCheckPlaintext{'V', 'S', 'E', 'M',
                                                             'C', 'H', 'K', '\0'};
inline constexpr std::size_t kHeaderSize = 14;

struct ContainerHeader {
  std::uint8_t version;
  ChainSpec chain;
  std::array<std::uint8_t, 8> check_block;
};

/// True if the bytes start with the container magic.
bool looks_like_container(std::span<const std::uint8_t> bytes) noexcept;

/// Throws FormatError on short input, wrong magic, unknown version or an
/// invalid chain bitmask.
ContainerHeader parse_header(std::span<const std::uint8_t> bytes);

std::array<std::uint8_t, 8> make_check_block(std::string_view password, ChainSpec chain);

bool password_matches(const ContainerHeader& header, std::string_view password);

Bytes seal(std::span<const std::uint8_t> plaintext, std::string_view password,
           ChainSpec chain, PipelineOptions options = {});

/// Throws FormatError / AuthError ("wrong password or corrupted").
Bytes unseal(std::span<const std::uint8_t> container, std::string_view password,
             PipelineOptions options = {});

}  // namespace vsem
