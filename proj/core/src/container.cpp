#include "vsem/container.hpp"

#include <algorithm>

namespace vsem {

bool looks_like_container(std::span<const std::uint8_t> bytes) noexcept {
  return bytes.size() >= kContainerMagic.size() &&
         std::equal(kContainerMagic.begin(), kContainerMagic.end(), bytes.begin());
}

ContainerHeader parse_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= kContainerMagic.size() && !looks_like_container(bytes)) {
    throw FormatError("not a VSEM container");
  }
  if (bytes.size() < kHeaderSize) {
    throw FormatError("truncated container: " + std::to_string(bytes.size()) +
                      " bytes, header needs " + std::to_string(kHeaderSize));
  }
  if (bytes[4] != kContainerVersion) {
    throw FormatError("unsupported container version " + std::to_string(bytes[4]));
  }
  const std::uint8_t mask = bytes[5];
  if (mask == 0 || (mask & ~0x0FU) != 0) {
    throw FormatError("invalid chain bitmask " + std::to_string(mask));
  }
  ContainerHeader header{bytes[4], ChainSpec(mask), {}};
  std::copy_n(bytes.begin() + 6, 8, header.check_block.begin());
  return header;
}

std::array<std::uint8_t, 8> make_check_block(std::string_view password, ChainSpec chain) {
  Bytes block(kCheckPlaintext.begin(), kCheckPlaintext.end());
  block = encrypt_pipeline(std::move(block), password, chain);
  std::array<std::uint8_t, 8> out{};
  std::copy(block.begin(), block.end(), out.begin());
  return out;
}

bool password_matches(const ContainerHeader& header, std::string_view password) {
  return make_check_block(password, header.chain) == header.check_block;
}

Bytes seal(std::span<const std::uint8_t> plaintext, std::string_view password,
           ChainSpec chain, PipelineOptions options) {
  Bytes out;
  out.reserve(kHeaderSize + plaintext.size());
  out.insert(out.end(), kContainerMagic.begin(), kContainerMagic.end());
  out.push_back(kContainerVersion);
  out.push_back(chain.mask());
  const auto check = make_check_block(password, chain);
  out.insert(out.end(), check.begin(), check.end());
  Bytes payload = encrypt_pipeline(Bytes(plaintext.begin(), plaintext.end()), password,
                                   chain, options);
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

Bytes unseal(std::span<const std::uint8_t> container, std::string_view password,
             PipelineOptions options) {
  const ContainerHeader header = parse_header(container);
  if (!password_matches(header, password)) {
    throw AuthError("wrong password or corrupted");
  }
  return decrypt_pipeline(Bytes(container.begin() + kHeaderSize, container.end()), password,
                          header.chain, options);
}

}  // namespace vsem
