#include "vsem/prng.hpp"

#include <algorithm>

namespace vsem {

XorShift::XorShift(int variant_id, std::uint64_t seed)
    : variant_(variant_id), state_(seed == 0 ? kZeroSeedFallback : seed) {
  if (variant_id < 1 || variant_id > static_cast<int>(kShiftTriples.size())) {
    throw ConfigError("xorshift variant must be 1, 2 or 3, got " +
                      std::to_string(variant_id));
  }
}

std::uint64_t fold_part(std::span<const std::uint8_t> part) noexcept {
  std::uint64_t p = 0;
  for (std::uint8_t b : part) {
    p = p * 31 + b;
  }
  return p;
}

SeedSet derive_seeds(std::span<const std::uint8_t> password) noexcept {
  const std::size_t len = password.size();
  const std::size_t chunk = (len + 3) / 4;
  std::array<std::uint64_t, 4> seeds{};
  for (std::size_t k = 0; k < 4; ++k) {
    const std::size_t begin = std::min(len, k * chunk);
    const std::size_t end = std::min(len, begin + chunk);
    const std::uint64_t p =
        begin == end ? kEmptyPartPads[k] : fold_part(password.subspan(begin, end - begin));
    seeds[k] = kSeedBases[k] + p;
    if (seeds[k] == 0) {
      seeds[k] = kZeroSeedFallback;
    }
  }
  return {seeds[0], seeds[1], seeds[2], seeds[3]};
}

SeedSet derive_seeds(std::string_view password) noexcept {
  return derive_seeds(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(password.data()), password.size()));
}

}  // namespace vsem
