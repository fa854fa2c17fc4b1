#include "vsem/ciphers.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace vsem {

int stage_variant(Stage stage) noexcept {
  switch (stage) {
    case Stage::Xor:
    case Stage::Shift:
      return 1;
    case Stage::Transpose:
    case Stage::Circular:
      return 3;
  }
  return 1;
}

std::size_t stage_index(Stage stage) noexcept {
  return static_cast<std::size_t>(std::countr_zero(static_cast<unsigned>(stage)));
}

std::string_view stage_name(Stage stage) noexcept {
  switch (stage) {
    case Stage::Xor:
      return "x";
    case Stage::Transpose:
      return "t";
    case Stage::Shift:
      return "s";
    case Stage::Circular:
      return "ct";
  }
  return "?";
}

ChainSpec::ChainSpec(std::uint8_t mask) : mask_(mask) {
  if (mask == 0 || (mask & ~0x0FU) != 0) {
    throw ConfigError("chain mask must select at least one of the four stages");
  }
}

ChainSpec ChainSpec::parse(std::string_view text) {
  std::uint8_t mask = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string token(text.substr(pos, comma - pos));
    std::transform(token.begin(), token.end(), token.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (token == "all") {
      mask |= 0x0F;
    } else {
      bool matched = false;
      for (Stage s : kStageOrder) {
        if (token == stage_name(s)) {
          mask |= static_cast<std::uint8_t>(s);
          matched = true;
        }
      }
      if (!matched) {
        throw ConfigError("unknown chain stage '" + token + "' (expected x, t, s, ct or all)");
      }
    }
    pos = comma + 1;
  }
  return ChainSpec(mask);
}

std::string ChainSpec::to_string() const {
  std::string out;
  for (Stage s : kStageOrder) {
    if (has(s)) {
      if (!out.empty()) out += ',';
      out += stage_name(s);
    }
  }
  return out;
}

void xor_stream(std::span<std::uint8_t> buf, XorShift& gen) noexcept {
  for (std::uint8_t& b : buf) {
    b ^= static_cast<std::uint8_t>(gen.next());
  }
}

void swap_transpose(std::span<std::uint8_t> buf, XorShift& gen) noexcept {
  const std::size_t len = buf.size();
  if (len < 2) return;
  std::vector<bool> available(len, true);
  const auto last = static_cast<std::int64_t>(len - 1);
  for (std::size_t i = 0; i + 1 < len; ++i) {
    if (!available[i]) continue;
    auto ip = static_cast<std::size_t>(draw_range(gen, static_cast<std::int64_t>(i) + 1, last));
    if (!available[ip]) {
      std::size_t probe = ip + 1;
      while (probe < len && !available[probe]) ++probe;
      if (probe == len) {
        probe = ip - 1;
        while (probe > i && !available[probe]) --probe;
        if (probe <= i) break;
      }
      ip = probe;
    }
    std::swap(buf[i], buf[ip]);
    available[ip] = false;
  }
}

void shift_encrypt(std::span<std::uint8_t> buf, XorShift& gen) noexcept {
  for (std::uint8_t& b : buf) {
    const auto mask = static_cast<std::uint8_t>(draw_range(gen, 0, 255));
    const auto rot = static_cast<int>(draw_range(gen, 0, 7));
    b = static_cast<std::uint8_t>(std::rotr(b, rot) ^ mask);
  }
}

void shift_decrypt(std::span<std::uint8_t> buf, XorShift& gen) noexcept {
  for (std::uint8_t& b : buf) {
    const auto mask = static_cast<std::uint8_t>(draw_range(gen, 0, 255));
    const auto rot = static_cast<int>(draw_range(gen, 0, 7));
    b = std::rotl(static_cast<std::uint8_t>(b ^ mask), rot);
  }
}

void circular_encrypt(std::span<std::uint8_t> buf, XorShift& gen) {
  const std::size_t len = buf.size();
  if (len == 0) return;
  const auto offset =
      static_cast<std::size_t>(draw_range(gen, 0, static_cast<std::int64_t>(len) - 1));
  // Byte at index i moves to (i + offset) mod len.
  std::rotate(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(len - offset), buf.end());
  for (std::uint8_t& b : buf) {
    b ^= static_cast<std::uint8_t>(draw_range(gen, 0, 255));
  }
}

void circular_decrypt(std::span<std::uint8_t> buf, XorShift& gen) {
  const std::size_t len = buf.size();
  if (len == 0) return;
  const auto offset =
      static_cast<std::size_t>(draw_range(gen, 0, static_cast<std::int64_t>(len) - 1));
  for (std::uint8_t& b : buf) {
    b ^= static_cast<std::uint8_t>(draw_range(gen, 0, 255));
  }
  std::rotate(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(offset), buf.end());
}

Bytes xor_stream(Bytes buf, std::uint64_t seed) {
  XorShift gen(stage_variant(Stage::Xor), seed);
  xor_stream(buf, gen);
  return buf;
}

Bytes swap_transpose(Bytes buf, std::uint64_t seed) {
  XorShift gen(stage_variant(Stage::Transpose), seed);
  swap_transpose(buf, gen);
  return buf;
}

Bytes shift_encrypt(Bytes buf, std::uint64_t seed) {
  XorShift gen(stage_variant(Stage::Shift), seed);
  shift_encrypt(buf, gen);
  return buf;
}

Bytes shift_decrypt(Bytes buf, std::uint64_t seed) {
  XorShift gen(stage_variant(Stage::Shift), seed);
  shift_decrypt(buf, gen);
  return buf;
}

Bytes circular_encrypt(Bytes buf, std::uint64_t seed) {
  XorShift gen(stage_variant(Stage::Circular), seed);
  circular_encrypt(buf, gen);
  return buf;
}

Bytes circular_decrypt(Bytes buf, std::uint64_t seed) {
  XorShift gen(stage_variant(Stage::Circular), seed);
  circular_decrypt(buf, gen);
  return buf;
}

namespace {

struct StageGenerators {
  std::array<XorShift, kStageCount> gens;

  explicit StageGenerators(const SeedSet& seeds)
      : gens{XorShift(stage_variant(Stage::Xor), seeds.s1),
             XorShift(stage_variant(Stage::Transpose), seeds.s2),
             XorShift(stage_variant(Stage::Shift), seeds.s3),
             XorShift(stage_variant(Stage::Circular), seeds.s4)} {}

  XorShift& operator[](Stage s) { return gens[stage_index(s)]; }
};

template <typename BlockFn>
void for_each_block(std::span<std::uint8_t> buf, std::size_t block_size, BlockFn&& fn) {
  if (block_size == 0 || buf.size() <= block_size) {
    fn(buf);
    return;
  }
  for (std::size_t off = 0; off < buf.size(); off += block_size) {
    fn(buf.subspan(off, std::min(block_size, buf.size() - off)));
  }
}

}  // namespace

Bytes encrypt_pipeline(Bytes buf, std::string_view password, ChainSpec chain,
                       PipelineOptions options) {
  StageGenerators gens(derive_seeds(password));
  for_each_block(buf, options.block_size, [&](std::span<std::uint8_t> block) {
    if (chain.has(Stage::Xor)) xor_stream(block, gens[Stage::Xor]);
    if (chain.has(Stage::Transpose)) swap_transpose(block, gens[Stage::Transpose]);
    if (chain.has(Stage::Shift)) shift_encrypt(block, gens[Stage::Shift]);
    if (chain.has(Stage::Circular)) circular_encrypt(block, gens[Stage::Circular]);
  });
  return buf;
}

Bytes decrypt_pipeline(Bytes buf, std::string_view password, ChainSpec chain,
                       PipelineOptions options) {
  StageGenerators gens(derive_seeds(password));
  for_each_block(buf, options.block_size, [&](std::span<std::uint8_t> block) {
    if (chain.has(Stage::Circular)) circular_decrypt(block, gens[Stage::Circular]);
    if (chain.has(Stage::Shift)) shift_decrypt(block, gens[Stage::Shift]);
    if (chain.has(Stage::Transpose)) swap_transpose(block, gens[Stage::Transpose]);
    if (chain.has(Stage::Xor)) xor_stream(block, gens[Stage::Xor]);
  });
  return buf;
}

}  // namespace vsem
