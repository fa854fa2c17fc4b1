#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vsem/ciphers.hpp"

namespace vsem {

/// 8-bit grayscale image, row-major.
class GrayImage {
 public:
  /// Throws InputError when either dimension is zero or the pixel count
  /// does not equal width * height.
  GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels);
  GrayImage(std::size_t width, std::size_t height);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }

  std::uint8_t at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
  std::uint8_t& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> pixels_;
};

/// Binary PGM ("P5") with maxval 255. Header comments and any whitespace
/// are accepted; bytes after the pixel data are ignored.
GrayImage read_pgm(std::span<const std::uint8_t> content);

/// Canonical form: "P5\n<w> <h>\n255\n" followed by the pixels.
Bytes write_pgm(const GrayImage& img);

Bytes image_as_bytes(const GrayImage& img);
GrayImage bytes_as_image(std::span<const std::uint8_t> buf, std::size_t width,
                         std::size_t height);

}  // namespace vsem
