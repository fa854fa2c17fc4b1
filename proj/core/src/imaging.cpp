#include "vsem/imaging.hpp"

#include <cctype>
#include <string>

#include "vsem/error.hpp"

namespace vsem {

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width == 0 || height == 0) {
    throw InputError("image dimensions must be positive");
  }
  if (pixels_.size() / width != height || pixels_.size() % width != 0) {
    throw InputError("pixel count " + std::to_string(pixels_.size()) + " does not match " +
                     std::to_string(width) + "x" + std::to_string(height));
  }
}

GrayImage::GrayImage(std::size_t width, std::size_t height)
    : GrayImage(width, height, std::vector<std::uint8_t>(width * height, 0)) {}

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> content) : content_(content) {}

  std::size_t pos() const noexcept { return pos_; }

  void skip_whitespace_and_comments() {
    while (pos_ < content_.size()) {
      const auto c = static_cast<unsigned char>(content_[pos_]);
      if (c == '#') {
        while (pos_ < content_.size() && content_[pos_] != '\n' && content_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  std::size_t read_number(const char* field) {
    skip_whitespace_and_comments();
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < content_.size() && std::isdigit(static_cast<unsigned char>(content_[pos_]))) {
      value = value * 10 + (content_[pos_] - '0');
      if (value > (std::size_t{1} << 31)) {
        throw ParseError(std::string("PGM ") + field + " too large", start);
      }
      ++pos_;
    }
    if (pos_ == start) {
      throw ParseError(std::string("PGM header: expected ") + field, start);
    }
    return value;
  }

  void expect_single_whitespace() {
    if (pos_ >= content_.size() || !std::isspace(static_cast<unsigned char>(content_[pos_]))) {
      throw ParseError("PGM header: expected whitespace after maxval", pos_);
    }
    ++pos_;
  }

 private:
  std::span<const std::uint8_t> content_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage read_pgm(std::span<const std::uint8_t> content) {
  if (content.size() < 2 || content[0] != 'P' || content[1] != '5') {
    throw ParseError("not a binary PGM (expected magic P5)", 0);
  }
  HeaderReader reader(content.subspan(2));
  const std::size_t width = reader.read_number("width");
  const std::size_t height = reader.read_number("height");
  const std::size_t maxval_at = reader.pos() + 2;
  const std::size_t maxval = reader.read_number("maxval");
  if (width == 0 || height == 0) {
    throw ParseError("PGM dimensions must be positive", 2);
  }
  if (maxval != 255) {
    throw ParseError("unsupported PGM maxval " + std::to_string(maxval) + " (only 255)",
                     maxval_at);
  }
  reader.expect_single_whitespace();
  const std::size_t data_at = reader.pos() + 2;
  const std::size_t need = width * height;
  if (content.size() - data_at < need) {
    throw ParseError("truncated PGM pixel data: need " + std::to_string(need) + " bytes, have " +
                         std::to_string(content.size() - data_at),
                     content.size());
  }
  const auto data = content.subspan(data_at, need);
  return GrayImage(width, height, std::vector<std::uint8_t>(data.begin(), data.end()));
}

Bytes write_pgm(const GrayImage& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  Bytes out(header.begin(), header.end());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

Bytes image_as_bytes(const GrayImage& img) {
  return Bytes(img.pixels().begin(), img.pixels().end());
}

GrayImage bytes_as_image(std::span<const std::uint8_t> buf, std::size_t width,
                         std::size_t height) {
  if (width == 0 || height == 0 || buf.size() != width * height) {
    throw InputError("buffer of " + std::to_string(buf.size()) + " bytes cannot be viewed as " +
                     std::to_string(width) + "x" + std::to_string(height));
  }
  return GrayImage(width, height, std::vector<std::uint8_t>(buf.begin(), buf.end()));
}

}  // namespace vsem
