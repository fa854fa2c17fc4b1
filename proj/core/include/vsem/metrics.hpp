#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vsem/imaging.hpp"

namespace vsem {

/// Occurrences of each grey level.
struct Histogram {
  std::array<std::uint64_t, 256> counts{};

  std::uint64_t total() const noexcept;
  friend bool operator==(const Histogram&, const Histogram&) = default;
};

Histogram histogram(const GrayImage& img) noexcept;

/// Sum over grey levels of |h_enc - h_orig|, divided by 256. Throws
/// InputError when the histograms count different numbers of pixels.
double eq_metric(const Histogram& orig, const Histogram& enc);

enum class Direction { Horizontal, Vertical, Diagonal, AntiDiagonal };

inline constexpr std::array<Direction, 4> kAllDirections{
    Direction::Horizontal, Direction::Vertical, Direction::Diagonal, Direction::AntiDiagonal};

std::string_view direction_name(Direction d) noexcept;

inline constexpr std::size_t kDefaultSampleSize = 1000;

struct PixelPairSample {
  std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs;
  Direction direction = Direction::Horizontal;
  std::uint64_t seed = 0;

  friend bool operator==(const PixelPairSample&, const PixelPairSample&) = default;
};

/// Draws n anchors uniformly with replacement from the positions whose
/// neighbour in the given direction lies inside the image. Neighbour offsets
/// are (+1,0), (0,+1), (+1,+1) and (+1,-1). Throws InputError if no anchor
/// exists.
PixelPairSample sample_adjacent_pairs(const GrayImage& img, std::size_t n, Direction direction,
                                      std::uint64_t seed);

/// Pearson correlation with population (1/N) moments. Throws InputError on
/// an empty sample or zero variance in either coordinate.
double cc_metric(const PixelPairSample& sample);

/// "x,y" header followed by one row per pair.
std::string adjacency_csv(const PixelPairSample& sample);

struct MetricsReport {
  double eq = 0.0;
  std::array<double, 4> cc{};       // encrypted image, indexed like kAllDirections
  std::array<double, 4> cc_orig{};  // original image, same sampling
  std::size_t n = 0;
  std::size_t width = 0;
  std::size_t height = 0;

  double cc_for(Direction d) const noexcept { return cc[static_cast<std::size_t>(d)]; }
};

/// EQ between the two histograms plus four-direction CC on both images. The
/// same sample seed is used for every direction and for both images.
MetricsReport analyze(const GrayImage& orig, const GrayImage& enc,
                      std::size_t n = kDefaultSampleSize, std::uint64_t seed = 1);

/// Flat JSON object with fields eq, cc_h, cc_v, cc_d, cc_ad, n, width,
/// height, plus the orig_* counterparts.
std::string report_json(const MetricsReport& report);

}  // namespace vsem
