#include "vsem/metrics.hpp"

#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "vsem/error.hpp"
#include "vsem/prng.hpp"

namespace vsem {

std::uint64_t Histogram::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Histogram histogram(const GrayImage& img) noexcept {
  Histogram h;
  for (std::uint8_t v : img.pixels()) {
    ++h.counts[v];
  }
  return h;
}

double eq_metric(const Histogram& orig, const Histogram& enc) {
  if (orig.total() != enc.total()) {
    throw InputError("EQ needs histograms of equal pixel count (" +
                     std::to_string(orig.total()) + " vs " + std::to_string(enc.total()) + ")");
  }
  std::uint64_t sum = 0;
  for (std::size_t level = 0; level < 256; ++level) {
    const std::uint64_t a = orig.counts[level];
    const std::uint64_t b = enc.counts[level];
    sum += a > b ? a - b : b - a;
  }
  return static_cast<double>(sum) / 256.0;
}

std::string_view direction_name(Direction d) noexcept {
  switch (d) {
    case Direction::Horizontal:
      return "h";
    case Direction::Vertical:
      return "v";
    case Direction::Diagonal:
      return "d";
    case Direction::AntiDiagonal:
      return "ad";
  }
  return "?";
}

PixelPairSample sample_adjacent_pairs(const GrayImage& img, std::size_t n, Direction direction,
                                      std::uint64_t seed) {
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  const bool steps_x = direction != Direction::Vertical;
  const bool steps_y = direction != Direction::Horizontal;
  const std::size_t cols = steps_x ? w - 1 : w;
  const std::size_t rows = steps_y ? h - 1 : h;
  if (cols == 0 || rows == 0) {
    throw InputError("image " + std::to_string(w) + "x" + std::to_string(h) +
                     " has no adjacent pair in direction " + std::string(direction_name(direction)));
  }
  // Anti-diagonal anchors start on row 1 so that y - 1 stays in bounds.
  const std::size_t row0 = direction == Direction::AntiDiagonal ? 1 : 0;
  const int dy = direction == Direction::AntiDiagonal ? -1 : (steps_y ? 1 : 0);
  const std::size_t dx = steps_x ? 1 : 0;

  XorShift gen(1, seed);
  PixelPairSample sample;
  sample.direction = direction;
  sample.seed = seed;
  sample.pairs.reserve(n);
  const auto anchors = static_cast<std::int64_t>(cols * rows);
  for (std::size_t k = 0; k < n; ++k) {
    const auto idx = static_cast<std::size_t>(draw_range(gen, 0, anchors - 1));
    const std::size_t x = idx % cols;
    const std::size_t y = row0 + idx / cols;
    const auto ny = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(y) + dy);
    sample.pairs.emplace_back(img.at(x, y), img.at(x + dx, ny));
  }
  return sample;
}

double cc_metric(const PixelPairSample& sample) {
  const auto& pairs = sample.pairs;
  if (pairs.empty()) {
    throw InputError("correlation of an empty sample is undefined");
  }
  const auto n = static_cast<double>(pairs.size());
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& [x, y] : pairs) {
    sx += x;
    sy += y;
  }
  const double ex = sx / n;
  const double ey = sy / n;
  double cov = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  for (const auto& [x, y] : pairs) {
    const double ux = x - ex;
    const double uy = y - ey;
    cov += ux * uy;
    dx += ux * ux;
    dy += uy * uy;
  }
  cov /= n;
  dx /= n;
  dy /= n;
  if (dx == 0.0 || dy == 0.0) {
    throw InputError("degenerate sample: zero variance in direction " +
                     std::string(direction_name(sample.direction)));
  }
  return cov / std::sqrt(dx * dy);
}

std::string adjacency_csv(const PixelPairSample& sample) {
  std::string out = "x,y\n";
  out.reserve(out.size() + sample.pairs.size() * 8);
  for (const auto& [x, y] : sample.pairs) {
    out += std::to_string(x);
    out += ',';
    out += std::to_string(y);
    out += '\n';
  }
  return out;
}

MetricsReport analyze(const GrayImage& orig, const GrayImage& enc, std::size_t n,
                      std::uint64_t seed) {
  if (orig.width() != enc.width() || orig.height() != enc.height()) {
    throw InputError("image dimensions differ: " + std::to_string(orig.width()) + "x" +
                     std::to_string(orig.height()) + " vs " + std::to_string(enc.width()) + "x" +
                     std::to_string(enc.height()));
  }
  MetricsReport report;
  report.eq = eq_metric(histogram(orig), histogram(enc));
  report.n = n;
  report.width = orig.width();
  report.height = orig.height();
  for (Direction d : kAllDirections) {
    const auto i = static_cast<std::size_t>(d);
    report.cc[i] = cc_metric(sample_adjacent_pairs(enc, n, d, seed));
    report.cc_orig[i] = cc_metric(sample_adjacent_pairs(orig, n, d, seed));
  }
  return report;
}

std::string report_json(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["eq"] = r.eq;
  for (Direction d : kAllDirections) {
    j["cc_" + std::string(direction_name(d))] = r.cc[static_cast<std::size_t>(d)];
  }
  for (Direction d : kAllDirections) {
    j["orig_cc_" + std::string(direction_name(d))] = r.cc_orig[static_cast<std::size_t>(d)];
  }
  j["n"] = r.n;
  j["width"] = r.width;
  j["height"] = r.height;
  return j.dump(2);
}

}  // namespace vsem
