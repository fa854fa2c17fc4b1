#include "vsem/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>

#include "vsem/error.hpp"

namespace vsem {

std::vector<BenchSelection> default_selections() {
  std::vector<BenchSelection> out;
  for (Stage s : kStageOrder) {
    out.push_back({std::string(stage_name(s)), ChainSpec::only(s)});
  }
  out.push_back({"all", ChainSpec::full()});
  return out;
}

BenchSelection parse_selection(std::string_view label) {
  std::string spelled(label);
  std::replace(spelled.begin(), spelled.end(), '+', ',');
  return {std::string(label), ChainSpec::parse(spelled)};
}

double BenchResult::throughput_mib_s() const noexcept {
  if (median_ms <= 0.0) return 0.0;
  return (static_cast<double>(size) / (1024.0 * 1024.0)) / (median_ms / 1000.0);
}

Bytes bench_buffer(std::size_t size) {
  XorShift gen(1, kBenchBufferSeed);
  Bytes buf(size);
  for (auto& b : buf) b = static_cast<std::uint8_t>(gen.next());
  return buf;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

std::vector<BenchResult> run_bench(const std::vector<std::size_t>& sizes,
                                   const std::vector<BenchSelection>& selections,
                                   const BenchOptions& options) {
  if (sizes.empty()) throw ConfigError("bench needs at least one size");
  if (selections.empty()) throw ConfigError("bench needs at least one chain selection");
  if (options.reps == 0) throw ConfigError("bench reps must be at least 1");

  using Clock = std::chrono::steady_clock;
  const PipelineOptions pipe{options.block_size};
  std::vector<BenchResult> results;
  for (std::size_t size : sizes) {
    const Bytes source = bench_buffer(size);
    for (const auto& sel : selections) {
      BenchResult r{sel.label, size, options.reps, {}, 0.0};
      if (options.warmup) {
        (void)encrypt_pipeline(source, options.password, sel.chain, pipe);
      }
      for (std::size_t rep = 0; rep < options.reps; ++rep) {
        Bytes copy = source;
        const auto t0 = Clock::now();
        copy = encrypt_pipeline(std::move(copy), options.password, sel.chain, pipe);
        const auto t1 = Clock::now();
        r.durations_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
      }
      r.median_ms = median(r.durations_ms);
      results.push_back(std::move(r));
    }
  }
  return results;
}

std::string format_table(const std::vector<BenchResult>& results) {
  std::vector<std::size_t> sizes;
  std::vector<std::string> labels;
  std::map<std::pair<std::size_t, std::string>, double> cell;
  for (const auto& r : results) {
    if (std::find(sizes.begin(), sizes.end(), r.size) == sizes.end()) sizes.push_back(r.size);
    if (std::find(labels.begin(), labels.end(), r.label) == labels.end()) labels.push_back(r.label);
    cell[{r.size, r.label}] = r.median_ms;
  }
  std::ostringstream out;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-10s", "size");
  out << buf;
  for (const auto& l : labels) {
    std::snprintf(buf, sizeof buf, " %12s", l.c_str());
    out << buf;
  }
  out << "\n";
  for (std::size_t size : sizes) {
    std::snprintf(buf, sizeof buf, "%-10s", format_size(size).c_str());
    out << buf;
    for (const auto& l : labels) {
      auto it = cell.find({size, l});
      if (it == cell.end()) {
        std::snprintf(buf, sizeof buf, " %12s", "-");
      } else {
        std::snprintf(buf, sizeof buf, " %12.3f", it->second);
      }
      out << buf;
    }
    out << "\n";
  }
  out << "(median wall-clock milliseconds)\n";
  return out.str();
}

std::string format_csv(const std::vector<BenchResult>& results) {
  std::ostringstream out;
  out << "module,size_bytes,reps,median_ms,throughput_mib_s\n";
  char buf[128];
  for (const auto& r : results) {
    std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%.6f,%.3f\n", r.label.c_str(), r.size, r.reps,
                  r.median_ms, r.throughput_mib_s());
    out << buf;
  }
  return out.str();
}

std::size_t parse_size(std::string_view text) {
  if (text.empty()) throw ConfigError("empty size");
  std::size_t digits = 0;
  std::size_t value = 0;
  while (digits < text.size() && text[digits] >= '0' && text[digits] <= '9') {
    value = value * 10 + static_cast<std::size_t>(text[digits] - '0');
    ++digits;
  }
  if (digits == 0) throw ConfigError("bad size '" + std::string(text) + "'");
  const std::string_view suffix = text.substr(digits);
  if (suffix.empty() || suffix == "B" || suffix == "b") return value;
  if (suffix == "K" || suffix == "k" || suffix == "KiB" || suffix == "Kb") return value << 10;
  if (suffix == "M" || suffix == "m" || suffix == "MiB" || suffix == "Mb") return value << 20;
  throw ConfigError("bad size suffix in '" + std::string(text) + "'");
}

std::string format_size(std::size_t bytes) {
  if (bytes >= (1U << 20) && bytes % (1U << 20) == 0) return std::to_string(bytes >> 20) + "M";
  if (bytes >= (1U << 10) && bytes % (1U << 10) == 0) return std::to_string(bytes >> 10) + "K";
  return std::to_string(bytes);
}

}  // namespace vsem
