#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vsem/ciphers.hpp"

namespace vsem {

// Benchmark buffers are filled from a variant-1 generator with this seed.
inline constexpr std::uint64_t kBenchBufferSeed = 0x5EED5EED5EEDULL;
inline constexpr std::string_view kBenchPassword = "vsem-bench";

struct BenchSelection {
  std::string label;  // "x", "t", "s", "ct" or "all"
  ChainSpec chain;
};

/// The five columns of the classic layout: each stage alone, then all four.
std::vector<BenchSelection> default_selections();
/// A stage name, "all", or stages joined with '+' ("x+s").
BenchSelection parse_selection(std::string_view label);

struct BenchResult {
  std::string label;
  std::size_t size = 0;
  std::size_t reps = 0;
  std::vector<double> durations_ms;  // one per timed repetition
  double median_ms = 0.0;

  double throughput_mib_s() const noexcept;
};

struct BenchOptions {
  std::size_t reps = 5;
  bool warmup = true;
  /// Block size handed to the pipeline; 0 times the buffer monolithically.
  std::size_t block_size = kDefaultBlockSize;
  std::string password{kBenchPassword};
};

Bytes bench_buffer(std::size_t size);

/// One result per (size, selection), sizes outermost. Each repetition
/// encrypts a fresh copy of the same deterministic buffer; the warm-up run
/// is not recorded. Throws ConfigError for empty sizes or zero reps.
std::vector<BenchResult> run_bench(const std::vector<std::size_t>& sizes,
                                   const std::vector<BenchSelection>& selections,
                                   const BenchOptions& options = {});

/// Rows are sizes, columns are selections, cells are median milliseconds.
std::string format_table(const std::vector<BenchResult>& results);
std::string format_csv(const std::vector<BenchResult>& results);

/// "280K", "1M", "25M" style labels plus plain byte counts.
std::size_t parse_size(std::string_view text);
std::string format_size(std::size_t bytes);

}  // namespace vsem
