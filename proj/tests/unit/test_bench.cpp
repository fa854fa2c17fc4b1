#include <gtest/gtest.h>

#include <algorithm>

#include "vsem/bench.hpp"
#include "vsem/error.hpp"

namespace {

TEST(Bench, OneResultPerSizeAndSelection) {
  vsem::BenchOptions opts;
  opts.reps = 2;
  const auto results = vsem::run_bench({1024, 4096, 8192}, vsem::default_selections(), opts);
  ASSERT_EQ(results.size(), 15U);
  EXPECT_EQ(results[0].size, 1024U);
  EXPECT_EQ(results[0].label, "x");
  EXPECT_EQ(results[4].label, "all");
  for (const auto& r : results) {
    EXPECT_EQ(r.durations_ms.size(), 2U);
    EXPECT_GT(r.median_ms, 0.0);
    EXPECT_NEAR(r.throughput_mib_s(), (r.size / 1048576.0) / (r.median_ms / 1000.0), 1e-9);
  }
}

TEST(Bench, MedianOfOddReps) {
  vsem::BenchOptions opts;
  opts.reps = 5;
  const auto r = vsem::run_bench({2048}, {vsem::parse_selection("x+s")}, opts).front();
  auto sorted = r.durations_ms;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(r.median_ms, sorted[2]);
}

TEST(Bench, RejectsBadArguments) {
  vsem::BenchOptions zero;
  zero.reps = 0;
  EXPECT_THROW(vsem::run_bench({1024}, vsem::default_selections(), zero), vsem::ConfigError);
  EXPECT_THROW(vsem::run_bench({}, vsem::default_selections()), vsem::ConfigError);
}

TEST(Bench, MedianStableWhenRepsDouble) {
  vsem::BenchOptions five;
  five.reps = 5;
  vsem::BenchOptions ten;
  ten.reps = 10;
  const auto sel = std::vector{vsem::parse_selection("x")};
  const double a = vsem::run_bench({1 << 20}, sel, five).front().median_ms;
  const double b = vsem::run_bench({1 << 20}, sel, ten).front().median_ms;
  EXPECT_LT(std::abs(a - b), 0.5 * std::max(a, b));
}

TEST(Bench, BufferIsDeterministic) {
  EXPECT_EQ(vsem::bench_buffer(1000), vsem::bench_buffer(1000));
}

TEST(Bench, Formats) {
  vsem::BenchOptions opts;
  opts.reps = 1;
  const auto results = vsem::run_bench({1024, 2048}, vsem::default_selections(), opts);
  const std::string table = vsem::format_table(results);
  EXPECT_NE(table.find("1K"), std::string::npos);
  EXPECT_NE(table.find("2K"), std::string::npos);
  EXPECT_NE(table.find("ct"), std::string::npos);
  const std::string csv = vsem::format_csv(results);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 11);
  EXPECT_EQ(csv.rfind("module,size_bytes,reps,median_ms,throughput_mib_s\n", 0), 0U);
}

TEST(Bench, SizeParsing) {
  EXPECT_EQ(vsem::parse_size("280K"), 280U * 1024);
  EXPECT_EQ(vsem::parse_size("25M"), 25U << 20);
  EXPECT_EQ(vsem::parse_size("1000"), 1000U);
  EXPECT_THROW(vsem::parse_size("MB"), vsem::ConfigError);
  EXPECT_THROW(vsem::parse_size("5Q"), vsem::ConfigError);
  EXPECT_EQ(vsem::format_size(25U << 20), "25M");
}

}  // namespace
