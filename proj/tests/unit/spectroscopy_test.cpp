#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "rpys/spectroscopy.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

namespace rpys {
namespace {

std::vector<double> as_double(const std::vector<std::int64_t>& v) { return {v.begin(), v.end()}; }

bool is_permutation_of_1_to_n(std::vector<int> ranks) {
  std::sort(ranks.begin(), ranks.end());
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] != static_cast<int>(i + 1)) return false;
  }
  return true;
}

TEST(YearHistogram, DirectCounting) {
  const auto seg = Segment::from_records(
      "s", {testing::make_record("a", 2000, {"A, 1926, X", "A, 1926, X", "B, 1934, Y", "NO YEAR", "C, 1890, Z"})});
  const auto counts = year_histogram(seg, YearRange::make(1925, 1935));
  ASSERT_EQ(counts.size(), 11u);
  EXPECT_EQ(counts[1], 2);
  EXPECT_EQ(counts[9], 1);
  EXPECT_EQ(std::accumulate(counts.begin(), counts.end(), std::int64_t{0}), 3);
}

TEST(YearHistogram, EmptySegment) {
  const auto seg = Segment::from_records("s", {});
  const auto counts = year_histogram(seg, YearRange::make(1900, 1909));
  EXPECT_EQ(counts, std::vector<std::int64_t>(10, 0));
}

TEST(YearHistogram, MiniFixtureTally) {
  const auto records = parse_wos(testing::slurp(testing::fixture("mini.wos"))).records;
  const auto seg = Segment::from_records("mini", records);
  const auto range = YearRange::make(1900, 2015);
  const auto counts = year_histogram(seg, range);
  // Hand tally of the CR lines in the fixture; 1895 and the undated ref fall outside.
  const std::map<int, std::int64_t> expected = {{1926, 3}, {1934, 2}, {1955, 2}, {1963, 5}, {1965, 2},
                                                {1972, 1}, {1973, 2}, {2005, 2}, {2006, 1}, {2014, 1}};
  for (int y = range.first; y <= range.last; ++y) {
    const auto it = expected.find(y);
    EXPECT_EQ(counts[range.index_of(y)], it == expected.end() ? 0 : it->second) << y;
  }
}

TEST(MedianDeviation, HandExamples) {
  const std::vector<std::int64_t> peak = {1, 2, 9, 2, 1};
  EXPECT_EQ(median_deviation(peak, DeviationMode::Absolute), (std::vector<double>{1, 0, 7, 0, 1}));
  EXPECT_EQ(median_deviation(peak, DeviationMode::Signed), (std::vector<double>{-1, 0, 7, 0, -1}));

  const std::vector<std::int64_t> flat = {5, 5, 5, 5, 5};
  EXPECT_EQ(median_deviation(flat, DeviationMode::Signed), std::vector<double>(5, 0.0));

  const std::vector<std::int64_t> edge = {0, 0, 10};
  EXPECT_EQ(median_deviation(edge, DeviationMode::Absolute)[2], 10.0);

  const std::vector<std::int64_t> ramp = {1, 2, 3, 4, 5};
  EXPECT_EQ(median_deviation(ramp, DeviationMode::Absolute), (std::vector<double>{1, 0.5, 0, 0.5, 1}));
}

TEST(MedianDeviation, ShortSeries) {
  const std::vector<std::int64_t> one = {4};
  EXPECT_EQ(median_deviation(one, DeviationMode::Absolute), std::vector<double>{0.0});
  const std::vector<std::int64_t> two = {1, 4};
  EXPECT_EQ(median_deviation(two, DeviationMode::Signed), (std::vector<double>{-1.5, 1.5}));
}

TEST(MedianDeviation, MatchesBruteForceOnIntegers) {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + gen() % 200;
    std::vector<std::int64_t> counts(n);
    for (auto& c : counts) c = static_cast<std::int64_t>(gen() % 50);
    for (bool absolute : {true, false}) {
      const auto got = median_deviation(counts, absolute ? DeviationMode::Absolute : DeviationMode::Signed);
      EXPECT_EQ(got, oracle::median_deviation(as_double(counts), absolute)) << "trial " << trial;
    }
  }
}

TEST(MedianDeviation, MatchesBruteForceOnReals) {
  std::mt19937_64 gen(99);
  std::normal_distribution<double> noise(0.0, 100.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(1 + gen() % 150);
    for (auto& x : v) x = noise(gen);
    const auto got = median_deviation(std::span<const double>(v), DeviationMode::Signed);
    const auto want = oracle::median_deviation(v, false);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
  }
}

TEST(RankTransform, HandExamples) {
  EXPECT_EQ(rank_transform(std::vector<double>{3.0, 1.0, 2.0}), (std::vector<int>{3, 1, 2}));
  EXPECT_EQ(rank_transform(std::vector<double>{5.0, 5.0}), (std::vector<int>{2, 1}));
  EXPECT_EQ(rank_transform(std::vector<double>{0, 0, 7, 0, 1}), (std::vector<int>{3, 2, 5, 1, 4}));
  EXPECT_EQ(rank_transform(std::vector<double>{1, 0.5, 0, 0.5, 1}), (std::vector<int>{5, 3, 1, 2, 4}));
}

TEST(RankTransform, PermutationMonotoneAndTieRule) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> v(1 + gen() % 120);
    for (auto& x : v) x = static_cast<double>(gen() % 12);  // plenty of ties
    const auto r = rank_transform(v);
    ASSERT_TRUE(is_permutation_of_1_to_n(r));
    EXPECT_EQ(r, oracle::ranks(v));
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (v[i] >= v[j]) {
          EXPECT_GT(r[i], r[j]);  // earlier year wins ties
        } else {
          EXPECT_LT(r[i], r[j]);
        }
      }
    }
  }
}

TEST(RankTransform, RejectsNan) {
  EXPECT_THROW(rank_transform(std::vector<double>{1.0, std::nan("")}), Error);
}

TEST(Spectrum, PeakPipeline) {
  const auto s = spectrum_from_counts(YearRange::make(1, 5), {1, 2, 9, 2, 1}, DeviationMode::Absolute);
  EXPECT_EQ(s.deviations, (std::vector<double>{1, 0, 7, 0, 1}));
  EXPECT_EQ(s.ranks, (std::vector<int>{4, 2, 5, 1, 3}));
}

TEST(Spectrum, AllZeroHistogramGivesReversedRanks) {
  const auto s = spectrum_from_counts(YearRange::make(1900, 1909), std::vector<std::int64_t>(10, 0),
                                      DeviationMode::Absolute);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(s.ranks[i], static_cast<int>(10 - i));
}

TEST(Spectrum, ShiftInvariance) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::int64_t> counts(30);
    for (auto& c : counts) c = static_cast<std::int64_t>(gen() % 1000);
    auto shifted = counts;
    for (auto& c : shifted) c += 250;
    const auto range = YearRange::make(1950, 1979);
    for (auto mode : {DeviationMode::Signed, DeviationMode::Absolute}) {
      EXPECT_EQ(spectrum_from_counts(range, counts, mode).ranks, spectrum_from_counts(range, shifted, mode).ranks);
    }
  }
}

TEST(Spectrum, ScaleInvariance) {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::int64_t> counts(30);
    for (auto& c : counts) c = static_cast<std::int64_t>(gen() % 1000);
    auto scaled = counts;
    for (auto& c : scaled) c *= 7;
    const auto range = YearRange::make(1950, 1979);
    EXPECT_EQ(spectrum_from_counts(range, counts, DeviationMode::Absolute).ranks,
              spectrum_from_counts(range, scaled, DeviationMode::Absolute).ranks);
  }
}

TEST(Spectrum, LengthsAndDeterminism) {
  const auto records = parse_wos(testing::slurp(testing::fixture("mini.wos"))).records;
  const auto seg = Segment::from_records("mini", records);
  const auto range = YearRange::make(1900, 2015);
  const auto a = rpys(seg, range);
  const auto b = rpys(seg, range);
  EXPECT_EQ(a.counts.size(), 116u);
  EXPECT_EQ(a.deviations.size(), 116u);
  EXPECT_TRUE(is_permutation_of_1_to_n(a.ranks));
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.deviations, b.deviations);
  EXPECT_EQ(a.ranks, b.ranks);
  EXPECT_EQ(std::accumulate(a.counts.begin(), a.counts.end(), std::int64_t{0}), 21);
}

TEST(YearRange, Validation) {
  EXPECT_THROW(YearRange::make(2000, 1999), Error);
  const auto r = YearRange::make(1900, 1999);
  EXPECT_EQ(r.size(), 100u);
  EXPECT_EQ(r.year_at(r.index_of(1950)), 1950);
  EXPECT_EQ(parse_deviation_mode("signed"), DeviationMode::Signed);
  EXPECT_THROW(parse_deviation_mode("relative"), Error);
}

}  // namespace
}  // namespace rpys
