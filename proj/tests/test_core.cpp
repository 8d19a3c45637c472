#include <gtest/gtest.h>

#include <random>

#include "crowdfx/core.hpp"

namespace {

using namespace crowdfx;
using std::chrono::days;

PriceSeries daily(const std::string& start, std::vector<double> rates,
                  QuoteDirection dir = QuoteDirection::usd_per_unit) {
  std::vector<PricePoint> pts;
  Date d = parse_date(start);
  for (double r : rates) {
    pts.push_back({d, r});
    d += days{1};
  }
  return PriceSeries("TST", std::move(pts), dir);
}

Question relative(double baseline, double threshold, const std::string& open = "2022-06-01",
                  const std::string& close = "2022-06-30") {
  Question q;
  q.question_id = "q";
  q.pair_id = "TST";
  q.open_date = parse_date(open);
  q.close_date = parse_date(close);
  q.baseline_rate = baseline;
  q.threshold_kind = ThresholdKind::relative_depreciation;
  q.threshold_value = threshold;
  return q;
}

TEST(PriceSeries, RejectsNonPositiveAndUnorderedData) {
  const Date d = parse_date("2022-01-03");
  EXPECT_THROW(PriceSeries("X", {{d, 0.0}}), std::invalid_argument);
  EXPECT_THROW(PriceSeries("X", {{d, -1.0}}), std::invalid_argument);
  EXPECT_THROW(PriceSeries("X", {{d, 1.0}, {d, 1.1}}), std::invalid_argument);
  EXPECT_THROW(PriceSeries("X", {{d + days{1}, 1.0}, {d, 1.1}}), std::invalid_argument);
  // weekend gaps are fine
  EXPECT_NO_THROW(PriceSeries("X", {{d, 1.0}, {d + days{4}, 1.1}}));
}

TEST(PriceSeries, UnitsPerUsdIsReciprocated) {
  const auto s = daily("2022-01-03", {4.0, 5.0}, QuoteDirection::units_per_usd);
  EXPECT_DOUBLE_EQ(s.value(0), 0.25);
  EXPECT_DOUBLE_EQ(s.value(1), 0.2);
}

TEST(ThresholdRate, Examples) {
  EXPECT_DOUBLE_EQ(threshold_rate(relative(1.0, 0.15)), 0.85);
  EXPECT_DOUBLE_EQ(threshold_rate(relative(2.0, 0.5)), 1.0);
  Question parity = relative(1.17, 0.15);
  parity.threshold_kind = ThresholdKind::absolute_level;
  parity.threshold_value = 1.0;  // GBP at parity with the dollar
  EXPECT_DOUBLE_EQ(threshold_rate(parity), 1.0);
}

TEST(ThresholdRate, RejectsInvalidQuestions) {
  EXPECT_THROW(threshold_rate(relative(1.0, 0.0)), std::invalid_argument);
  EXPECT_THROW(threshold_rate(relative(1.0, 1.0)), std::invalid_argument);
  EXPECT_THROW(threshold_rate(relative(0.0, 0.15)), std::invalid_argument);
  EXPECT_THROW(threshold_rate(relative(1.0, 0.15, "2022-06-30", "2022-06-30")),
               std::invalid_argument);
  Question abs = relative(1.0, 0.15);
  abs.threshold_kind = ThresholdKind::absolute_level;
  abs.threshold_value = -1.0;
  EXPECT_THROW(threshold_rate(abs), std::invalid_argument);
}

TEST(ThresholdRate, RelativeBarrierBelowBaseline) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> base(0.001, 1000.0);
  std::uniform_real_distribution<double> frac(1e-9, 1.0 - 1e-9);
  for (int i = 0; i < 1000; ++i) {
    const Question q = relative(base(gen), frac(gen));
    EXPECT_LT(threshold_rate(q), q.baseline_rate);
  }
}

TEST(Resolve, FirstDipResolvesYes) {
  const auto s = daily("2022-06-01", {1.0, 0.95, 0.90, 0.80, 0.84, 0.79});
  const Resolution r = resolve(s, relative(1.0, 0.15));
  EXPECT_EQ(r.outcome, 1);
  EXPECT_EQ(r.resolve_date, parse_date("2022-06-04"));
  EXPECT_EQ(r.question_id, "q");
}

TEST(Resolve, TouchingTheBarrierCounts) {
  const auto s = daily("2022-06-01", {1.0, 0.9, 0.5});
  Question q = relative(1.0, 0.15);
  q.threshold_kind = ThresholdKind::absolute_level;
  q.threshold_value = 0.9;
  EXPECT_EQ(resolve(s, q).resolve_date, parse_date("2022-06-02"));
}

TEST(Resolve, ConstantSeriesResolvesNoAtClose) {
  const auto s = daily("2022-05-20", std::vector<double>(60, 1.0));
  const Resolution r = resolve(s, relative(1.0, 0.15));
  EXPECT_EQ(r.outcome, 0);
  EXPECT_EQ(r.resolve_date, parse_date("2022-06-30"));
}

TEST(Resolve, OpenDateObservationDoesNotResolve) {
  // already below the barrier on the open date, recovered afterwards
  const auto s = daily("2022-06-01", {0.8, 1.0, 1.0});
  EXPECT_EQ(resolve(s, relative(1.0, 0.15)).outcome, 0);
}

TEST(Resolve, IgnoresDataOutsideWindow) {
  const auto s = daily("2022-05-25", {0.5, 0.5, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0});
  // window ends before the series' later values; dip before open is ignored
  const Resolution r = resolve(s, relative(1.0, 0.15, "2022-06-01", "2022-06-03"));
  EXPECT_EQ(r.outcome, 0);
}

TEST(Resolve, InsufficientDataWithoutOverlap) {
  const auto s = daily("2022-01-01", {1.0, 1.0});
  EXPECT_THROW(resolve(s, relative(1.0, 0.15)), DataError);
}

TEST(Resolve, UnitsPerUsdDepreciationIsARisingQuote) {
  // 10 units per USD -> 12 units per USD is a 16.7% loss of USD value
  const auto s = daily("2022-06-01", {10.0, 11.0, 12.0}, QuoteDirection::units_per_usd);
  Question q = relative(0.1, 0.15);
  EXPECT_EQ(resolve(s, q).outcome, 1);
  EXPECT_EQ(resolve(s, q).resolve_date, parse_date("2022-06-03"));
}

TEST(Resolve, EuroStyleDeclineShortOfThresholdIsNo) {
  // EUR/USD 2022 shape: ~1.07 at a June open, autumn low ~0.96 (about -10%)
  const auto s = daily("2022-06-01", {1.0735, 1.05, 1.02, 0.99, 0.9596, 0.98, 1.03, 1.07});
  Question q = relative(1.0735, 0.15, "2022-06-01", "2022-12-31");
  EXPECT_EQ(resolve(s, q).outcome, 0);
}

TEST(Resolve, LoweringTheBarrierNeverResolvesEarlier) {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> step(0.0, 0.02);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> rates{1.0};
    for (int i = 0; i < 40; ++i) rates.push_back(std::max(1e-3, rates.back() + step(gen)));
    const auto s = daily("2022-06-01", rates);
    const Resolution hi = resolve(s, relative(1.0, 0.05));
    const Resolution lo = resolve(s, relative(1.0, 0.10));
    EXPECT_LE(lo.outcome, hi.outcome);
    EXPECT_GE(lo.resolve_date, hi.resolve_date);
  }
}

TEST(Resolve, IndependentOfDataAfterResolution) {
  std::vector<double> rates{1.0, 0.97, 0.83, 0.9, 0.95};
  const auto a = daily("2022-06-01", rates);
  rates[3] = 5.0;
  rates[4] = 0.01;
  const auto b = daily("2022-06-01", rates);
  const Resolution ra = resolve(a, relative(1.0, 0.15));
  const Resolution rb = resolve(b, relative(1.0, 0.15));
  EXPECT_EQ(ra.outcome, rb.outcome);
  EXPECT_EQ(ra.resolve_date, rb.resolve_date);
}

TEST(Baseline, FirstObservationOnOrAfterOpen) {
  std::vector<PricePoint> pts{{parse_date("2022-05-31"), 1.1}, {parse_date("2022-06-02"), 1.2}};
  const PriceSeries s("TST", pts);
  EXPECT_DOUBLE_EQ(baseline_from_series(s, relative(1.0, 0.15)), 1.2);
  EXPECT_THROW(baseline_from_series(s, relative(1.0, 0.15, "2022-07-01", "2022-07-30")), DataError);
}

TEST(ForecastSeries, ValidateRejectsBadPoints) {
  ForecastSeries f{"q", Source::crowd, {{parse_date("2022-06-01"), 0.5}}};
  EXPECT_NO_THROW(f.validate());
  f.points.push_back({parse_date("2022-06-01"), 0.5});
  EXPECT_THROW(f.validate(), std::invalid_argument);
  f.points.back() = {parse_date("2022-06-02"), 1.5};
  EXPECT_THROW(f.validate(), std::invalid_argument);
}

}  // namespace
