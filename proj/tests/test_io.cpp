#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "crowdfx/io.hpp"

namespace {

using namespace crowdfx;
namespace fs = std::filesystem;

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("crowdfx_io_" + std::to_string(std::random_device{}()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << body;
    return p;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
};

TEST_F(IoTest, TwoRowPriceFile) {
  const auto s = ingest_price_csv(write("p.csv", "date,rate\n2022-01-03,1.1\n2022-01-04,1.2\n"), "EUR");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].date, parse_date("2022-01-03"));
  EXPECT_EQ(s[1].rate, 1.2);
  EXPECT_EQ(s.pair_id(), "EUR");
}

TEST_F(IoTest, ToleratesCrlfBomAndBlankLines) {
  const auto s = ingest_price_csv(
      write("p.csv", "\xEF\xBB\xBF" "date,rate\r\n2022-01-03,1.1\r\n\r\n2022-01-04,1.2\r\n"), "EUR");
  EXPECT_EQ(s.size(), 2u);
}

TEST_F(IoTest, NonPositiveRateNamesTheLine) {
  const auto p = write("p.csv", "date,rate\n2022-01-03,1.1\n2022-01-04,0\n");
  try {
    ingest_price_csv(p, "EUR");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos);
  }
}

TEST_F(IoTest, MalformedRowsAreErrors) {
  EXPECT_THROW(ingest_price_csv(write("a.csv", "day,rate\n2022-01-03,1.1\n"), "X"), ParseError);
  EXPECT_THROW(ingest_price_csv(write("b.csv", "date,rate\n2022-01-03,abc\n"), "X"), ParseError);
  EXPECT_THROW(ingest_price_csv(write("c.csv", "date,rate\n2022-13-03,1.0\n"), "X"), ParseError);
  EXPECT_THROW(ingest_price_csv(write("d.csv", "date,rate\n2022-01-03,1.0,2\n"), "X"), ParseError);
  EXPECT_THROW(ingest_price_csv(write("e.csv", ""), "X"), ParseError);
  EXPECT_THROW(ingest_price_csv(dir_ / "missing.csv", "X"), std::runtime_error);
}

TEST_F(IoTest, UnsortedEqualsSorted) {
  const auto a = ingest_price_csv(
      write("a.csv", "date,rate\n2022-01-05,1.3\n2022-01-03,1.1\n2022-01-04,1.2\n"), "X");
  const auto b = ingest_price_csv(
      write("b.csv", "date,rate\n2022-01-03,1.1\n2022-01-04,1.2\n2022-01-05,1.3\n"), "X");
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].date, b[i].date);
    EXPECT_EQ(a[i].rate, b[i].rate);
  }
}

TEST_F(IoTest, DuplicateDatesAreErrors) {
  EXPECT_THROW(
      ingest_price_csv(write("p.csv", "date,rate\n2022-01-03,1.1\n2022-01-03,1.2\n"), "X"),
      ParseError);
}

TEST_F(IoTest, CrowdCsvSortedByTimestamp) {
  const auto r = read_crowd_csv(write(
      "c.csv",
      "question_id,forecaster_id,timestamp_rfc3339,probability\n"
      "q,b,2022-06-02T10:00:00Z,0.4\n"
      "q,a,2022-06-01T10:00:00+02:00,0.3\n"
      "q,c,2022-06-02T10:00:00Z,0.5\n"));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].forecaster_id, "a");
  EXPECT_EQ(r[0].at, parse_timestamp("2022-06-01T08:00:00Z"));
  EXPECT_EQ(r[1].forecaster_id, "b");  // stable for equal timestamps
  EXPECT_EQ(r[2].forecaster_id, "c");
}

TEST_F(IoTest, CrowdProbabilityOutOfRange) {
  EXPECT_THROW(read_crowd_csv(write("c.csv",
                                    "question_id,forecaster_id,timestamp_rfc3339,probability\n"
                                    "q,a,2022-06-01T00:00:00Z,1.5\n")),
               ParseError);
}

TEST_F(IoTest, ConsensusCsvGroupsByQuestion) {
  const auto m = read_consensus_csv(write("k.csv",
                                          "question_id,date,probability\n"
                                          "b,2022-06-02,0.2\n"
                                          "a,2022-06-01,0.1\n"
                                          "b,2022-06-01,0.3\n"));
  ASSERT_EQ(m.size(), 2u);
  const auto& b = m.at("b");
  ASSERT_EQ(b.points.size(), 2u);
  EXPECT_EQ(b.points[0].date, parse_date("2022-06-01"));
  EXPECT_EQ(b.points[0].p, 0.3);
  EXPECT_EQ(b.source, Source::crowd);
}

TEST_F(IoTest, ForecastRoundTripWithinSixDecimals) {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ForecastSeries f{"q", Source::random_walk, {}};
  for (int i = 0; i < 50; ++i) f.points.push_back({parse_date("2022-06-01") + std::chrono::days{i}, u(gen)});
  const fs::path p = dir_ / "f.csv";
  write_forecast_csv(p, f);
  const auto back = read_forecast_csv(p, "q", Source::random_walk);
  ASSERT_EQ(back.points.size(), f.points.size());
  for (std::size_t i = 0; i < f.points.size(); ++i) {
    EXPECT_EQ(back.points[i].date, f.points[i].date);
    EXPECT_NEAR(back.points[i].p, f.points[i].p, 5e-7);
  }
  EXPECT_TRUE(slurp(p).starts_with("date,p\n2022-06-01,"));
}

TEST_F(IoTest, WritersUseSixDecimals) {
  EXPECT_EQ(fixed6(0.25), "0.250000");
  EXPECT_EQ(fixed6(-1e-9), "0.000000");
  EXPECT_EQ(fixed6(1.0 / 3.0), "0.333333");
  MeanScoreCurve c{Source::crowd, {{parse_date("2022-06-01"), 0.125, 3}}};
  write_mean_curve_csv(dir_ / "m.csv", c);
  EXPECT_EQ(slurp(dir_ / "m.csv"), "date,mean_score,n_open\n2022-06-01,0.125000,3\n");
  ScoreSeries s{"q", Source::crowd, {{parse_date("2022-06-01"), 0.0625}}};
  write_score_csv(dir_ / "s.csv", s);
  EXPECT_EQ(slurp(dir_ / "s.csv"), "date,score\n2022-06-01,0.062500\n");
}

}  // namespace
