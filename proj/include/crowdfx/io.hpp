#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "crowdfx/core.hpp"
#include "crowdfx/crowd.hpp"
#include "crowdfx/scoring.hpp"

namespace crowdfx {

/// Malformed input file; the message carries `path:line:`.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::filesystem::path& path, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// `date,rate` with ISO-8601 dates. Rows may be unsorted; duplicate dates
/// and non-positive rates are errors.
PriceSeries ingest_price_csv(const std::filesystem::path& path, const std::string& pair_id,
                             QuoteDirection direction = QuoteDirection::usd_per_unit);

/// `question_id,forecaster_id,timestamp_rfc3339,probability`, returned
/// sorted by timestamp (stable for equal timestamps).
std::vector<CrowdRecord> read_crowd_csv(const std::filesystem::path& path);

/// `date,p` for a single question.
ForecastSeries read_forecast_csv(const std::filesystem::path& path, const std::string& question_id,
                                 Source source);

/// `question_id,date,probability`: externally computed consensus series,
/// keyed by question id.
std::map<std::string, ForecastSeries> read_consensus_csv(const std::filesystem::path& path,
                                                         Source source = Source::crowd);

/// Fixed six-decimal rendering used by every report file.
std::string fixed6(double v);

void write_forecast_csv(const std::filesystem::path& path, const ForecastSeries& series);
void write_score_csv(const std::filesystem::path& path, const ScoreSeries& series);
void write_mean_curve_csv(const std::filesystem::path& path, const MeanScoreCurve& curve);

}  // namespace crowdfx
