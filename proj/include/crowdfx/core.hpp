#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "crowdfx/date.hpp"

namespace crowdfx {

/// Raised when input data cannot support the requested computation
/// ("insufficient data", "insufficient history", "no forecasts", ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How a quoted rate relates to the value of the currency.
///
/// Depreciation always means the *value of the currency in US dollars*
/// falls. For `usd_per_unit` quotes that value is the rate itself; for
/// `units_per_usd` quotes it is the reciprocal. Baselines, thresholds and
/// the random walk are all expressed in USD-per-unit.
enum class QuoteDirection { usd_per_unit, units_per_usd };

std::string_view to_string(QuoteDirection d);
QuoteDirection parse_quote_direction(std::string_view text);

struct PricePoint {
  Date date;
  double rate;
};

/// Dated daily exchange-rate levels for one pair. Immutable once built.
class PriceSeries {
 public:
  /// Validates strictly increasing dates and positive rates; throws
  /// std::invalid_argument otherwise. Points must already be sorted.
  PriceSeries(std::string pair_id, std::vector<PricePoint> points,
              QuoteDirection direction = QuoteDirection::usd_per_unit);

  const std::string& pair_id() const { return pair_id_; }
  QuoteDirection quote_direction() const { return direction_; }
  std::span<const PricePoint> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  const PricePoint& operator[](std::size_t i) const { return points_[i]; }

  /// Currency value in USD at observation i.
  double value(std::size_t i) const {
    return direction_ == QuoteDirection::usd_per_unit ? points_[i].rate : 1.0 / points_[i].rate;
  }

  /// Index of the first observation dated on or after `d` (size() if none).
  std::size_t lower_bound(Date d) const;
  /// Index one past the last observation dated on or before `d`.
  std::size_t upper_bound(Date d) const;

 private:
  std::string pair_id_;
  std::vector<PricePoint> points_;
  QuoteDirection direction_;
};

enum class ThresholdKind { relative_depreciation, absolute_level };

std::string_view to_string(ThresholdKind k);
ThresholdKind parse_threshold_kind(std::string_view text);

/// A barrier event: does the currency value fall to the threshold in
/// (open_date, close_date]?
struct Question {
  std::string question_id;
  std::string pair_id;
  Date open_date;
  Date close_date;
  double baseline_rate = 1.0;
  ThresholdKind threshold_kind = ThresholdKind::relative_depreciation;
  double threshold_value = 0.15;
  /// First date that is forecast and scored. Defaults to open_date.
  std::optional<Date> scoring_start_date;
  /// Earliest observation used for volatility estimates. Unset means the
  /// whole series.
  std::optional<Date> history_start;

  Date scoring_start() const { return scoring_start_date.value_or(open_date); }

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;
};

/// First observed currency value on or after the question's open date.
/// Throws DataError when the series has nothing in the window.
double baseline_from_series(const PriceSeries& series, const Question& question);

double threshold_rate(const Question& question);

struct Resolution {
  std::string question_id;
  int outcome = 0;  ///< k in {0, 1}
  Date resolve_date;
};

/// Resolves the question on daily observations: k = 1 on the first date in
/// (open_date, close_date] whose value is at or below the threshold, else
/// k = 0 at close_date. Throws DataError("insufficient data") when the
/// series has no observation in [open_date, close_date].
Resolution resolve(const PriceSeries& series, const Question& question);

enum class Source { random_walk, crowd, combined };

std::string_view to_string(Source s);
Source parse_source(std::string_view text);

struct ForecastPoint {
  Date date;
  double p;
};

struct ForecastSeries {
  std::string question_id;
  Source source = Source::random_walk;
  std::vector<ForecastPoint> points;

  /// Dates strictly increasing and 0 <= p <= 1; throws std::invalid_argument.
  void validate() const;
};

struct ScorePoint {
  Date date;
  double score;
};

struct ScoreSeries {
  std::string question_id;
  Source source = Source::random_walk;
  std::vector<ScorePoint> points;
};

}  // namespace crowdfx
