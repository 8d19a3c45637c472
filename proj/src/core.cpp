#include "crowdfx/core.hpp"

#include <algorithm>
#include <cmath>

namespace crowdfx {

std::string_view to_string(QuoteDirection d) {
  return d == QuoteDirection::usd_per_unit ? "usd_per_unit" : "units_per_usd";
}

QuoteDirection parse_quote_direction(std::string_view text) {
  if (text == "usd_per_unit") return QuoteDirection::usd_per_unit;
  if (text == "units_per_usd") return QuoteDirection::units_per_usd;
  throw std::invalid_argument("unknown quote direction '" + std::string(text) + "'");
}

PriceSeries::PriceSeries(std::string pair_id, std::vector<PricePoint> points,
                         QuoteDirection direction)
    : pair_id_(std::move(pair_id)), points_(std::move(points)), direction_(direction) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!(points_[i].rate > 0.0) || !std::isfinite(points_[i].rate)) {
      throw std::invalid_argument("non-positive rate on " + format_date(points_[i].date) +
                                  " in series '" + pair_id_ + "'");
    }
    if (i > 0 && points_[i].date <= points_[i - 1].date) {
      throw std::invalid_argument("dates not strictly increasing at " +
                                  format_date(points_[i].date) + " in series '" + pair_id_ + "'");
    }
  }
}

std::size_t PriceSeries::lower_bound(Date d) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), d,
                             [](const PricePoint& p, Date v) { return p.date < v; });
  return static_cast<std::size_t>(it - points_.begin());
}

std::size_t PriceSeries::upper_bound(Date d) const {
  auto it = std::upper_bound(points_.begin(), points_.end(), d,
                             [](Date v, const PricePoint& p) { return v < p.date; });
  return static_cast<std::size_t>(it - points_.begin());
}

std::string_view to_string(ThresholdKind k) {
  return k == ThresholdKind::relative_depreciation ? "relative_depreciation" : "absolute_level";
}

ThresholdKind parse_threshold_kind(std::string_view text) {
  if (text == "relative_depreciation" || text == "relative") {
    return ThresholdKind::relative_depreciation;
  }
  if (text == "absolute_level" || text == "absolute") return ThresholdKind::absolute_level;
  throw std::invalid_argument("unknown threshold kind '" + std::string(text) + "'");
}

void Question::validate() const {
  if (question_id.empty()) throw std::invalid_argument("question_id is empty");
  if (!(open_date < close_date)) {
    throw std::invalid_argument("question '" + question_id + "': open_date must precede close_date");
  }
  if (!(baseline_rate > 0.0) || !std::isfinite(baseline_rate)) {
    throw std::invalid_argument("question '" + question_id + "': baseline_rate must be positive");
  }
  if (threshold_kind == ThresholdKind::relative_depreciation) {
    if (!(threshold_value > 0.0 && threshold_value < 1.0)) {
      throw std::invalid_argument("question '" + question_id +
                                  "': relative threshold must lie in (0, 1)");
    }
  } else if (!(threshold_value > 0.0) || !std::isfinite(threshold_value)) {
    throw std::invalid_argument("question '" + question_id +
                                "': absolute threshold must be positive");
  }
}

double baseline_from_series(const PriceSeries& series, const Question& question) {
  const std::size_t i = series.lower_bound(question.open_date);
  if (i == series.size() || series[i].date > question.close_date) {
    throw DataError("insufficient data: no observation of '" + series.pair_id() +
                    "' in the window of question '" + question.question_id + "'");
  }
  return series.value(i);
}

double threshold_rate(const Question& question) {
  question.validate();
  if (question.threshold_kind == ThresholdKind::relative_depreciation) {
    return question.baseline_rate * (1.0 - question.threshold_value);
  }
  return question.threshold_value;
}

Resolution resolve(const PriceSeries& series, const Question& question) {
  const double barrier = threshold_rate(question);
  const std::size_t first = series.lower_bound(question.open_date);
  const std::size_t last = series.upper_bound(question.close_date);
  if (first >= last) {
    throw DataError("insufficient data: series '" + series.pair_id() +
                    "' does not overlap question '" + question.question_id + "'");
  }
  for (std::size_t i = first; i < last; ++i) {
    if (series[i].date == question.open_date) continue;
    if (series.value(i) <= barrier) return {question.question_id, 1, series[i].date};
  }
  return {question.question_id, 0, question.close_date};
}

std::string_view to_string(Source s) {
  switch (s) {
    case Source::random_walk: return "random_walk";
    case Source::crowd: return "crowd";
    case Source::combined: return "combined";
  }
  return "unknown";
}

Source parse_source(std::string_view text) {
  if (text == "random_walk") return Source::random_walk;
  if (text == "crowd") return Source::crowd;
  if (text == "combined") return Source::combined;
  throw std::invalid_argument("unknown forecast source '" + std::string(text) + "'");
}

void ForecastSeries::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double p = points[i].p;
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("probability outside [0,1] on " + format_date(points[i].date) +
                                  " for question '" + question_id + "'");
    }
    if (i > 0 && points[i].date <= points[i - 1].date) {
      throw std::invalid_argument("forecast dates not strictly increasing at " +
                                  format_date(points[i].date) + " for question '" +
                                  question_id + "'");
    }
  }
}

}  // namespace crowdfx
