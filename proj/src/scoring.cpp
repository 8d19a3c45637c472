#include "crowdfx/scoring.hpp"

#include <map>

namespace crowdfx {

double brier(double p, int k) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability outside [0, 1]");
  if (k != 0 && k != 1) throw std::invalid_argument("outcome must be 0 or 1");
  return k == 0 ? p * p : (1.0 - p) * (1.0 - p);
}

ScoreSeries score_series(const ForecastSeries& forecast, const Resolution& resolution) {
  if (forecast.question_id != resolution.question_id) {
    throw std::invalid_argument("forecast for '" + forecast.question_id +
                                "' scored against resolution of '" + resolution.question_id + "'");
  }
  ScoreSeries out{forecast.question_id, forecast.source, {}};
  out.points.reserve(forecast.points.size());
  for (const auto& pt : forecast.points) {
    if (pt.date > resolution.resolve_date) {
      throw std::invalid_argument("forecast point " + format_date(pt.date) +
                                  " is dated after resolution of '" + forecast.question_id + "'");
    }
    out.points.push_back({pt.date, brier(pt.p, resolution.outcome)});
  }
  return out;
}

MeanScoreCurve mean_score_curve(std::span<const ScoreSeries> scores, DateRange calendar) {
  if (scores.empty()) throw std::invalid_argument("mean_score_curve: no score series");
  const Source source = scores.front().source;
  struct Acc {
    double sum = 0.0;
    std::size_t n = 0;
  };
  std::map<Date, Acc> by_date;
  for (const auto& s : scores) {
    if (s.source != source) throw std::invalid_argument("mean_score_curve: mixed sources");
    for (const auto& pt : s.points) {
      if (pt.date < calendar.first || pt.date > calendar.last) continue;
      auto& acc = by_date[pt.date];
      acc.sum += pt.score;
      ++acc.n;
    }
  }
  MeanScoreCurve curve{source, {}};
  curve.points.reserve(by_date.size());
  for (const auto& [date, acc] : by_date) {
    curve.points.push_back({date, acc.sum / static_cast<double>(acc.n), acc.n});
  }
  return curve;
}

}  // namespace crowdfx
