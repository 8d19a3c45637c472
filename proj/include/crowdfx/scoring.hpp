#pragma once

#include <span>
#include <string>
#include <vector>

#include "crowdfx/core.hpp"

namespace crowdfx {

/// Squared error (Brier score) of probability p against outcome k:
/// (1 - k) p^2 + k (1 - p)^2. Throws std::invalid_argument when p is
/// outside [0, 1] or k is not 0/1.
double brier(double p, int k);

/// Pointwise Brier score of a forecast against the question's resolution.
/// Throws std::invalid_argument when the question ids differ or a point is
/// dated after the resolve date.
ScoreSeries score_series(const ForecastSeries& forecast, const Resolution& resolution);

struct MeanScorePoint {
  Date date;
  double mean_score;
  std::size_t n_open;
};

struct MeanScoreCurve {
  Source source = Source::random_walk;
  std::vector<MeanScorePoint> points;
};

struct DateRange {
  Date first;
  Date last;  ///< inclusive
};

/// Mean score over the questions that have a score point on each date of
/// `calendar`. Dates where no question is open are omitted. Throws
/// std::invalid_argument for an empty input or mixed sources.
MeanScoreCurve mean_score_curve(std::span<const ScoreSeries> scores, DateRange calendar);

}  // namespace crowdfx
