#pragma once

#include <span>
#include <string>
#include <vector>

#include "crowdfx/core.hpp"

namespace crowdfx {

/// One forecaster's timestamped probability for one question.
struct CrowdRecord {
  std::string question_id;
  std::string forecaster_id;
  Timestamp at;
  double p = 0.5;
};

enum class ConsensusMethod { weighted_median, logit_combine };

std::string_view to_string(ConsensusMethod m);
ConsensusMethod parse_consensus_method(std::string_view text);

struct ConsensusParams {
  ConsensusMethod method = ConsensusMethod::weighted_median;
  double extremize_a = 2.0;
  /// Recency weight w = exp(recency_shape * sqrt(age_rank)); 0 gives the
  /// plain median.
  double recency_shape = 1.0;

  void validate() const;
};

struct LatestForecast {
  std::string forecaster_id;
  double p;
  std::size_t age_rank;  ///< 1 = oldest latest-submission, N = newest
};

/// Each forecaster's most recent probability at or before `at`. Ranks are
/// assigned by the time of that latest submission (ties broken by
/// forecaster id). For equal timestamps from one forecaster the record that
/// comes later in `records` wins.
std::vector<LatestForecast> latest_per_forecaster(std::span<const CrowdRecord> records,
                                                  Timestamp at);

/// Recency-weighted median: the smallest p whose cumulative weight, over p
/// sorted ascending, reaches half the total weight. Throws
/// DataError("no forecasts") on an empty snapshot.
double community_prediction(std::span<const LatestForecast> snapshot,
                            const ConsensusParams& params);

/// Extremized logit pool logistic(a * mean(logit p_i)), with each p clamped
/// to [1e-6, 1 - 1e-6]. Throws std::invalid_argument on empty input or
/// a <= 0.
double combine_logit(std::span<const double> ps, double a);

inline constexpr double kLogitClamp = 1e-6;

/// Consensus of the records for `question` evaluated at the end of each
/// sample date. Dates before the first record are omitted.
ForecastSeries crowd_series(std::span<const CrowdRecord> records, const Question& question,
                            std::span<const Date> sample_dates, const ConsensusParams& params);

}  // namespace crowdfx
