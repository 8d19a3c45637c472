#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crowdfx/calibration.hpp"
#include "crowdfx/core.hpp"
#include "crowdfx/crowd.hpp"
#include "crowdfx/engine.hpp"
#include "crowdfx/scoring.hpp"

namespace crowdfx {

struct PairConfig {
  std::string pair_id;
  std::filesystem::path price_file;
  QuoteDirection quote_direction = QuoteDirection::usd_per_unit;
  /// False for pegged or managed currencies; the random walk is not run
  /// for their questions.
  bool floating = true;
};

struct QuestionConfig {
  Question question;
  /// Explicit baseline; when unset the first observation on or after
  /// open_date is used.
  std::optional<double> baseline_rate;
};

struct RunConfig {
  std::vector<PairConfig> pairs;
  std::optional<std::filesystem::path> crowd_file;
  std::optional<std::filesystem::path> external_consensus_file;
  std::vector<QuestionConfig> questions;
  std::optional<std::uint64_t> seed;
  SimulationParams simulation;
  ConsensusParams consensus;
  std::filesystem::path output_dir = "out";

  /// Throws std::invalid_argument when a question references an unknown
  /// pair, ids repeat, the seed is missing or n_paths is zero.
  void validate() const;
};

/// Reads a JSON run configuration. Relative file paths are resolved
/// against the directory containing the config file.
RunConfig load_config(const std::filesystem::path& path);

struct QuestionReport {
  Question question;
  bool floating = true;
  std::optional<Resolution> resolution;
  std::map<Source, ForecastSeries> forecasts;
  std::map<Source, ScoreSeries> scores;
  std::vector<std::string> errors;
};

struct LabelledCurve {
  std::string label;
  MeanScoreCurve curve;
};

struct RunReport {
  std::vector<QuestionReport> questions;  ///< ordered by question_id
  std::vector<LabelledCurve> curves;
  std::optional<RegressionResult> calibration;
  std::vector<std::string> warnings;
};

/// End-to-end comparison: resolve, forecast, aggregate, score, average and
/// calibrate. Per-question failures are recorded in the report; throws
/// DataError only when every question fails to resolve.
RunReport run_pipeline(const RunConfig& config);

/// Writes the report files into `output_dir` (created if needed).
void emit_report(const RunReport& report, const std::filesystem::path& output_dir);

}  // namespace crowdfx
