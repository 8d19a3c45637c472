#pragma once

#include <cstdint>
#include <string_view>

#include "crowdfx/core.hpp"

namespace crowdfx {

struct VolatilityEstimate {
  Date as_of;
  double sigma_h = 0.0;  ///< std. dev. of daily first differences, in rate units
  std::size_t n_obs = 0;  ///< number of increments used
};

/// Sample standard deviation (n - 1 denominator) of first differences of
/// the currency value over consecutive observations dated on or before
/// `as_of` (and on or after `history_start` when given). Only data up to
/// `as_of` is read. Throws DataError("insufficient history") with fewer
/// than three observations.
VolatilityEstimate estimate_volatility(const PriceSeries& series, Date as_of,
                                       std::optional<Date> history_start = std::nullopt);

enum class StepMode { trading_days, calendar_days };

std::string_view to_string(StepMode m);
StepMode parse_step_mode(std::string_view text);

struct SimulationParams {
  std::uint64_t n_paths = 10000;
  std::uint64_t seed = 0;
  StepMode step_mode = StepMode::trading_days;
  /// OpenMP worker count; <= 0 uses the runtime default. Never changes
  /// results.
  int threads = 0;
};

/// Fraction of simulated driftless Gaussian paths whose minimum over steps
/// 1..n_steps is at or below `barrier`. Returns exactly 1 when x0 is
/// already at or below the barrier. Deterministic in (params.seed,
/// n_paths, inputs). Throws std::invalid_argument for negative n_steps or
/// n_paths == 0.
double simulate_barrier_probability(double x0, double sigma, double barrier,
                                    std::int64_t n_steps, const SimulationParams& params);

/// Continuous-time first-passage probability of a driftless Brownian motion
/// with per-step variance sigma^2 over n_steps: 2 Phi((barrier - x0) /
/// (sigma sqrt(n_steps))). 1 when x0 <= barrier; 0 when sigma or n_steps
/// is zero.
double analytic_barrier_probability(double x0, double sigma, double barrier,
                                    std::int64_t n_steps);

/// Steps remaining in (from, close] under the given step mode.
std::int64_t remaining_steps(Date from, Date close, StepMode mode);

/// Per-(seed, question, date) stream seed for the rolling forecast.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view question_id, Date d);

/// Pseudo-out-of-sample rolling random-walk forecast: one point for every
/// observed date in [scoring_start, resolve_date), each computed only from
/// observations dated on or before that date.
ForecastSeries rolling_forecast(const PriceSeries& series, const Question& question,
                                const SimulationParams& params);

}  // namespace crowdfx
