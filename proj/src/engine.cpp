#include "crowdfx/engine.hpp"

#include <cmath>
#include <numbers>

#include "crowdfx/kernels.hpp"
#include "crowdfx/rng.hpp"

namespace crowdfx {

VolatilityEstimate estimate_volatility(const PriceSeries& series, Date as_of,
                                       std::optional<Date> history_start) {
  const std::size_t first = history_start ? series.lower_bound(*history_start) : 0;
  const std::size_t last = series.upper_bound(as_of);
  if (last < first + 3) {
    throw DataError("insufficient history: fewer than 3 observations of '" + series.pair_id() +
                    "' up to " + format_date(as_of));
  }
  const std::size_t n = last - first - 1;
  double mean = 0.0;
  for (std::size_t i = first + 1; i < last; ++i) mean += series.value(i) - series.value(i - 1);
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = first + 1; i < last; ++i) {
    const double dev = (series.value(i) - series.value(i - 1)) - mean;
    ss += dev * dev;
  }
  return {as_of, std::sqrt(ss / static_cast<double>(n - 1)), n};
}

std::string_view to_string(StepMode m) {
  return m == StepMode::trading_days ? "trading_days" : "calendar_days";
}

StepMode parse_step_mode(std::string_view text) {
  if (text == "trading_days") return StepMode::trading_days;
  if (text == "calendar_days") return StepMode::calendar_days;
  throw std::invalid_argument("unknown step mode '" + std::string(text) + "'");
}

double simulate_barrier_probability(double x0, double sigma, double barrier,
                                    std::int64_t n_steps, const SimulationParams& params) {
  if (n_steps < 0) throw std::invalid_argument("n_steps must be non-negative");
  if (params.n_paths == 0) throw std::invalid_argument("n_paths must be at least 1");
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be non-negative");
  if (x0 <= barrier) return 1.0;
  if (sigma == 0.0 || n_steps == 0) return 0.0;
  const kernels::BarrierWalk walk{x0, sigma, barrier, n_steps};
  const std::uint64_t hits = kernels::count_crossings(walk, params.seed, params.n_paths,
                                                      params.threads);
  return static_cast<double>(hits) / static_cast<double>(params.n_paths);
}

double analytic_barrier_probability(double x0, double sigma, double barrier,
                                    std::int64_t n_steps) {
  if (x0 <= barrier) return 1.0;
  if (sigma == 0.0 || n_steps <= 0) return 0.0;
  const double z = (barrier - x0) / (sigma * std::sqrt(static_cast<double>(n_steps)));
  // 2 Phi(z) = erfc(-z / sqrt 2)
  return std::erfc(-z * std::numbers::sqrt2 / 2.0);
}

std::int64_t remaining_steps(Date from, Date close, StepMode mode) {
  return mode == StepMode::trading_days ? weekdays_between(from, close)
                                        : days_between(from, close);
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view question_id, Date d) {
  const auto day = static_cast<std::uint64_t>(d.time_since_epoch().count());
  return mix64(mix64(seed ^ mix64(fnv1a64(question_id))) ^ day);
}

ForecastSeries rolling_forecast(const PriceSeries& series, const Question& question,
                                const SimulationParams& params) {
  const Resolution resolution = resolve(series, question);
  const double barrier = threshold_rate(question);

  ForecastSeries out{question.question_id, Source::random_walk, {}};
  const std::size_t first = series.lower_bound(question.scoring_start());
  for (std::size_t i = first; i < series.size() && series[i].date < resolution.resolve_date; ++i) {
    const Date d = series[i].date;
    const VolatilityEstimate vol = estimate_volatility(series, d, question.history_start);
    SimulationParams day_params = params;
    day_params.seed = derive_stream_seed(params.seed, question.question_id, d);
    const double p = simulate_barrier_probability(
        series.value(i), vol.sigma_h, barrier,
        remaining_steps(d, question.close_date, params.step_mode), day_params);
    out.points.push_back({d, p});
  }
  return out;
}

}  // namespace crowdfx
