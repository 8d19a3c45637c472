// crowdfx: barrier-crossing forecasts, Brier scoring and calibration from
// the command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "crowdfx/calibration.hpp"
#include "crowdfx/engine.hpp"
#include "crowdfx/io.hpp"
#include "crowdfx/pipeline.hpp"
#include "crowdfx/scoring.hpp"

namespace {

using namespace crowdfx;

struct QuestionArgs {
  std::string prices;
  std::string pair_id;
  std::string quote_direction = "usd_per_unit";
  std::string question_id = "q";
  std::string open;
  std::string close;
  std::string kind = "relative_depreciation";
  double threshold = 0.15;
  std::optional<double> baseline;
  std::optional<std::string> scoring_start;
  std::optional<std::string> history_start;

  void add_to(CLI::App* app) {
    app->add_option("--prices", prices, "price CSV (date,rate)")->required()->check(CLI::ExistingFile);
    app->add_option("--pair-id", pair_id, "pair identifier (default: file stem)");
    app->add_option("--quote-direction", quote_direction, "usd_per_unit | units_per_usd");
    app->add_option("--question-id", question_id, "question identifier");
    app->add_option("--open", open, "open date YYYY-MM-DD")->required();
    app->add_option("--close", close, "close date YYYY-MM-DD")->required();
    app->add_option("--kind", kind, "relative_depreciation | absolute_level");
    app->add_option("--threshold", threshold, "depreciation fraction or absolute level");
    app->add_option("--baseline", baseline, "baseline rate (default: first rate on/after open)");
    app->add_option("--scoring-start", scoring_start, "first forecast date");
    app->add_option("--history-start", history_start, "first date used for volatility");
  }

  std::pair<PriceSeries, Question> load() const {
    const std::string id = pair_id.empty() ? std::filesystem::path(prices).stem().string() : pair_id;
    PriceSeries series = ingest_price_csv(prices, id, parse_quote_direction(quote_direction));
    Question q;
    q.question_id = question_id;
    q.pair_id = id;
    q.open_date = parse_date(open);
    q.close_date = parse_date(close);
    q.threshold_kind = parse_threshold_kind(kind);
    q.threshold_value = threshold;
    if (scoring_start) q.scoring_start_date = parse_date(*scoring_start);
    if (history_start) q.history_start = parse_date(*history_start);
    q.baseline_rate = baseline ? *baseline : baseline_from_series(series, q);
    q.validate();
    return {std::move(series), std::move(q)};
  }
};

std::ostream& pick_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-walk barrier forecasts, Brier scoring and forecast calibration"};
  app.require_subcommand(1);

  // forecast
  QuestionArgs fq;
  std::uint64_t f_seed = 0;
  std::uint64_t f_paths = 10000;
  std::string f_step_mode = "trading_days";
  std::string f_out;
  int f_threads = 0;
  auto* forecast = app.add_subcommand("forecast", "rolling random-walk forecast for one question");
  fq.add_to(forecast);
  forecast->add_option("--seed", f_seed, "simulation seed")->required();
  forecast->add_option("--paths", f_paths, "Monte Carlo paths per forecast")->check(CLI::PositiveNumber);
  forecast->add_option("--step-mode", f_step_mode, "trading_days | calendar_days");
  forecast->add_option("--threads", f_threads, "OpenMP threads (0 = runtime default)");
  forecast->add_option("--out", f_out, "output CSV (default stdout)");

  // run
  std::string r_config;
  std::optional<std::uint64_t> r_seed;
  std::optional<std::uint64_t> r_paths;
  std::optional<std::string> r_step_mode;
  std::optional<std::string> r_out;
  int r_threads = 0;
  auto* run = app.add_subcommand("run", "full pipeline from a JSON config");
  run->add_option("config", r_config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", r_seed, "override config seed");
  run->add_option("--paths", r_paths, "override n_paths")->check(CLI::PositiveNumber);
  run->add_option("--step-mode", r_step_mode, "override step mode");
  run->add_option("--out", r_out, "override output directory");
  run->add_option("--threads", r_threads, "OpenMP threads (0 = runtime default)");

  // score
  QuestionArgs sq;
  std::string s_forecast;
  std::string s_out;
  auto* score = app.add_subcommand("score", "score an external forecast CSV against a price CSV");
  sq.add_to(score);
  score->add_option("--forecast", s_forecast, "forecast CSV (date,p)")->required()->check(CLI::ExistingFile);
  score->add_option("--out", s_out, "output CSV (default stdout)");

  // calibrate
  std::string c_x;
  std::string c_crowd;
  double c_null0 = 0.0;
  double c_null1 = 1.0;
  auto* calibrate = app.add_subcommand("calibrate", "regress one forecast CSV on another");
  calibrate->add_option("--x", c_x, "dependent forecast CSV, e.g. random walk (date,p)")
      ->required()->check(CLI::ExistingFile);
  calibrate->add_option("--crowd", c_crowd, "regressor forecast CSV (date,p)")
      ->required()->check(CLI::ExistingFile);
  calibrate->add_option("--null0", c_null0, "intercept null");
  calibrate->add_option("--null1", c_null1, "slope null");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*forecast) {
      auto [series, q] = fq.load();
      SimulationParams params;
      params.seed = f_seed;
      params.n_paths = f_paths;
      params.step_mode = parse_step_mode(f_step_mode);
      params.threads = f_threads;
      const ForecastSeries f = rolling_forecast(series, q, params);
      std::ofstream file;
      std::ostream& out = pick_output(f_out, file);
      out << "date,p\n";
      for (const auto& pt : f.points) out << format_date(pt.date) << ',' << fixed6(pt.p) << '\n';
    } else if (*run) {
      RunConfig cfg = load_config(r_config);
      if (r_seed) cfg.seed = *r_seed;
      if (r_paths) cfg.simulation.n_paths = *r_paths;
      if (r_step_mode) cfg.simulation.step_mode = parse_step_mode(*r_step_mode);
      if (r_out) cfg.output_dir = *r_out;
      cfg.simulation.threads = r_threads;
      const RunReport report = run_pipeline(cfg);
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
      for (const auto& q : report.questions) {
        for (const auto& e : q.errors) {
          std::cerr << "warning: question '" << q.question.question_id << "': " << e << '\n';
        }
      }
      emit_report(report, cfg.output_dir);
      std::cout << "wrote report for " << report.questions.size() << " questions to "
                << cfg.output_dir.string() << '\n';
    } else if (*score) {
      auto [series, q] = sq.load();
      const Resolution r = resolve(series, q);
      const ForecastSeries f = read_forecast_csv(s_forecast, q.question_id, Source::crowd);
      const ScoreSeries s = score_series(f, r);
      std::ofstream file;
      std::ostream& out = pick_output(s_out, file);
      out << "date,score\n";
      double sum = 0.0;
      for (const auto& pt : s.points) {
        out << format_date(pt.date) << ',' << fixed6(pt.score) << '\n';
        sum += pt.score;
      }
      std::cerr << "outcome " << r.outcome << " on " << format_date(r.resolve_date) << "; mean score "
                << (s.points.empty() ? std::string("n/a")
                                     : fixed6(sum / static_cast<double>(s.points.size())))
                << " over " << s.points.size() << " points\n";
    } else if (*calibrate) {
      const ForecastSeries x = read_forecast_csv(c_x, "q", Source::random_walk);
      const ForecastSeries c = read_forecast_csv(c_crowd, "q", Source::crowd);
      const auto samples = align_series(std::span(&x, 1), std::span(&c, 1));
      const RegressionResult r = ols_fit(samples, c_null0, c_null1);
      std::cout << "term,estimate,std_error,null,t_value,p_value\n"
                << "intercept," << fixed6(r.beta0) << ',' << fixed6(r.se0) << ','
                << fixed6(r.null0) << ',' << fixed6(r.t0) << ',' << fixed6(r.p0) << '\n'
                << "crowd," << fixed6(r.beta1) << ',' << fixed6(r.se1) << ',' << fixed6(r.null1)
                << ',' << fixed6(r.t1) << ',' << fixed6(r.p1) << '\n'
                << "r_squared," << fixed6(r.r_squared) << '\n'
                << "n," << r.n << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
