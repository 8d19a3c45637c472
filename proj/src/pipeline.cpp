#include "crowdfx/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "crowdfx/io.hpp"

namespace crowdfx {

void RunConfig::validate() const {
  std::set<std::string> pair_ids;
  for (const auto& p : pairs) {
    if (p.pair_id.empty()) throw std::invalid_argument("pair with empty pair_id");
    if (!pair_ids.insert(p.pair_id).second) {
      throw std::invalid_argument("pair '" + p.pair_id + "' listed twice");
    }
  }
  std::set<std::string> question_ids;
  for (const auto& qc : questions) {
    const Question& q = qc.question;
    if (!question_ids.insert(q.question_id).second) {
      throw std::invalid_argument("question '" + q.question_id + "' listed twice");
    }
    if (!pair_ids.contains(q.pair_id)) {
      throw std::invalid_argument("question '" + q.question_id + "' references pair '" +
                                  q.pair_id + "' which has no price file");
    }
    Question check = q;
    if (qc.baseline_rate) check.baseline_rate = *qc.baseline_rate;
    check.validate();
  }
  if (questions.empty()) throw std::invalid_argument("config defines no questions");
  if (!seed) throw std::invalid_argument("a seed is required (config 'seed' or --seed)");
  if (simulation.n_paths == 0) throw std::invalid_argument("n_paths must be at least 1");
  consensus.validate();
}

namespace {

using nlohmann::json;

std::filesystem::path resolve_path(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::optional<Date> optional_date(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return parse_date(j.at(key).get<std::string>());
}

Question parse_question(const json& j) {
  Question q;
  q.question_id = j.at("question_id").get<std::string>();
  q.pair_id = j.at("pair_id").get<std::string>();
  q.open_date = parse_date(j.at("open_date").get<std::string>());
  q.close_date = parse_date(j.at("close_date").get<std::string>());
  q.threshold_kind = parse_threshold_kind(j.at("threshold_kind").get<std::string>());
  q.threshold_value = j.at("threshold_value").get<double>();
  q.scoring_start_date = optional_date(j, "scoring_start_date");
  q.history_start = optional_date(j, "history_start");
  return q;
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config '" + path.string() + "': " + e.what());
  }
  const std::filesystem::path base = path.parent_path();

  RunConfig cfg;
  try {
    for (const auto& p : j.at("pairs")) {
      PairConfig pc;
      pc.pair_id = p.at("pair_id").get<std::string>();
      pc.price_file = resolve_path(base, p.at("price_file").get<std::string>());
      pc.quote_direction = parse_quote_direction(p.value("quote_direction", "usd_per_unit"));
      pc.floating = p.value("floating", true);
      cfg.pairs.push_back(std::move(pc));
    }
    for (const auto& q : j.at("questions")) {
      QuestionConfig qc{parse_question(q), std::nullopt};
      if (q.contains("baseline_rate") && !q.at("baseline_rate").is_null()) {
        qc.baseline_rate = q.at("baseline_rate").get<double>();
      }
      cfg.questions.push_back(std::move(qc));
    }
    if (j.contains("crowd_file") && !j.at("crowd_file").is_null()) {
      cfg.crowd_file = resolve_path(base, j.at("crowd_file").get<std::string>());
    }
    if (j.contains("external_consensus_file") && !j.at("external_consensus_file").is_null()) {
      cfg.external_consensus_file =
          resolve_path(base, j.at("external_consensus_file").get<std::string>());
    }
    if (j.contains("seed") && !j.at("seed").is_null()) cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.simulation.n_paths = j.value("n_paths", std::uint64_t{10000});
    cfg.simulation.step_mode = parse_step_mode(j.value("step_mode", "trading_days"));
    cfg.consensus.method = parse_consensus_method(j.value("consensus_method", "weighted_median"));
    cfg.consensus.extremize_a = j.value("extremize_a", 2.0);
    cfg.consensus.recency_shape = j.value("recency_shape", 1.0);
    cfg.output_dir = resolve_path(base, j.value("output_dir", "out"));
  } catch (const json::exception& e) {
    throw std::runtime_error("config '" + path.string() + "': " + e.what());
  }
  return cfg;
}

namespace {

std::vector<Date> calendar_days(Date first, Date end_exclusive) {
  std::vector<Date> out;
  for (Date d = first; d < end_exclusive; d += std::chrono::days{1}) out.push_back(d);
  return out;
}

ForecastSeries combine_sources(const ForecastSeries& rw, const ForecastSeries& crowd, double a) {
  ForecastSeries out{rw.question_id, Source::combined, {}};
  const auto pairs = align_series(std::span(&rw, 1), std::span(&crowd, 1));
  for (const auto& s : pairs) {
    const double ps[] = {s.x, s.crowd};
    out.points.push_back({s.date, combine_logit(ps, a)});
  }
  return out;
}

std::optional<LabelledCurve> curve_over(const std::vector<QuestionReport>& questions,
                                        Source source, bool floating, std::string label) {
  std::vector<ScoreSeries> picked;
  for (const auto& q : questions) {
    if (q.floating != floating) continue;
    auto it = q.scores.find(source);
    if (it != q.scores.end() && !it->second.points.empty()) picked.push_back(it->second);
  }
  if (picked.empty()) return std::nullopt;
  DateRange range{picked.front().points.front().date, picked.front().points.back().date};
  for (const auto& s : picked) {
    range.first = std::min(range.first, s.points.front().date);
    range.last = std::max(range.last, s.points.back().date);
  }
  return LabelledCurve{std::move(label), mean_score_curve(picked, range)};
}

}  // namespace

RunReport run_pipeline(const RunConfig& config) {
  config.validate();
  SimulationParams sim = config.simulation;
  sim.seed = *config.seed;

  std::map<std::string, const PairConfig*> pair_by_id;
  for (const auto& p : config.pairs) pair_by_id[p.pair_id] = &p;

  std::vector<const QuestionConfig*> ordered;
  for (const auto& q : config.questions) ordered.push_back(&q);
  std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
    return a->question.question_id < b->question.question_id;
  });

  std::map<std::string, PriceSeries> prices;
  for (const auto& [id, pc] : pair_by_id) {
    prices.emplace(id, ingest_price_csv(pc->price_file, id, pc->quote_direction));
  }

  RunReport report;
  std::vector<CrowdRecord> records;
  if (config.crowd_file) records = read_crowd_csv(*config.crowd_file);
  std::map<std::string, ForecastSeries> external;
  if (config.external_consensus_file) external = read_consensus_csv(*config.external_consensus_file);
  const bool have_crowd = !records.empty() || !external.empty();
  if (!have_crowd) {
    report.warnings.push_back(
        "no crowd forecasts supplied; crowd, combined and calibration outputs skipped");
  }

  std::size_t resolved = 0;
  for (const QuestionConfig* qc : ordered) {
    QuestionReport qr;
    qr.question = qc->question;
    const PairConfig& pair = *pair_by_id.at(qr.question.pair_id);
    const PriceSeries& series = prices.at(pair.pair_id);
    qr.floating = pair.floating;

    try {
      qr.question.baseline_rate =
          qc->baseline_rate ? *qc->baseline_rate : baseline_from_series(series, qr.question);
      qr.resolution = resolve(series, qr.question);
      ++resolved;
    } catch (const std::exception& e) {
      qr.errors.push_back(std::string("resolution: ") + e.what());
      report.questions.push_back(std::move(qr));
      continue;
    }

    if (qr.floating) {
      try {
        qr.forecasts[Source::random_walk] = rolling_forecast(series, qr.question, sim);
      } catch (const std::exception& e) {
        qr.errors.push_back(std::string("random_walk: ") + e.what());
      }
    }

    if (have_crowd) {
      try {
        auto ext = external.find(qr.question.question_id);
        ForecastSeries crowd;
        if (ext != external.end()) {
          crowd = ext->second;
          std::erase_if(crowd.points, [&](const ForecastPoint& p) {
            return p.date < qr.question.scoring_start() ||
                   p.date >= qr.resolution->resolve_date;
          });
        } else {
          const auto dates =
              calendar_days(qr.question.scoring_start(), qr.resolution->resolve_date);
          crowd = crowd_series(records, qr.question, dates, config.consensus);
        }
        if (!crowd.points.empty()) qr.forecasts[Source::crowd] = std::move(crowd);
      } catch (const std::exception& e) {
        qr.errors.push_back(std::string("crowd: ") + e.what());
      }
    }

    auto rw = qr.forecasts.find(Source::random_walk);
    auto cr = qr.forecasts.find(Source::crowd);
    if (rw != qr.forecasts.end() && cr != qr.forecasts.end()) {
      try {
        qr.forecasts[Source::combined] =
            combine_sources(rw->second, cr->second, config.consensus.extremize_a);
      } catch (const DataError&) {
        // no common dates; nothing to combine
      }
    }

    for (const auto& [source, f] : qr.forecasts) qr.scores[source] = score_series(f, *qr.resolution);
    report.questions.push_back(std::move(qr));
  }
  if (resolved == 0) throw DataError("every question failed to resolve");

  for (const auto& [source, floating, label] :
       {std::tuple{Source::random_walk, true, "random_walk"}, std::tuple{Source::crowd, true, "crowd"},
        std::tuple{Source::combined, true, "combined"},
        std::tuple{Source::crowd, false, "crowd_nonfloating"}}) {
    if (auto c = curve_over(report.questions, source, floating, label)) {
      report.curves.push_back(std::move(*c));
    }
  }

  std::vector<ForecastSeries> rw_all;
  std::vector<ForecastSeries> crowd_all;
  for (const auto& q : report.questions) {
    if (auto it = q.forecasts.find(Source::random_walk); it != q.forecasts.end()) {
      rw_all.push_back(it->second);
    }
    if (auto it = q.forecasts.find(Source::crowd); it != q.forecasts.end() && q.floating) {
      crowd_all.push_back(it->second);
    }
  }
  if (!rw_all.empty() && !crowd_all.empty()) {
    try {
      const auto samples = align_series(rw_all, crowd_all);
      report.calibration = ols_fit(samples);
    } catch (const std::exception& e) {
      report.warnings.push_back(std::string("calibration skipped: ") + e.what());
    }
  }
  return report;
}

namespace {

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

void write_calibration(const std::filesystem::path& path, const RegressionResult& r) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "# OLS: random_walk = beta0 + beta1 * crowd + residual, pooled over questions and dates\n"
      << "# classical (homoskedastic) standard errors; daily samples are serially correlated,\n"
      << "# so the tests are descriptive\n"
      << "term,estimate,std_error,null,t_value,p_value\n"
      << "intercept," << fixed6(r.beta0) << ',' << fixed6(r.se0) << ',' << fixed6(r.null0) << ','
      << fixed6(r.t0) << ',' << fixed6(r.p0) << '\n'
      << "crowd," << fixed6(r.beta1) << ',' << fixed6(r.se1) << ',' << fixed6(r.null1) << ','
      << fixed6(r.t1) << ',' << fixed6(r.p1) << '\n'
      << "r_squared," << fixed6(r.r_squared) << '\n'
      << "n," << r.n << '\n';
  if (!out.flush()) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

void emit_report(const RunReport& report, const std::filesystem::path& output_dir) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + output_dir.string() + "': " + ec.message());

  for (const auto& q : report.questions) {
    const std::string& id = q.question.question_id;
    for (const auto& [source, f] : q.forecasts) {
      write_forecast_csv(output_dir / ("forecast_" + id + "_" + std::string(to_string(source)) + ".csv"), f);
    }
    for (const auto& [source, s] : q.scores) {
      write_score_csv(output_dir / ("scores_" + id + "_" + std::string(to_string(source)) + ".csv"), s);
    }
  }
  for (const auto& c : report.curves) {
    write_mean_curve_csv(output_dir / ("mean_scores_" + c.label + ".csv"), c.curve);
  }
  if (report.calibration) write_calibration(output_dir / "calibration.txt", *report.calibration);

  const auto res_path = output_dir / "resolutions.csv";
  std::ofstream out(res_path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + res_path.string() + "'");
  out << "question_id,pair_id,floating,status,outcome,resolve_date,baseline_rate,threshold_rate,note\n";
  for (const auto& q : report.questions) {
    std::string note;
    for (const auto& e : q.errors) note += (note.empty() ? "" : " | ") + sanitize(e);
    out << q.question.question_id << ',' << q.question.pair_id << ','
        << (q.floating ? "true" : "false") << ',';
    if (q.resolution) {
      out << (q.errors.empty() ? "ok" : "partial") << ',' << q.resolution->outcome << ','
          << format_date(q.resolution->resolve_date) << ',' << fixed6(q.question.baseline_rate)
          << ',' << fixed6(threshold_rate(q.question)) << ',' << note << '\n';
    } else {
      out << "failed,,,,," << note << '\n';
    }
  }
  if (!out.flush()) throw std::runtime_error("write failed for '" + res_path.string() + "'");
}

}  // namespace crowdfx
