#include "crowdfx/crowd.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace crowdfx {

std::string_view to_string(ConsensusMethod m) {
  return m == ConsensusMethod::weighted_median ? "weighted_median" : "logit_combine";
}

ConsensusMethod parse_consensus_method(std::string_view text) {
  if (text == "weighted_median") return ConsensusMethod::weighted_median;
  if (text == "logit_combine") return ConsensusMethod::logit_combine;
  throw std::invalid_argument("unknown consensus method '" + std::string(text) + "'");
}

void ConsensusParams::validate() const {
  if (!(extremize_a > 0.0)) throw std::invalid_argument("extremize_a must be positive");
  if (!(recency_shape >= 0.0)) throw std::invalid_argument("recency_shape must be non-negative");
}

std::vector<LatestForecast> latest_per_forecaster(std::span<const CrowdRecord> records,
                                                  Timestamp at) {
  struct Latest {
    Timestamp when;
    double p;
  };
  std::map<std::string, Latest> latest;
  for (const auto& r : records) {
    if (r.at > at) continue;
    auto [it, inserted] = latest.try_emplace(r.forecaster_id, Latest{r.at, r.p});
    if (!inserted && r.at >= it->second.when) it->second = {r.at, r.p};
  }

  std::vector<std::pair<const std::string*, const Latest*>> order;
  order.reserve(latest.size());
  for (const auto& [id, l] : latest) order.emplace_back(&id, &l);
  // std::map iterates ids in order, so a stable sort on time breaks ties by id
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.second->when < b.second->when; });

  std::vector<LatestForecast> out;
  out.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.push_back({*order[i].first, order[i].second->p, i + 1});
  }
  return out;
}

double community_prediction(std::span<const LatestForecast> snapshot,
                            const ConsensusParams& params) {
  if (snapshot.empty()) throw DataError("no forecasts");
  params.validate();
  std::vector<std::pair<double, double>> weighted;  // (p, weight)
  weighted.reserve(snapshot.size());
  for (const auto& f : snapshot) {
    weighted.emplace_back(f.p, std::exp(params.recency_shape *
                                        std::sqrt(static_cast<double>(f.age_rank))));
  }
  std::sort(weighted.begin(), weighted.end());
  double total = 0.0;
  for (const auto& w : weighted) total += w.second;
  double cumulative = 0.0;
  for (const auto& [p, w] : weighted) {
    cumulative += w;
    if (2.0 * cumulative >= total) return p;
  }
  return weighted.back().first;
}

double combine_logit(std::span<const double> ps, double a) {
  if (ps.empty()) throw std::invalid_argument("combine_logit: no probabilities");
  if (!(a > 0.0)) throw std::invalid_argument("combine_logit: extremizing exponent must be positive");
  double sum = 0.0;
  for (double p : ps) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("combine_logit: p outside [0, 1]");
    const double c = std::clamp(p, kLogitClamp, 1.0 - kLogitClamp);
    sum += std::log(c) - std::log1p(-c);
  }
  const double z = a * sum / static_cast<double>(ps.size());
  return 1.0 / (1.0 + std::exp(-z));
}

ForecastSeries crowd_series(std::span<const CrowdRecord> records, const Question& question,
                            std::span<const Date> sample_dates, const ConsensusParams& params) {
  params.validate();
  std::vector<CrowdRecord> mine;
  for (const auto& r : records) {
    if (r.question_id == question.question_id) mine.push_back(r);
  }
  ForecastSeries out{question.question_id, Source::crowd, {}};
  std::vector<double> ps;
  for (Date d : sample_dates) {
    const auto snapshot = latest_per_forecaster(mine, end_of_day(d));
    if (snapshot.empty()) continue;
    double p = 0.0;
    if (params.method == ConsensusMethod::weighted_median) {
      p = community_prediction(snapshot, params);
    } else {
      ps.clear();
      for (const auto& f : snapshot) ps.push_back(f.p);
      p = combine_logit(ps, params.extremize_a);
    }
    out.points.push_back({d, p});
  }
  return out;
}

}  // namespace crowdfx
