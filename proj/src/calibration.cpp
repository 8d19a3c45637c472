#include "crowdfx/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace crowdfx {

std::vector<PairedSample> align_series(std::span<const ForecastSeries> rw,
                                       std::span<const ForecastSeries> crowd) {
  std::map<std::string, const ForecastSeries*> crowd_by_id;
  for (const auto& s : crowd) crowd_by_id[s.question_id] = &s;
  std::map<std::string, const ForecastSeries*> rw_by_id;
  for (const auto& s : rw) rw_by_id[s.question_id] = &s;

  std::vector<PairedSample> out;
  for (const auto& [id, rw_series] : rw_by_id) {
    auto it = crowd_by_id.find(id);
    if (it == crowd_by_id.end()) continue;
    const auto& a = rw_series->points;
    const auto& b = it->second->points;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i].date < b[j].date) {
        ++i;
      } else if (b[j].date < a[i].date) {
        ++j;
      } else {
        out.push_back({id, a[i].date, a[i].p, b[j].p});
        ++i;
        ++j;
      }
    }
  }
  if (out.empty()) throw DataError("align_series: no common (question, date) pairs");
  return out;
}

namespace {

// Stirling-series remainder of ln Gamma(z); accurate to ~1e-12 for z >= 10.
double stirling_correction(double z) {
  const double z2 = z * z;
  return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * z2)) / z2) / z2) / z;
}

// ln Gamma(a) - ln Gamma(a + b) without cancellation for large a.
double log_gamma_ratio(double a, double b) {
  if (a < 10.0) return std::lgamma(a) - std::lgamma(a + b);
  return -(a - 0.5) * std::log1p(b / a) - b * std::log(a + b) + b + stirling_correction(a) -
         stirling_correction(a + b);
}

double log_beta(double a, double b) {
  if (a < b) std::swap(a, b);
  return std::lgamma(b) + log_gamma_ratio(a, b);
}

// Continued fraction for I_x(a, b) (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  constexpr int kMaxIter = 1'000'000;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x, double y) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("incomplete beta: a, b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("incomplete beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (y == 0.0) return 1.0;
  // log1p keeps a * ln(x) exact enough when x is within 1e-6 of one and a is huge
  const double log_x = x > 0.5 ? std::log1p(-y) : std::log(x);
  const double log_y = y > 0.5 ? std::log1p(-x) : std::log(y);
  const double log_front = a * log_x + b * log_y - log_beta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, y) / b;
}

double student_t_two_sided(double t, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("student t: df must be positive");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  // P(|T| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2)
  const double t2 = t * t;
  const double x = df / (df + t2);
  const double y = t2 / (df + t2);
  return std::clamp(regularized_incomplete_beta(df / 2.0, 0.5, x, y), 0.0, 1.0);
}

double student_t_cdf(double t, double df) {
  const double tail = 0.5 * student_t_two_sided(t, df);
  return t < 0.0 ? tail : 1.0 - tail;
}

TTest t_test(double estimate, double se, double null_value, double df) {
  if (!(se > 0.0)) throw std::invalid_argument("t_test: standard error must be positive");
  if (!(df >= 1.0)) throw std::invalid_argument("t_test: df must be at least 1");
  const double t = (estimate - null_value) / se;
  return {t, student_t_two_sided(t, df)};
}

namespace {

TTest t_test_or_degenerate(double estimate, double se, double null_value, double df) {
  if (se > 0.0) return t_test(estimate, se, null_value, df);
  // exact fit: any deviation from the null is infinitely significant
  const double diff = estimate - null_value;
  if (diff == 0.0) return {0.0, 1.0};
  return {std::copysign(std::numeric_limits<double>::infinity(), diff), 0.0};
}

}  // namespace

RegressionResult ols_fit(std::span<const PairedSample> samples, double null0, double null1) {
  const std::size_t n = samples.size();
  if (n < 3) throw std::invalid_argument("ols_fit: need at least 3 samples");
  const double nd = static_cast<double>(n);

  double mean_c = 0.0;
  double mean_x = 0.0;
  for (const auto& s : samples) {
    mean_c += s.crowd;
    mean_x += s.x;
  }
  mean_c /= nd;
  mean_x /= nd;

  double scc = 0.0;
  double scx = 0.0;
  double sxx = 0.0;
  for (const auto& s : samples) {
    const double dc = s.crowd - mean_c;
    const double dx = s.x - mean_x;
    scc += dc * dc;
    scx += dc * dx;
    sxx += dx * dx;
  }
  if (!(scc > 0.0)) throw DataError("singular design: crowd values have zero variance");

  RegressionResult r;
  r.n = n;
  r.null0 = null0;
  r.null1 = null1;
  r.beta1 = scx / scc;
  r.beta0 = mean_x - r.beta1 * mean_c;

  double ssr = 0.0;
  r.residuals.reserve(n);
  for (const auto& s : samples) {
    const double e = s.x - (r.beta0 + r.beta1 * s.crowd);
    r.residuals.push_back(e);
    ssr += e * e;
  }
  const double df = nd - 2.0;
  const double sigma2 = ssr / df;
  r.se1 = std::sqrt(sigma2 / scc);
  r.se0 = std::sqrt(sigma2 * (1.0 / nd + mean_c * mean_c / scc));
  r.r_squared = sxx > 0.0 ? std::clamp(1.0 - ssr / sxx, 0.0, 1.0) : 1.0;

  const TTest a = t_test_or_degenerate(r.beta0, r.se0, null0, df);
  const TTest b = t_test_or_degenerate(r.beta1, r.se1, null1, df);
  r.t0 = a.t;
  r.p0 = a.p;
  r.t1 = b.t;
  r.p1 = b.p;
  return r;
}

}  // namespace crowdfx
