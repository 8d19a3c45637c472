#pragma once

#include <span>
#include <string>
#include <vector>

#include "crowdfx/core.hpp"

namespace crowdfx {

/// Same-day pair of a random-walk probability (x) and a crowd probability.
struct PairedSample {
  std::string question_id;
  Date date;
  double x;
  double crowd;
};

/// Inner join of the two sets on (question_id, date), pooled across
/// questions and ordered by (question_id, date). Throws DataError when no
/// pair matches.
std::vector<PairedSample> align_series(std::span<const ForecastSeries> rw,
                                       std::span<const ForecastSeries> crowd);

struct TTest {
  double t;
  double p;  ///< two-sided
};

/// t = (estimate - null) / se and its two-sided Student-t p-value with
/// `df` degrees of freedom. Throws std::invalid_argument for se <= 0 or
/// df < 1.
TTest t_test(double estimate, double se, double null_value, double df);

/// Regularized incomplete beta I_x(a, b). `y` must equal 1 - x; passing it
/// separately keeps precision when x is close to 1.
double regularized_incomplete_beta(double a, double b, double x, double y);

double student_t_cdf(double t, double df);

/// Two-sided tail probability P(|T| >= |t|).
double student_t_two_sided(double t, double df);

struct RegressionResult {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double se0 = 0.0;
  double se1 = 0.0;
  double t0 = 0.0;
  double t1 = 0.0;
  double p0 = 1.0;
  double p1 = 1.0;
  double r_squared = 0.0;
  std::size_t n = 0;
  double null0 = 0.0;
  double null1 = 1.0;
  std::vector<double> residuals;
};

/// OLS of x on crowd (x = beta0 + beta1 crowd + residual) with classical
/// standard errors and t statistics against (null0, null1). Throws
/// std::invalid_argument when n < 3 and DataError("singular design") when
/// the crowd values have zero variance.
RegressionResult ols_fit(std::span<const PairedSample> samples, double null0 = 0.0,
                         double null1 = 1.0);

}  // namespace crowdfx
