#pragma once

#include <cmath>
#include <string>

#include "peakspread/errors.hpp"
#include "peakspread/money.hpp"

namespace peakspread {
namespace normal {

inline constexpr double kSqrt2 = 1.4142135623730951;
inline constexpr double kSqrt2Pi = 2.5066282746310002;

inline double cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

inline double pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

// Inverse standard normal CDF: Acklam's rational approximation (relative
// error below 1.15e-9) followed by one Halley refinement against the
// erfc-based CDF, which lands within a few ulp.
inline double quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("normal quantile needs a probability in (0, 1), got " +
                      std::to_string(p));
  }
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  const double err = cdf(x) - p;
  const double u = err * kSqrt2Pi * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace normal

// Gaussian willingness-to-pay distribution truncated at zero and
// renormalised: negative trade-off rates are meaningless. Parameters are the
// mean and standard deviation of the untruncated Gaussian, in dollars per
// minute on the fixed-point grid.
class TruncatedGaussian {
 public:
  TruncatedGaussian(Rate mean, Rate stddev)
      : mean_rate_(mean), stddev_rate_(stddev) {
    if (stddev <= Rate::zero() || stddev.is_prohibitive() ||
        mean.is_prohibitive()) {
      throw ValidationError("distribution needs a finite mean and a positive "
                            "finite standard deviation");
    }
    mu_ = mean.to_dollars_per_min();
    sigma_ = stddev.to_dollars_per_min();
    below_zero_ = normal::cdf((0.0 - mu_) / sigma_);
    kept_ = 1.0 - below_zero_;
  }

  Rate mean_rate() const { return mean_rate_; }
  Rate stddev_rate() const { return stddev_rate_; }
  double mean() const { return mu_; }
  double stddev() const { return sigma_; }

  // P(b <= value), in dollars per minute.
  double cdf(double value) const {
    if (value <= 0.0) return 0.0;
    const double raw = normal::cdf((value - mu_) / sigma_);
    const double trimmed = (raw - below_zero_) / kept_;
    return std::min(1.0, std::max(0.0, trimmed));
  }

  double pdf(double value) const {
    if (value < 0.0) return 0.0;
    return normal::pdf((value - mu_) / sigma_) / (sigma_ * kept_);
  }

  // Value with P(b <= value) = probability, for probability in (0, 1).
  double quantile(double probability) const {
    if (!(probability > 0.0 && probability < 1.0)) {
      throw DomainError("truncated quantile needs a probability in (0, 1)");
    }
    const double lifted = below_zero_ + probability * kept_;
    const double value = mu_ + sigma_ * normal::quantile(lifted);
    return std::max(0.0, value);
  }

  // Inverse-CDF sample from a uniform draw in (0, 1).
  double sample(double uniform01) const { return quantile(uniform01); }

 private:
  Rate mean_rate_;
  Rate stddev_rate_;
  double mu_;
  double sigma_;
  double below_zero_;  // untruncated mass below zero
  double kept_;        // renormalisation constant
};

}  // namespace peakspread
