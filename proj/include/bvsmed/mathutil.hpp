#pragma once

#include <cmath>
#include <limits>

#include "bvsmed/errors.hpp"

namespace bvsmed::math {

inline constexpr double kLog2Pi = 1.8378770664093454835606594728112353;
inline constexpr double kSqrt2 = 1.4142135623730950488016887242096981;
inline constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;

inline double logit(double p) { return std::log(p) - std::log1p(-p); }

/// Numerically stable logistic(x) = 1/(1+exp(-x)).
inline double logistic(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

/// log(1 + exp(x)) without overflow for large |x|.
inline double log1pexp(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

inline double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

/// Scaled complementary error function exp(z^2) erfc(z), stable for large z.
inline double erfcx(double z) {
  if (z < 0.0) return 2.0 * std::exp(z * z) - erfcx(-z);
  if (z < 25.0) return std::exp(z * z) * std::erfc(z);
  // asymptotic series, |error| < 1e-16 for z >= 25
  const double iz2 = 1.0 / (z * z);
  return (1.0 / (z * 1.7724538509055160273)) *
         (1.0 + iz2 * (-0.5 + iz2 * (0.75 - 1.875 * iz2)));
}

/// log Phi(x), accurate into the deep lower tail.
inline double norm_logcdf(double x) {
  if (x > -1.0) return std::log1p(-0.5 * std::erfc(x / kSqrt2));
  const double z = -x / kSqrt2;
  return std::log(0.5 * erfcx(z)) - z * z;
}

/// Inverse Mills ratio phi(x)/Phi(x); ~ -x for x -> -inf.
inline double inv_mills(double x) {
  const double z = -x / kSqrt2;
  return 2.0 * kInvSqrt2Pi / erfcx(z);
}

/// Gaussian log density.
inline double norm_logpdf(double x, double mean, double var) {
  const double d = x - mean;
  return -0.5 * (kLog2Pi + std::log(var) + d * d / var);
}

/// Normal quantile, Wichura's AS 241 (PPND16), |relative error| ~ 1e-15.
inline double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw numeric_error("norm_quantile: p outside (0,1)");
  const double q = p - 0.5;
  double r;
  if (std::fabs(q) <= 0.425) {
    r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
              3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
            4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
              6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
            2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
              2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
            5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
              1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
            5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -val : val;
}

}  // namespace bvsmed::math
