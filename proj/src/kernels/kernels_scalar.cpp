#include <cmath>

#include "bvsmed/kernels/kernels.hpp"
#include "bvsmed/mathutil.hpp"

// Reference kernels. Plain loops, no manual unrolling: these define the
// semantics the SIMD variants are equivalence-tested against.

namespace bvsmed::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double sumsq_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double sumsq_scaled_diff_scalar(const double* e, const double* u, double c, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = e[i] - c * u[i];
    acc += d * d;
  }
  return acc;
}

double logit_loglik_scalar(const double* y, const double* eta, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += y[i] * eta[i] - math::log1pexp(eta[i]);
  }
  return acc;
}

void logit_resid_scalar(const double* y, const double* eta, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = y[i] - math::logistic(eta[i]);
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops table{
      "scalar",
      dot_scalar,
      sum_scalar,
      sumsq_scalar,
      axpy_scalar,
      sumsq_scaled_diff_scalar,
      logit_loglik_scalar,
      logit_resid_scalar,
  };
  return table;
}

}  // namespace bvsmed::kernels
