#pragma once

#include <cstddef>
#include <string>

namespace bvsmed::kernels {

/// Table of hot-loop kernels. One scalar reference implementation and one AVX2
/// implementation exist for every entry; the active table is chosen once at
/// startup from CPU capabilities (override with BVSMED_KERNELS=scalar|avx2).
/// Kernels carry no state; all MCMC logic stays above this layer.
struct Ops {
  const char* name;

  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  double (*sumsq)(const double* x, std::size_t n);
  /// y += a*x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  /// sum_i (e_i - c*u_i)^2
  double (*sumsq_scaled_diff)(const double* e, const double* u, double c, std::size_t n);
  /// sum_i [ y_i*eta_i - log(1+exp(eta_i)) ]   (Bernoulli-logit log likelihood)
  double (*logit_loglik)(const double* y, const double* eta, std::size_t n);
  /// out_i = y_i - logistic(eta_i)             (Bernoulli-logit dl/deta)
  void (*logit_resid)(const double* y, const double* eta, double* out, std::size_t n);
};

const Ops& scalar_ops();
bool avx2_available();
const Ops& avx2_ops();  // only valid when avx2_available()

/// Active table (dispatched once, thread-safe).
const Ops& ops();

/// Force a table by name ("scalar" / "avx2"); throws on unknown/unsupported.
/// Intended for tests and the CLI --kernels flag.
void force(const std::string& name);

/// Name of the active table, for run manifests.
std::string active_name();

}  // namespace bvsmed::kernels
