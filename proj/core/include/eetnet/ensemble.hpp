#ifndef EETNET_ENSEMBLE_HPP
#define EETNET_ENSEMBLE_HPP

#include <span>
#include <utility>
#include <vector>

#include "eetnet/mfpt.hpp"
#include "eetnet/network.hpp"

namespace eetnet {

/// Disorder-averaged observables at one (gamma, sigma) point. Divergent
/// samples are excluded from the time statistics and counted; efficiency is
/// averaged over every sample (the full Liouvillian stays invertible).
struct EnsembleResult {
  double gamma = 0.0;
  double sigma = 0.0;  // max sigma_i of the DisorderSpec (the scalar for uniform disorder)
  int n_samples = 0;
  double mean_t = 0.0;
  double stderr_t = 0.0;
  double mean_q = 0.0;
  double stderr_q = 0.0;
  int divergent_count = 0;
};

/// Monte Carlo over disorder realizations. Sample i draws its own RNG
/// stream from (spec.seed, i) and results are reduced in index order with
/// pairwise summation, so the outcome is bitwise independent of the thread
/// count. Throws EnsembleDegenerateError if every sample is divergent.
EnsembleResult run_ensemble(const SiteNetwork& net, const StateSpec& state, double gamma,
                            const DisorderSpec& spec, int threads = 0);

/// Joint log-log fit of mean_t over a (gamma, sigma) grid:
///   log t = b0 + slope_vs_gamma log(gamma) + slope_vs_sigma log(sigma),
/// plus the constrained per-gamma coefficients c'(Gamma) of t = c'/sigma and
/// the global c of c' = c/sqrt(Gamma).
struct ScalingFit {
  double slope_vs_gamma = 0.0;
  double slope_vs_gamma_stderr = 0.0;
  double slope_vs_sigma = 0.0;
  double slope_vs_sigma_stderr = 0.0;
  std::vector<std::pair<double, double>> c_prime_per_gamma;  // (gamma, c')
  double c = 0.0;
  double rms_log_residual = 0.0;
  bool regime_warning = false;  // grid not clearly in the weak-dephasing regime
};

ScalingFit fit_scaling(std::span<const EnsembleResult> results);

} // namespace eetnet

#endif
