#include "eetnet/ensemble.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "eetnet/errors.hpp"
#include "eetnet/parallel.hpp"

namespace eetnet {

namespace {

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// Deterministic two-pass estimator over the values selected by `keep`.
MeanStderr reduce(const std::vector<double>& values, const std::vector<char>& keep) {
  std::vector<double> kept;
  kept.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    if (keep.empty() || keep[i]) kept.push_back(values[i]);
  MeanStderr out;
  if (kept.empty()) return out;
  // Degenerate distribution (e.g. sigma = 0): the mean is that value exactly
  // and the spread is zero, with no summation rounding.
  const auto [lo, hi] = std::minmax_element(kept.begin(), kept.end());
  if (*lo == *hi) {
    out.mean = *lo;
    return out;
  }
  const double n = static_cast<double>(kept.size());
  out.mean = pairwise_sum(kept) / n;
  if (kept.size() > 1) {
    std::vector<double> sq(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
      const double d = kept[i] - out.mean;
      sq[i] = d * d;
    }
    out.stderr_ = std::sqrt(pairwise_sum(sq) / (n * (n - 1.0)));
  }
  return out;
}

} // namespace

EnsembleResult run_ensemble(const SiteNetwork& net, const StateSpec& state, double gamma,
                            const DisorderSpec& spec, int threads) {
  validate_network(net);
  validate_disorder(spec, net.n_sites());
  validate_state(state, net.n_sites());
  if (gamma < 0.0) throw ParameterError("gamma must be >= 0");

  const int n_samples = spec.n_samples;
  std::vector<double> t(n_samples), q(n_samples);
  std::vector<char> finite(n_samples, 0);

  parallel_for(static_cast<std::size_t>(n_samples), threads, [&](std::size_t i) {
    const SiteNetwork sample = sample_disorder(net, spec, static_cast<int>(i));
    const LiouvillianParts parts = assemble(sample, gamma);
    const MfptResult mfpt = trapping_time(parts, state);
    t[i] = mfpt.value;
    finite[i] = mfpt.divergent ? 0 : 1;
    q[i] = efficiency_exact(parts, state).q_exact;
  });

  EnsembleResult result;
  result.gamma = gamma;
  result.sigma = spec.sigma.size() ? spec.sigma.maxCoeff() : 0.0;
  result.n_samples = n_samples;
  result.divergent_count =
      n_samples - static_cast<int>(std::count(finite.begin(), finite.end(), 1));
  if (result.divergent_count == n_samples)
    throw EnsembleDegenerateError("every disorder sample has a divergent trapping time");

  const MeanStderr t_stats = reduce(t, finite);
  result.mean_t = t_stats.mean;
  result.stderr_t = t_stats.stderr_;
  const MeanStderr q_stats = reduce(q, {});
  result.mean_q = q_stats.mean;
  result.stderr_q = q_stats.stderr_;
  return result;
}

ScalingFit fit_scaling(std::span<const EnsembleResult> results) {
  std::set<double> gammas, sigmas;
  for (const auto& r : results) {
    if (r.gamma > 0.0 && r.sigma > 0.0 && r.mean_t > 0.0) {
      gammas.insert(r.gamma);
      sigmas.insert(r.sigma);
    }
  }
  if (gammas.size() < 2 || sigmas.size() < 2)
    throw ParameterError("scaling fit needs at least a 2x2 grid of positive points");

  std::vector<const EnsembleResult*> rows;
  for (const auto& r : results)
    if (r.gamma > 0.0 && r.sigma > 0.0 && r.mean_t > 0.0) rows.push_back(&r);
  const int m = static_cast<int>(rows.size());

  Eigen::MatrixXd design(m, 3);
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = std::log10(rows[i]->gamma);
    design(i, 2) = std::log10(rows[i]->sigma);
    y[i] = std::log10(rows[i]->mean_t);
  }
  const Eigen::VectorXd beta = design.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd resid = y - design * beta;

  ScalingFit fit;
  fit.slope_vs_gamma = beta[1];
  fit.slope_vs_sigma = beta[2];
  fit.rms_log_residual = std::sqrt(resid.squaredNorm() / m);
  if (m > 3) {
    const double variance = resid.squaredNorm() / (m - 3);
    const Eigen::MatrixXd cov =
        variance * (design.transpose() * design).inverse();
    fit.slope_vs_gamma_stderr = std::sqrt(cov(1, 1));
    fit.slope_vs_sigma_stderr = std::sqrt(cov(2, 2));
  }

  // Per-gamma c' with the sigma exponent pinned at -1 (t = c'/sigma), then
  // the global c with the gamma exponent pinned at -1/2 (c' = c/sqrt(gamma)).
  // Both are geometric-mean fits in log space.
  std::map<double, std::vector<double>> by_gamma;
  for (const auto* r : rows) by_gamma[r->gamma].push_back(r->mean_t * r->sigma);
  std::vector<double> log_c;
  for (const auto& [gamma, products] : by_gamma) {
    double acc = 0.0;
    for (double p : products) acc += std::log(p);
    const double c_prime = std::exp(acc / static_cast<double>(products.size()));
    fit.c_prime_per_gamma.emplace_back(gamma, c_prime);
    log_c.push_back(std::log(c_prime * std::sqrt(gamma)));
  }
  fit.c = std::exp(pairwise_sum(log_c) / static_cast<double>(log_c.size()));

  // Weak-dephasing regime means Gamma well below sigma (energy units).
  const double max_gamma = *gammas.rbegin();
  const double min_sigma = *sigmas.begin();
  fit.regime_warning = !(max_gamma <= 0.01 * min_sigma);
  return fit;
}

} // namespace eetnet
