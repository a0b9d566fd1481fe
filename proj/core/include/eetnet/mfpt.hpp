#ifndef EETNET_MFPT_HPP
#define EETNET_MFPT_HPP

#include <vector>

#include "eetnet/liouville.hpp"

namespace eetnet {

/// Average trapping time from the resolvent of the decay-free generator:
/// solve L0 vec(X) = vec(rho(0)), return Tr X. Divergence (singular L0,
/// e.g. Gamma = 0 with population in the trapping-free subspace) is a
/// reported outcome, not an exception: huge-but-finite times at tiny Gamma
/// are legitimate results.
struct MfptResult {
  double value = 0.0;
  bool divergent = false;
  double condition_estimate = 0.0;
  double residual = 0.0;
};

MfptResult trapping_time(const LiouvillianParts& parts, const StateSpec& state);

/// Exact efficiency from the full resolvent: solve L vec(X) = vec(rho(0)),
/// q_exact = k_t X_tt, q_decay = k_d Tr X. Throws SingularOperatorError if
/// L is singular (cannot happen for k_d > 0).
struct EfficiencyResult {
  double q_exact = 0.0;
  double q_decay = 0.0;
  double condition_estimate = 0.0;
};

EfficiencyResult efficiency_exact(const LiouvillianParts& parts, const StateSpec& state);

/// q ~= 1/(1 + k_d <t>); a divergent <t> maps to the limiting value 0.
struct ApproxEfficiency {
  double value = 0.0;
  bool divergent_limit = false;
};

double efficiency_approx(double mfpt, double decay_rate);
ApproxEfficiency efficiency_approx(const MfptResult& mfpt, double decay_rate);

/// One sweep point: trapping time plus the three efficiency figures.
struct TransferResult {
  double gamma = 0.0;
  double mfpt = 0.0;
  bool divergent = false;
  double q_exact = 0.0;
  double q_approx = 0.0;
  double q_decay = 0.0;
  double condition_estimate = 0.0;
};

TransferResult compute_transfer(const LiouvillianParts& parts, const StateSpec& state);

/// Evaluate compute_transfer over a gamma grid (points are independent and
/// run in parallel; output order follows the grid).
std::vector<TransferResult> sweep_gamma(const SiteNetwork& net, const StateSpec& state,
                                        const std::vector<double>& gammas, int threads = 0);

/// Shared linear-solve kernel for the vectorized generators: pivoted dense
/// LU with iterative refinement up to dim <= 4096, ILUT-preconditioned
/// BiCGSTAB (sparse LU fallback) above.
struct SuperOpSolve {
  Eigen::VectorXcd x;
  double condition_estimate = 0.0;
  double rel_residual = 0.0;
  bool ok = false;
};

SuperOpSolve solve_superop(const SparseSuperOp& op, const Eigen::VectorXcd& rhs);

} // namespace eetnet

#endif
