#include "eetnet/mfpt.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <cmath>
#include <limits>

#include "eetnet/errors.hpp"
#include "eetnet/parallel.hpp"

namespace eetnet {

namespace {

constexpr int kDenseDimLimit = 4096;   // superoperator dimension n^2
// Acceptable normwise backward error ||A x - b|| / (||A|| ||x|| + ||b||);
// a backward-stable solve sits at machine epsilon.
constexpr double kBackwardTarget = 1e-13;
constexpr double kBackwardLimit = 1e-6;
// Divergence signal: no significant digits remain (cond * eps > 0.5). Near-
// singular solves at tiny Gamma stay well below this: the slow rate is
// bounded from below by Gamma times the smallest dephasing-block eigenvalue,
// independent of how weak the disorder is.
constexpr double kDivergentCondition = 0.5 / std::numeric_limits<double>::epsilon();

double op_norm1(const SparseSuperOp& op) {
  double best = 0.0;
  for (int k = 0; k < op.outerSize(); ++k) {
    double col = 0.0;
    for (SparseSuperOp::InnerIterator it(op, k); it; ++it) col += std::abs(it.value());
    best = std::max(best, col);
  }
  return best;
}

double backward_error(const SparseSuperOp& op, double op_norm,
                      const Eigen::VectorXcd& x, const Eigen::VectorXcd& rhs) {
  return (op * x - rhs).norm() / (op_norm * x.norm() + rhs.norm());
}

SuperOpSolve solve_dense(const SparseSuperOp& op, const Eigen::VectorXcd& rhs) {
  SuperOpSolve out;
  Eigen::MatrixXcd dense(op);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(dense);
  const double rcond = lu.rcond();
  out.condition_estimate = (rcond > 0.0 && std::isfinite(rcond))
                               ? 1.0 / rcond
                               : std::numeric_limits<double>::infinity();
  const double norm1 = op_norm1(op);
  out.x = lu.solve(rhs);
  if (!out.x.allFinite()) {
    out.rel_residual = std::numeric_limits<double>::infinity();
    return out;
  }
  out.rel_residual = backward_error(op, norm1, out.x, rhs);
  for (int pass = 0; pass < 4 && out.rel_residual > kBackwardTarget; ++pass) {
    Eigen::VectorXcd r = rhs - op * out.x;
    Eigen::VectorXcd dx = lu.solve(r);
    if (!dx.allFinite()) break;
    const Eigen::VectorXcd refined = out.x + dx;
    const double res = backward_error(op, norm1, refined, rhs);
    if (res >= 0.5 * out.rel_residual) break;  // stagnated
    out.x = refined;
    out.rel_residual = res;
  }
  out.ok = out.rel_residual <= kBackwardLimit;
  return out;
}

SuperOpSolve solve_sparse(const SparseSuperOp& op, const Eigen::VectorXcd& rhs) {
  SuperOpSolve out;
  const double norm1 = op_norm1(op);
  Eigen::BiCGSTAB<SparseSuperOp, Eigen::IncompleteLUT<Complex>> bicg;
  bicg.setTolerance(1e-13);
  bicg.setMaxIterations(8 * op.rows());
  bicg.compute(op);
  if (bicg.preconditioner().info() == Eigen::Success && bicg.info() == Eigen::Success) {
    out.x = bicg.solve(rhs);
    if (out.x.allFinite()) out.rel_residual = backward_error(op, norm1, out.x, rhs);
    else out.rel_residual = std::numeric_limits<double>::infinity();
  } else {
    out.rel_residual = std::numeric_limits<double>::infinity();
  }
  if (out.rel_residual > kBackwardTarget) {
    Eigen::SparseLU<SparseSuperOp> slu(op);
    if (slu.info() == Eigen::Success) {
      Eigen::VectorXcd x = slu.solve(rhs);
      if (x.allFinite()) {
        const double res = backward_error(op, norm1, x, rhs);
        if (res < out.rel_residual || !out.x.size()) {
          out.x = x;
          out.rel_residual = res;
        }
      }
    }
  }
  if (!out.x.size()) out.x = Eigen::VectorXcd::Zero(rhs.size());
  // No cheap spectral estimate for the sparse path; report the scaling
  // ||op|| ||x|| / ||rhs||, a lower bound on the condition number.
  const double rhs_norm = rhs.norm();
  out.condition_estimate = rhs_norm > 0.0 ? norm1 * out.x.norm() / rhs_norm : 0.0;
  out.ok = out.rel_residual <= kBackwardLimit;
  return out;
}

} // namespace

SuperOpSolve solve_superop(const SparseSuperOp& op, const Eigen::VectorXcd& rhs) {
  if (op.rows() != rhs.size()) throw ParameterError("rhs dimension mismatch");
  return op.rows() <= kDenseDimLimit ? solve_dense(op, rhs) : solve_sparse(op, rhs);
}

MfptResult trapping_time(const LiouvillianParts& parts, const StateSpec& state) {
  validate_state(state, parts.n);
  const Eigen::VectorXcd rhs =
      Eigen::Map<const Eigen::VectorXcd>(state.rho0.data(), parts.dim());
  const SuperOpSolve solve = solve_superop(parts.total_no_decay(), rhs);

  MfptResult result;
  result.condition_estimate = solve.condition_estimate;
  result.residual = solve.rel_residual;
  double trace = 0.0;
  for (int i = 0; i < parts.n; ++i) trace += solve.x[i * (parts.n + 1)].real();
  result.value = trace;
  result.divergent = !solve.ok || !std::isfinite(trace) ||
                     solve.condition_estimate > kDivergentCondition;
  return result;
}

EfficiencyResult efficiency_exact(const LiouvillianParts& parts, const StateSpec& state) {
  validate_state(state, parts.n);
  const Eigen::VectorXcd rhs =
      Eigen::Map<const Eigen::VectorXcd>(state.rho0.data(), parts.dim());
  const SuperOpSolve solve = solve_superop(parts.total(), rhs);
  if (!solve.ok)
    throw SingularOperatorError("full Liouvillian is singular; efficiency undefined");

  EfficiencyResult result;
  result.condition_estimate = solve.condition_estimate;
  const int t = parts.trap_site;
  result.q_exact = parts.trap_rate * solve.x[t * (parts.n + 1)].real();
  double trace = 0.0;
  for (int i = 0; i < parts.n; ++i) trace += solve.x[i * (parts.n + 1)].real();
  result.q_decay = parts.decay_rate * trace;
  return result;
}

double efficiency_approx(double mfpt, double decay_rate) {
  return 1.0 / (1.0 + decay_rate * mfpt);
}

ApproxEfficiency efficiency_approx(const MfptResult& mfpt, double decay_rate) {
  ApproxEfficiency out;
  if (mfpt.divergent) {
    out.value = 0.0;
    out.divergent_limit = true;
    return out;
  }
  out.value = efficiency_approx(mfpt.value, decay_rate);
  return out;
}

TransferResult compute_transfer(const LiouvillianParts& parts, const StateSpec& state) {
  TransferResult row;
  row.gamma = parts.gamma;
  const MfptResult t = trapping_time(parts, state);
  row.mfpt = t.value;
  row.divergent = t.divergent;
  row.condition_estimate = t.condition_estimate;
  const EfficiencyResult q = efficiency_exact(parts, state);
  row.q_exact = q.q_exact;
  row.q_decay = q.q_decay;
  row.q_approx = efficiency_approx(t, parts.decay_rate).value;
  return row;
}

std::vector<TransferResult> sweep_gamma(const SiteNetwork& net, const StateSpec& state,
                                        const std::vector<double>& gammas, int threads) {
  std::vector<TransferResult> rows(gammas.size());
  parallel_for(gammas.size(), threads, [&](std::size_t i) {
    rows[i] = compute_transfer(assemble(net, gammas[i]), state);
  });
  return rows;
}

} // namespace eetnet
