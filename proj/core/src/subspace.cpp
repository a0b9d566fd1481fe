#include "eetnet/subspace.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "eetnet/errors.hpp"

namespace eetnet {

Eigen::MatrixXd SubspaceReport::projector() const {
  const int n = static_cast<int>(exciton_states.rows());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int k : perp_indices) {
    const auto phi = exciton_states.col(k);
    p.noalias() += phi * phi.transpose();
  }
  return p;
}

SubspaceReport find_orthogonal_subspace(const SiteNetwork& net) {
  validate_network(net);
  const int n = net.n_sites();
  const int trap = net.trap_site;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(net.hamiltonian());
  SubspaceReport report;
  report.exciton_energies = es.eigenvalues();
  report.exciton_states = es.eigenvectors();
  report.trap_site = trap;

  const double scale = report.exciton_energies.cwiseAbs().maxCoeff();
  const double eps_deg = kDegenerateRel * scale;

  // Rotate each degenerate block so the in-block trap-overlap vector lands
  // on a single basis state; the rest of the block becomes exactly
  // trap-orthogonal (up to roundoff).
  int lo = 0;
  while (lo < n) {
    int hi = lo + 1;
    while (hi < n &&
           report.exciton_energies[hi] - report.exciton_energies[hi - 1] <= eps_deg)
      ++hi;
    const int m = hi - lo;
    if (m > 1) {
      Eigen::VectorXd u = report.exciton_states.row(trap).segment(lo, m).transpose();
      const double norm = u.norm();
      if (norm > 0.0) {
        Eigen::VectorXd v = u;
        // Householder direction mapping u onto the first axis; the sign
        // choice avoids cancellation.
        v[0] += std::copysign(norm, u[0]);
        const double vsq = v.squaredNorm();
        if (vsq > 0.0) {
          Eigen::MatrixXd block = report.exciton_states.middleCols(lo, m);
          block.noalias() -= (block * v) * (2.0 / vsq) * v.transpose();
          report.exciton_states.middleCols(lo, m) = block;
        }
      }
    }
    lo = hi;
  }

  report.overlaps = report.exciton_states.row(trap).cwiseAbs().transpose();
  for (int k = 0; k < n; ++k)
    if (report.overlaps[k] < kOrthThreshold) report.perp_indices.push_back(k);
  report.perp_dim = static_cast<int>(report.perp_indices.size());
  return report;
}

Projection project_state(const SubspaceReport& report, const StateSpec& state) {
  const int n = static_cast<int>(report.exciton_states.rows());
  validate_state(state, n);
  Projection out;
  if (report.perp_dim == 0) {
    out.rho_perp0 = Eigen::MatrixXcd::Zero(n, n);
    out.perp_population = 0.0;
    return out;
  }
  const Eigen::MatrixXd p = report.projector();
  out.rho_perp0 = p * state.rho0 * p;
  out.perp_population = out.rho_perp0.trace().real();
  return out;
}

} // namespace eetnet
