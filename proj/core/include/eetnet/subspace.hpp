#ifndef EETNET_SUBSPACE_HPP
#define EETNET_SUBSPACE_HPP

#include <Eigen/Dense>
#include <vector>

#include "eetnet/liouville.hpp"
#include "eetnet/network.hpp"

namespace eetnet {

/// Exciton basis of H_S with the trapping-free states identified. Within a
/// degenerate eigenspace the basis is rotated (Householder reflection
/// aligning the trap-overlap vector with one axis) so that at most one state
/// of the block carries the whole trap amplitude; states with overlap below
/// eps_orth are classified as trapping-free.
struct SubspaceReport {
  Eigen::VectorXd exciton_energies;  // ascending
  Eigen::MatrixXd exciton_states;    // orthonormal columns
  Eigen::VectorXd overlaps;          // |<trap|phi_k>|
  std::vector<int> perp_indices;
  int perp_dim = 0;
  int trap_site = 0;

  /// Projector onto the trapping-free subspace.
  Eigen::MatrixXd projector() const;
};

/// Classification thresholds. Only symmetry-induced (exact up to roundoff)
/// orthogonality qualifies; near-orthogonality from detuning or system size
/// is reported through `overlaps` but not classified.
inline constexpr double kOrthThreshold = 1e-8;
inline constexpr double kDegenerateRel = 1e-9;

SubspaceReport find_orthogonal_subspace(const SiteNetwork& net);

/// rho_perp(0) = P rho(0) P and its population.
struct Projection {
  Eigen::MatrixXcd rho_perp0;
  double perp_population = 0.0;
};

Projection project_state(const SubspaceReport& report, const StateSpec& state);

} // namespace eetnet

#endif
