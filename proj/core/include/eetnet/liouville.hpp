#ifndef EETNET_LIOUVILLE_HPP
#define EETNET_LIOUVILLE_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <vector>

#include "eetnet/network.hpp"

namespace eetnet {

using Complex = std::complex<double>;
using SparseSuperOp = Eigen::SparseMatrix<Complex>;

/// Column-stacking vectorization: rho_ij sits at vec index i + j*n.
inline int vec_index(int i, int j, int n) { return i + j * n; }

/// The four superoperators of the master equation in vectorized form, with
/// the sign convention  d vec(rho)/dt = -(l_sys + l_dissip + l_trap + l_decay) vec(rho):
///   l_sys    vec(rho) = vec( i [H, rho] )                (hbar = 1)
///   l_dissip vec(rho) = vec( Gamma (rho - diag rho) )    (HSR pure dephasing)
///   l_trap   vec(rho) = vec( (k_t/2) {P_trap, rho} )
///   l_decay  vec(rho) = vec( k_d rho )
struct LiouvillianParts {
  int n = 0;
  double gamma = 0.0;
  int trap_site = 0;
  double trap_rate = 0.0;
  double decay_rate = 0.0;
  SparseSuperOp l_sys, l_dissip, l_trap, l_decay;

  int dim() const { return n * n; }
  /// l_sys + l_dissip + l_trap, the generator without decay (L_0).
  SparseSuperOp total_no_decay() const;
  /// All four parts (L).
  SparseSuperOp total() const;
};

/// Assemble the superoperators for a network at dephasing rate gamma (meV).
/// Assembly is sparse at every size; the diagonal of l_sys is built from
/// pairwise energy differences, so a uniform energy shift leaves the result
/// bit-identical whenever the shifted differences round identically.
LiouvillianParts assemble(const SiteNetwork& net, double gamma);

enum class StatePreset { outer_incoherent, gen1_coherent, site, custom };

/// Initial density matrix with its provenance tag.
struct StateSpec {
  Eigen::MatrixXcd rho0;
  StatePreset preset = StatePreset::custom;
  int site = -1;
};

/// Hermitian within 1e-12, unit trace within 1e-12, min eigenvalue >= -1e-10.
void validate_state(const StateSpec& state, int n);

/// Build a preset initial state.
///   outer_incoherent: even classical mixture over the outermost generation
///                     (max BFS depth from the trap); requires a dendrimer.
///   gen1_coherent:    even coherent superposition over the first generation;
///                     requires a dendrimer.
///   site:             population on one site, |k><k|.
/// Throws ConfigError when the preset does not fit the topology.
StateSpec make_state(const SiteNetwork& net, StatePreset preset, int site = -1);

/// Wrap an explicit density matrix (validated).
StateSpec make_custom_state(const SiteNetwork& net, Eigen::MatrixXcd rho0);

struct TrajectoryPoint {
  double t = 0.0;
  Eigen::MatrixXcd rho;
  double trace = 0.0;
  double survival_integral = 0.0;  // int_0^t Tr rho dt'
};

struct PropagateOptions {
  double t_final = 1.0;
  bool include_decay = true;
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  /// Stop early once Tr rho falls below this (0 disables).
  double trace_floor = 0.0;
  int max_stored = 512;
  std::uint64_t max_steps = 200'000'000;
};

/// Integrate d rho/dt = -L rho with an adaptive embedded Runge-Kutta pair
/// (Dormand-Prince 5(4)). The running integral of Tr rho is carried with the
/// same tableau. Throws IntegrationError on step-size underflow.
std::vector<TrajectoryPoint> propagate(const LiouvillianParts& parts,
                                       const StateSpec& state,
                                       const PropagateOptions& options);

inline std::vector<TrajectoryPoint> propagate(const LiouvillianParts& parts,
                                              const StateSpec& state,
                                              double t_final,
                                              bool include_decay = true) {
  PropagateOptions options;
  options.t_final = t_final;
  options.include_decay = include_decay;
  return propagate(parts, state, options);
}

} // namespace eetnet

#endif
