#ifndef EETNET_NETWORK_HPP
#define EETNET_NETWORK_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace eetnet {

/// Tight-binding exciton network: site energies, symmetric couplings, one
/// trap site with trapping rate k_t and a homogeneous decay rate k_d.
/// All energies/rates in meV. Immutable by convention once built.
struct SiteNetwork {
  Eigen::VectorXd energies;         // eps_i
  Eigen::MatrixXd couplings;        // J_ij, symmetric, zero diagonal
  int trap_site = 0;
  double trap_rate = 0.0;           // k_t
  double decay_rate = 0.0;          // k_d
  std::vector<std::string> labels;  // optional site names

  int n_sites() const { return static_cast<int>(energies.size()); }

  /// H_ij = eps_i delta_ij + J_ij (1 - delta_ij)
  Eigen::MatrixXd hamiltonian() const {
    Eigen::MatrixXd h = couplings;
    h.diagonal() = energies;
    return h;
  }

  double max_coupling() const {
    return couplings.size() == 0 ? 0.0 : couplings.cwiseAbs().maxCoeff();
  }
};

/// Throws ParameterError if the invariants do not hold:
/// couplings symmetric within 1e-12 relative, zero diagonal, valid trap
/// index, non-negative rates, n >= 1.
void validate_network(const SiteNetwork& net);

/// Donor-acceptor pair: energies (delta, 0), coupling J, trap at site 1.
SiteNetwork build_dimer(double delta, double j, double trap_rate = 5.0,
                        double decay_rate = 5e-3);

/// n-site chain with couplings J_ij = J exp(-beta (|i-j| - 1)) for i != j,
/// uniform zero site energies, trap at the last site.
SiteNetwork build_chain(int n, double j, double beta, double trap_rate = 5.0,
                        double decay_rate = 5e-3);

/// Dendrimer rooted at the trap (site 0): `branching` first-generation sites,
/// every later generation adds branching-1 children per site. Couplings J on
/// parent-child bonds only; uniform zero site energies.
SiteNetwork build_dendrimer(int generations, int branching, double j,
                            double trap_rate = 5.0, double decay_rate = 5e-3);

/// BFS depth of every site from `root` over the nonzero-coupling graph
/// (-1 for unreachable sites).
std::vector<int> coupling_depths(const SiteNetwork& net, int root);

/// True if the nonzero-coupling graph is a connected tree.
bool coupling_graph_is_tree(const SiteNetwork& net);

/// Gaussian static-disorder model: per-site standard deviations (meV),
/// a master seed, and the sample count.
struct DisorderSpec {
  Eigen::VectorXd sigma;
  std::uint64_t seed = 0;
  int n_samples = 1;

  static DisorderSpec uniform(double sigma, int n_sites, std::uint64_t seed,
                              int n_samples);
};

void validate_disorder(const DisorderSpec& spec, int n_sites);

/// Copy of `net` with eps_i += delta_i, delta_i ~ N(0, sigma_i^2). The draw
/// for a given (seed, sample_index) is independent of any other sample, so
/// ensembles are order-independent and reproducible.
SiteNetwork sample_disorder(const SiteNetwork& net, const DisorderSpec& spec,
                            int sample_index);

} // namespace eetnet

#endif
