#ifndef EETNET_TESTS_TEST_UTIL_HPP
#define EETNET_TESTS_TEST_UTIL_HPP

#include <eetnet/liouville.hpp>
#include <eetnet/network.hpp>
#include <random>

namespace eetnet::testing {

inline SiteNetwork single_site(double trap_rate = 5.0, double decay_rate = 5e-3) {
  SiteNetwork net;
  net.energies = Eigen::VectorXd::Zero(1);
  net.couplings = Eigen::MatrixXd::Zero(1, 1);
  net.trap_site = 0;
  net.trap_rate = trap_rate;
  net.decay_rate = decay_rate;
  return net;
}

/// Fully connected uniform-coupling network (used for the 3-site symmetry case).
inline SiteNetwork complete_graph(int n, double j, double trap_rate = 5.0,
                                  double decay_rate = 5e-3) {
  SiteNetwork net;
  net.energies = Eigen::VectorXd::Zero(n);
  net.couplings = Eigen::MatrixXd::Constant(n, n, j);
  net.couplings.diagonal().setZero();
  net.trap_site = 0;
  net.trap_rate = trap_rate;
  net.decay_rate = decay_rate;
  return net;
}

inline SiteNetwork random_network(std::mt19937_64& rng, int max_sites = 8) {
  std::uniform_int_distribution<int> size_dist(2, max_sites);
  const int n = size_dist(rng);
  std::uniform_real_distribution<double> energy(-50.0, 50.0);
  std::uniform_real_distribution<double> coupling(-30.0, 30.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SiteNetwork net;
  net.energies = Eigen::VectorXd::NullaryExpr(n, [&](Eigen::Index) { return energy(rng); });
  net.couplings = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      net.couplings(i, k) = net.couplings(k, i) = coupling(rng);
  net.trap_site = std::uniform_int_distribution<int>(0, n - 1)(rng);
  net.trap_rate = 0.5 + 9.5 * unit(rng);
  net.decay_rate = 1e-3 + 0.1 * unit(rng);
  return net;
}

/// Random density matrix: A A^dag normalized to unit trace.
inline StateSpec random_state(std::mt19937_64& rng, const SiteNetwork& net) {
  const int n = net.n_sites();
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) a(i, k) = Complex(gauss(rng), gauss(rng));
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace();
  // Symmetrize away the last bits of asymmetry from the division.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return make_custom_state(net, rho);
}

inline StateSpec random_hermitian_state(std::mt19937_64& rng, const SiteNetwork& net) {
  return random_state(rng, net);
}

} // namespace eetnet::testing

#endif
