#include "eetnet/network.hpp"

#include <cmath>
#include <deque>
#include <string>

#include "eetnet/errors.hpp"
#include "eetnet/rng.hpp"

namespace eetnet {

void validate_network(const SiteNetwork& net) {
  const int n = net.n_sites();
  if (n < 1) throw ParameterError("network needs at least one site");
  if (net.couplings.rows() != n || net.couplings.cols() != n)
    throw ParameterError("couplings matrix must be n x n");
  const double scale = std::max(1.0, net.couplings.cwiseAbs().maxCoeff());
  for (int i = 0; i < n; ++i) {
    if (net.couplings(i, i) != 0.0)
      throw ParameterError("couplings diagonal must be exactly zero");
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(net.couplings(i, j) - net.couplings(j, i)) > 1e-12 * scale)
        throw ParameterError("couplings matrix must be symmetric");
    }
  }
  if (net.trap_site < 0 || net.trap_site >= n)
    throw ParameterError("trap_site out of range");
  if (net.trap_rate < 0.0) throw ParameterError("trap_rate must be >= 0");
  if (net.decay_rate < 0.0) throw ParameterError("decay_rate must be >= 0");
  if (!net.labels.empty() && static_cast<int>(net.labels.size()) != n)
    throw ParameterError("labels must be empty or one per site");
}

SiteNetwork build_dimer(double delta, double j, double trap_rate, double decay_rate) {
  if (j <= 0.0) throw ParameterError("dimer coupling J must be > 0");
  SiteNetwork net;
  net.energies = Eigen::Vector2d(delta, 0.0);
  net.couplings = Eigen::Matrix2d::Zero();
  net.couplings(0, 1) = net.couplings(1, 0) = j;
  net.trap_site = 1;
  net.trap_rate = trap_rate;
  net.decay_rate = decay_rate;
  net.labels = {"donor", "acceptor"};
  validate_network(net);
  return net;
}

SiteNetwork build_chain(int n, double j, double beta, double trap_rate, double decay_rate) {
  if (n < 2) throw ParameterError("chain needs at least two sites");
  if (j <= 0.0) throw ParameterError("chain coupling J must be > 0");
  if (beta < 0.0) throw ParameterError("chain decay constant beta must be >= 0");
  SiteNetwork net;
  net.energies = Eigen::VectorXd::Zero(n);
  net.couplings = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      const double val = j * std::exp(-beta * (static_cast<double>(k - i) - 1.0));
      net.couplings(i, k) = net.couplings(k, i) = val;
    }
  net.trap_site = n - 1;
  net.trap_rate = trap_rate;
  net.decay_rate = decay_rate;
  validate_network(net);
  return net;
}

SiteNetwork build_dendrimer(int generations, int branching, double j,
                            double trap_rate, double decay_rate) {
  if (generations < 1) throw ParameterError("dendrimer needs generations >= 1");
  if (branching < 2) throw ParameterError("dendrimer needs branching >= 2");
  if (j <= 0.0) throw ParameterError("dendrimer coupling J must be > 0");

  // Generation g holds branching * (branching-1)^(g-1) sites.
  int n = 1;
  int gen_count = branching;
  for (int g = 1; g <= generations; ++g) {
    n += gen_count;
    gen_count *= branching - 1;
  }

  SiteNetwork net;
  net.energies = Eigen::VectorXd::Zero(n);
  net.couplings = Eigen::MatrixXd::Zero(n, n);
  net.labels.assign(n, "");
  net.labels[0] = "center";

  int next = 1;
  std::vector<int> frontier = {0};
  for (int g = 1; g <= generations; ++g) {
    std::vector<int> children;
    const int per_parent = (g == 1) ? branching : branching - 1;
    for (int parent : frontier) {
      for (int c = 0; c < per_parent; ++c) {
        const int site = next++;
        net.couplings(parent, site) = net.couplings(site, parent) = j;
        net.labels[site] = "g" + std::to_string(g) + "." +
                           std::to_string(static_cast<int>(children.size()));
        children.push_back(site);
      }
    }
    frontier = std::move(children);
  }

  net.trap_site = 0;
  net.trap_rate = trap_rate;
  net.decay_rate = decay_rate;
  validate_network(net);
  return net;
}

std::vector<int> coupling_depths(const SiteNetwork& net, int root) {
  const int n = net.n_sites();
  if (root < 0 || root >= n) throw ParameterError("BFS root out of range");
  std::vector<int> depth(n, -1);
  std::deque<int> queue = {root};
  depth[root] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v = 0; v < n; ++v) {
      if (v != u && net.couplings(u, v) != 0.0 && depth[v] < 0) {
        depth[v] = depth[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return depth;
}

bool coupling_graph_is_tree(const SiteNetwork& net) {
  const int n = net.n_sites();
  int edges = 0;
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      if (net.couplings(i, k) != 0.0) ++edges;
  if (edges != n - 1) return false;
  const auto depth = coupling_depths(net, 0);
  for (int i = 0; i < n; ++i)
    if (depth[i] < 0) return false;
  return true;
}

DisorderSpec DisorderSpec::uniform(double sigma, int n_sites, std::uint64_t seed,
                                   int n_samples) {
  DisorderSpec spec;
  spec.sigma = Eigen::VectorXd::Constant(n_sites, sigma);
  spec.seed = seed;
  spec.n_samples = n_samples;
  return spec;
}

void validate_disorder(const DisorderSpec& spec, int n_sites) {
  if (spec.sigma.size() != n_sites)
    throw ParameterError("disorder sigma must have one entry per site");
  if ((spec.sigma.array() < 0.0).any())
    throw ParameterError("disorder sigma must be >= 0");
  if (spec.n_samples < 1) throw ParameterError("n_samples must be >= 1");
}

SiteNetwork sample_disorder(const SiteNetwork& net, const DisorderSpec& spec,
                            int sample_index) {
  validate_disorder(spec, net.n_sites());
  if (sample_index < 0 || sample_index >= spec.n_samples)
    throw ParameterError("sample_index out of range");
  SiteNetwork out = net;
  GaussianStream gauss(stream_seed(spec.seed, static_cast<std::uint64_t>(sample_index)));
  for (int i = 0; i < net.n_sites(); ++i)
    out.energies[i] += spec.sigma[i] * gauss.next();
  return out;
}

} // namespace eetnet
