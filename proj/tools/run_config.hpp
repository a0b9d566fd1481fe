#ifndef EETNET_TOOLS_RUN_CONFIG_HPP
#define EETNET_TOOLS_RUN_CONFIG_HPP

#include <array>
#include <cstdint>
#include <eetnet/liouville.hpp>
#include <eetnet/network.hpp>
#include <optional>
#include <string>
#include <vector>

namespace eetnet::cli {

struct NetworkBlock {
  std::string builder;  // dendrimer | chain | dimer | custom
  // builder parameters
  int generations = 2;
  int branching = 3;
  int n = 2;
  double j_mev = 20.0;
  double beta = 0.0;
  double delta_mev = 0.0;
  // custom network
  int n_sites = 0;
  std::vector<double> energies;
  std::vector<std::array<double, 3>> couplings;  // [i, j, J]
  // common
  int trap_site = -1;  // custom only; builders fix it
  double trap_rate_mev = 5.0;
  double decay_rate_mev = 5e-3;
};

struct StateBlock {
  std::string preset = "site";  // outer_incoherent | gen1_coherent | site | custom
  int site = 0;
  std::vector<std::vector<double>> rho_re, rho_im;  // custom only
};

struct SweepBlock {
  double gamma_min_mev = 1e-3;
  double gamma_max_mev = 1e5;
  int points = 33;
};

struct DisorderBlock {
  std::vector<double> sigma_mev;
  int n_samples = 10000;
  std::uint64_t seed = 1;
};

struct AnalysisBlock {
  bool subspace = false;
  bool asymptotes = false;
  bool gamma_opt = false;
};

struct RunConfig {
  NetworkBlock network;
  StateBlock state;
  SweepBlock sweep;
  std::optional<DisorderBlock> disorder;
  AnalysisBlock analysis;
  std::string output_dir = "out";
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

/// Canonical JSON with every field materialized; re-parsing reproduces the
/// identical run.
std::string dump_config(const RunConfig& config);

SiteNetwork build_network(const NetworkBlock& block);
StateSpec build_state(const SiteNetwork& net, const StateBlock& block);
std::vector<double> gamma_grid(const SweepBlock& sweep);

} // namespace eetnet::cli

#endif
