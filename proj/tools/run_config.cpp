#include "run_config.hpp"

#include <eetnet/asymptotics.hpp>
#include <eetnet/errors.hpp>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace eetnet::cli {

using nlohmann::json;

namespace {

// json::value with type checking and a field-qualified error message.
template <typename T>
T field(const json& j, const std::string& name, const T& fallback) {
  if (!j.contains(name)) return fallback;
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config field '" + name + "': " + e.what());
  }
}

template <typename T>
T required_field(const json& j, const std::string& name, const char* where) {
  if (!j.contains(name))
    throw ConfigError(std::string("config block '") + where + "' needs field '" + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config field '" + name + "': " + e.what());
  }
}

NetworkBlock parse_network(const json& j) {
  NetworkBlock block;
  block.builder = required_field<std::string>(j, "builder", "network");
  block.trap_rate_mev = field(j, "trap_rate_meV", block.trap_rate_mev);
  block.decay_rate_mev = field(j, "decay_rate_meV", block.decay_rate_mev);
  if (block.builder == "dendrimer") {
    block.generations = field(j, "generations", block.generations);
    block.branching = field(j, "branching", block.branching);
    block.j_mev = field(j, "J_meV", block.j_mev);
  } else if (block.builder == "chain") {
    block.n = required_field<int>(j, "n", "network");
    block.j_mev = field(j, "J_meV", block.j_mev);
    block.beta = field(j, "beta", block.beta);
  } else if (block.builder == "dimer") {
    block.delta_mev = field(j, "delta_meV", block.delta_mev);
    block.j_mev = field(j, "J_meV", block.j_mev);
  } else if (block.builder == "custom") {
    block.n_sites = required_field<int>(j, "n_sites", "network");
    block.energies = field(j, "energies", std::vector<double>(block.n_sites, 0.0));
    if (j.contains("couplings")) {
      for (const auto& triple : j.at("couplings")) {
        if (!triple.is_array() || triple.size() != 3)
          throw ConfigError("network.couplings entries must be [i, j, J] triples");
        block.couplings.push_back(
            {triple[0].get<double>(), triple[1].get<double>(), triple[2].get<double>()});
      }
    }
    block.trap_site = required_field<int>(j, "trap_site", "network");
  } else {
    throw ConfigError("unknown network builder '" + block.builder + "'");
  }
  return block;
}

StateBlock parse_state(const json& j) {
  StateBlock block;
  block.preset = field<std::string>(j, "preset", "custom");
  block.site = field(j, "site", 0);
  if (block.preset == "custom") {
    block.rho_re = required_field<std::vector<std::vector<double>>>(j, "rho_re", "state");
    block.rho_im = field(j, "rho_im", std::vector<std::vector<double>>{});
  }
  return block;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  RunConfig config;
  if (!j.contains("network")) throw ConfigError("config needs a 'network' block");
  config.network = parse_network(j.at("network"));
  if (j.contains("state")) config.state = parse_state(j.at("state"));
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    config.sweep.gamma_min_mev = field(s, "gamma_min_meV", config.sweep.gamma_min_mev);
    config.sweep.gamma_max_mev = field(s, "gamma_max_meV", config.sweep.gamma_max_mev);
    config.sweep.points = field(s, "points", config.sweep.points);
  }
  if (j.contains("disorder")) {
    const json& d = j.at("disorder");
    DisorderBlock block;
    block.sigma_mev = required_field<std::vector<double>>(d, "sigma_meV", "disorder");
    block.n_samples = field(d, "n_samples", block.n_samples);
    block.seed = field<std::uint64_t>(d, "seed", block.seed);
    config.disorder = block;
  }
  if (j.contains("analysis")) {
    const json& a = j.at("analysis");
    config.analysis.subspace = field(a, "subspace", false);
    config.analysis.asymptotes = field(a, "asymptotes", false);
    config.analysis.gamma_opt = field(a, "gamma_opt", false);
  }
  if (j.contains("output")) config.output_dir = field<std::string>(j.at("output"), "dir", "out");

  if (config.sweep.gamma_min_mev <= 0.0 ||
      config.sweep.gamma_max_mev <= config.sweep.gamma_min_mev || config.sweep.points < 2)
    throw ConfigError("sweep block needs 0 < gamma_min_meV < gamma_max_meV and points >= 2");
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

std::string dump_config(const RunConfig& config) {
  json j;
  json net;
  net["builder"] = config.network.builder;
  net["trap_rate_meV"] = config.network.trap_rate_mev;
  net["decay_rate_meV"] = config.network.decay_rate_mev;
  if (config.network.builder == "dendrimer") {
    net["generations"] = config.network.generations;
    net["branching"] = config.network.branching;
    net["J_meV"] = config.network.j_mev;
  } else if (config.network.builder == "chain") {
    net["n"] = config.network.n;
    net["J_meV"] = config.network.j_mev;
    net["beta"] = config.network.beta;
  } else if (config.network.builder == "dimer") {
    net["delta_meV"] = config.network.delta_mev;
    net["J_meV"] = config.network.j_mev;
  } else {
    net["n_sites"] = config.network.n_sites;
    net["energies"] = config.network.energies;
    json couplings = json::array();
    for (const auto& triple : config.network.couplings)
      couplings.push_back({triple[0], triple[1], triple[2]});
    net["couplings"] = couplings;
    net["trap_site"] = config.network.trap_site;
  }
  j["network"] = net;

  json state;
  state["preset"] = config.state.preset;
  if (config.state.preset == "site") state["site"] = config.state.site;
  if (config.state.preset == "custom") {
    state["rho_re"] = config.state.rho_re;
    if (!config.state.rho_im.empty()) state["rho_im"] = config.state.rho_im;
  }
  j["state"] = state;

  j["sweep"] = {{"gamma_min_meV", config.sweep.gamma_min_mev},
                {"gamma_max_meV", config.sweep.gamma_max_mev},
                {"points", config.sweep.points}};
  if (config.disorder) {
    j["disorder"] = {{"sigma_meV", config.disorder->sigma_mev},
                     {"n_samples", config.disorder->n_samples},
                     {"seed", config.disorder->seed}};
  }
  j["analysis"] = {{"subspace", config.analysis.subspace},
                   {"asymptotes", config.analysis.asymptotes},
                   {"gamma_opt", config.analysis.gamma_opt}};
  j["output"] = {{"dir", config.output_dir}};
  return j.dump(2);
}

SiteNetwork build_network(const NetworkBlock& block) {
  if (block.builder == "dendrimer")
    return build_dendrimer(block.generations, block.branching, block.j_mev,
                           block.trap_rate_mev, block.decay_rate_mev);
  if (block.builder == "chain")
    return build_chain(block.n, block.j_mev, block.beta, block.trap_rate_mev,
                       block.decay_rate_mev);
  if (block.builder == "dimer")
    return build_dimer(block.delta_mev, block.j_mev, block.trap_rate_mev,
                       block.decay_rate_mev);

  SiteNetwork net;
  const int n = block.n_sites;
  if (n < 1) throw ConfigError("custom network needs n_sites >= 1");
  if (static_cast<int>(block.energies.size()) != n)
    throw ConfigError("custom network needs one energy per site");
  net.energies = Eigen::Map<const Eigen::VectorXd>(block.energies.data(), n);
  net.couplings = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [fi, fj, j_val] : block.couplings) {
    const int i = static_cast<int>(fi), k = static_cast<int>(fj);
    if (i < 0 || i >= n || k < 0 || k >= n || i == k)
      throw ConfigError("custom network coupling indices out of range");
    net.couplings(i, k) = net.couplings(k, i) = j_val;
  }
  net.trap_site = block.trap_site;
  net.trap_rate = block.trap_rate_mev;
  net.decay_rate = block.decay_rate_mev;
  validate_network(net);
  return net;
}

StateSpec build_state(const SiteNetwork& net, const StateBlock& block) {
  if (block.preset == "outer_incoherent") return make_state(net, StatePreset::outer_incoherent);
  if (block.preset == "gen1_coherent") return make_state(net, StatePreset::gen1_coherent);
  if (block.preset == "site") return make_state(net, StatePreset::site, block.site);
  if (block.preset != "custom") throw ConfigError("unknown state preset '" + block.preset + "'");

  const int n = net.n_sites();
  if (static_cast<int>(block.rho_re.size()) != n)
    throw ConfigError("state.rho_re must be an n x n matrix");
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(block.rho_re[r].size()) != n)
      throw ConfigError("state.rho_re must be an n x n matrix");
    for (int c = 0; c < n; ++c) rho(r, c) = block.rho_re[r][c];
  }
  if (!block.rho_im.empty()) {
    if (static_cast<int>(block.rho_im.size()) != n)
      throw ConfigError("state.rho_im must be an n x n matrix");
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) rho(r, c) += Complex(0.0, block.rho_im[r][c]);
  }
  return make_custom_state(net, rho);
}

std::vector<double> gamma_grid(const SweepBlock& sweep) {
  return log_grid(sweep.gamma_min_mev, sweep.gamma_max_mev, sweep.points);
}

} // namespace eetnet::cli
