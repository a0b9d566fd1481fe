// eetnet: solvers for excitation-energy-transfer networks.
//
// Trapping times and transfer efficiencies come from direct linear solves
// against the vectorized Liouvillian of the HSR pure-dephasing master
// equation; subcommands sweep the dephasing rate, average over static
// disorder, report the trapping-free exciton subspace, and locate the
// optimal dephasing rate. Times are in hbar/meV.

#include <CLI11.hpp>
#include <eetnet/asymptotics.hpp>
#include <eetnet/ensemble.hpp>
#include <eetnet/errors.hpp>
#include <eetnet/io.hpp>
#include <eetnet/mfpt.hpp>
#include <eetnet/parallel.hpp>
#include <eetnet/subspace.hpp>
#include <eetnet/units.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "run_config.hpp"

namespace fs = std::filesystem;
using namespace eetnet;
using eetnet::cli::RunConfig;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;  // overrides config when set
  int threads = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool dump_config = false;
};

RunConfig load_config(const CommonArgs& args) {
  RunConfig config = eetnet::cli::parse_config_file(args.config_path);
  if (!args.out_dir.empty()) config.output_dir = args.out_dir;
  if (args.seed_set) {
    if (!config.disorder) config.disorder.emplace();
    config.disorder->seed = args.seed;
  }
  return config;
}

fs::path prepare_output_dir(const RunConfig& config) {
  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw ConfigError("cannot create output directory '" + config.output_dir + "'");
  return dir;
}

nlohmann::json run_metadata(const RunConfig& config) {
  nlohmann::json meta;
  meta["config"] = nlohmann::json::parse(eetnet::cli::dump_config(config));
  meta["time_unit"] = "hbar/meV";
  meta["hbar_meV_ps"] = hbar_meV_ps;
  return meta;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

int cmd_sweep(const CommonArgs& args) {
  const RunConfig config = load_config(args);
  if (args.dump_config) {
    std::cout << eetnet::cli::dump_config(config) << "\n";
    return 0;
  }
  const fs::path dir = prepare_output_dir(config);
  const SiteNetwork net = eetnet::cli::build_network(config.network);
  const StateSpec state = eetnet::cli::build_state(net, config.state);
  const std::vector<double> grid = eetnet::cli::gamma_grid(config.sweep);

  std::ofstream csv(dir / "sweep.csv");
  if (!csv) throw ConfigError("cannot write sweep.csv");
  write_sweep_csv_header(csv);
  csv.flush();

  // Points are independent; compute in parallel chunks but emit rows in
  // grid order, flushing per point so partial runs stay usable.
  std::vector<TransferResult> rows(grid.size());
  const std::size_t chunk = std::max<std::size_t>(1, 2 * resolve_threads(args.threads));
  for (std::size_t start = 0; start < grid.size(); start += chunk) {
    const std::size_t stop = std::min(grid.size(), start + chunk);
    parallel_for(stop - start, args.threads, [&](std::size_t k) {
      const std::size_t i = start + k;
      rows[i] = compute_transfer(assemble(net, grid[i]), state);
    });
    for (std::size_t i = start; i < stop; ++i) {
      write_sweep_csv_row(csv, rows[i]);
      csv.flush();
    }
  }

  nlohmann::json summary = run_metadata(config);
  summary["points"] = rows.size();
  if (config.analysis.subspace) {
    const SubspaceReport report = find_orthogonal_subspace(net);
    const Projection proj = project_state(report, state);
    summary["subspace"] = nlohmann::json::parse(subspace_report_json(report, &proj));
  }
  if (config.analysis.asymptotes || config.analysis.gamma_opt) {
    AnalyzeOptions options;
    options.threads = args.threads;
    const AsymptoteReport report = analyze_asymptotics(net, state, options);
    summary["asymptotes"] = nlohmann::json::parse(asymptote_report_json(report));
  }
  write_text(dir / "sweep_summary.json", summary.dump(2));
  std::cout << "wrote " << (dir / "sweep.csv").string() << " (" << rows.size()
            << " points)\n";
  return 0;
}

int cmd_disorder(const CommonArgs& args) {
  const RunConfig config = load_config(args);
  if (args.dump_config) {
    std::cout << eetnet::cli::dump_config(config) << "\n";
    return 0;
  }
  if (!config.disorder) throw ConfigError("disorder command needs a 'disorder' block");
  const fs::path dir = prepare_output_dir(config);
  const SiteNetwork net = eetnet::cli::build_network(config.network);
  const StateSpec state = eetnet::cli::build_state(net, config.state);
  const std::vector<double> gammas = eetnet::cli::gamma_grid(config.sweep);

  std::ofstream csv(dir / "disorder.csv");
  if (!csv) throw ConfigError("cannot write disorder.csv");
  write_disorder_csv_header(csv);
  csv.flush();

  std::vector<EnsembleResult> rows;
  for (double gamma : gammas) {
    for (double sigma : config.disorder->sigma_mev) {
      const DisorderSpec spec = DisorderSpec::uniform(sigma, net.n_sites(),
                                                      config.disorder->seed,
                                                      config.disorder->n_samples);
      const EnsembleResult row = run_ensemble(net, state, gamma, spec, args.threads);
      rows.push_back(row);
      write_disorder_csv_row(csv, row);
      csv.flush();
    }
  }

  nlohmann::json summary = run_metadata(config);
  summary["points"] = rows.size();
  try {
    const ScalingFit fit = fit_scaling(rows);
    summary["scaling_fit"] = nlohmann::json::parse(scaling_fit_json(fit));
  } catch (const ParameterError& e) {
    summary["scaling_fit"] = nullptr;
    summary["scaling_fit_skipped"] = e.what();
  }
  write_text(dir / "scaling_fit.json", summary.dump(2));
  std::cout << "wrote " << (dir / "disorder.csv").string() << " (" << rows.size()
            << " points)\n";
  return 0;
}

int cmd_subspace(const CommonArgs& args) {
  const RunConfig config = load_config(args);
  if (args.dump_config) {
    std::cout << eetnet::cli::dump_config(config) << "\n";
    return 0;
  }
  const fs::path dir = prepare_output_dir(config);
  const SiteNetwork net = eetnet::cli::build_network(config.network);
  const SubspaceReport report = find_orthogonal_subspace(net);

  std::string json_text;
  try {
    const StateSpec state = eetnet::cli::build_state(net, config.state);
    const Projection proj = project_state(report, state);
    json_text = subspace_report_json(report, &proj);
  } catch (const ConfigError&) {
    // No state that fits this topology; report the subspace alone.
    json_text = subspace_report_json(report);
  }
  write_text(dir / "subspace.json", json_text);
  std::cout << "perp_dim = " << report.perp_dim << "; wrote "
            << (dir / "subspace.json").string() << "\n";
  return 0;
}

int cmd_optimum(const CommonArgs& args) {
  const RunConfig config = load_config(args);
  if (args.dump_config) {
    std::cout << eetnet::cli::dump_config(config) << "\n";
    return 0;
  }
  const fs::path dir = prepare_output_dir(config);
  const SiteNetwork net = eetnet::cli::build_network(config.network);
  const StateSpec state = eetnet::cli::build_state(net, config.state);

  const OptimumResult opt = gamma_opt(net, state, config.sweep.gamma_min_mev,
                                      config.sweep.gamma_max_mev, args.threads);
  nlohmann::json summary = run_metadata(config);
  summary["optimum_found"] = opt.found;
  summary["gamma_opt_numeric_meV"] = opt.gamma_opt;
  summary["t_min"] = opt.t_min;
  summary["gamma_opt_estimate_meV"] = opt.gamma_estimate;
  write_text(dir / "optimum.json", summary.dump(2));
  if (opt.found)
    std::cout << "gamma_opt = " << opt.gamma_opt << " meV (t_min = " << opt.t_min << ")\n";
  else
    std::cout << "no interior optimum in [" << config.sweep.gamma_min_mev << ", "
              << config.sweep.gamma_max_mev << "] meV\n";
  std::cout << "wrote " << (dir / "optimum.json").string() << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trapping times and transfer efficiencies of exciton networks"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", args.config_path, "run configuration file (JSON)")
        ->required();
    cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
    cmd->add_option("--threads", args.threads, "worker threads (0 = all cores)");
    cmd->add_option("--seed", args.seed, "master seed (overrides config)")
        ->each([&](const std::string&) { args.seed_set = true; });
    cmd->add_flag("--dump-config", args.dump_config,
                  "print the fully-resolved config and exit");
  };

  CLI::App* sweep = app.add_subcommand("sweep", "trapping time and efficiency vs gamma");
  CLI::App* disorder = app.add_subcommand("disorder", "disorder-averaged grid and scaling fit");
  CLI::App* subspace = app.add_subcommand("subspace", "trapping-free exciton subspace report");
  CLI::App* optimum = app.add_subcommand("optimum", "locate the optimal dephasing rate");
  for (CLI::App* cmd : {sweep, disorder, subspace, optimum}) add_common(cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return cmd_sweep(args);
    if (disorder->parsed()) return cmd_disorder(args);
    if (subspace->parsed()) return cmd_subspace(args);
    if (optimum->parsed()) return cmd_optimum(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
