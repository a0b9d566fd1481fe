#include "eetnet/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <nlohmann/json.hpp>

namespace eetnet {

std::string format_full(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

void write_sweep_csv_header(std::ostream& os) { os << kSweepCsvHeader << "\n"; }

void write_sweep_csv_row(std::ostream& os, const TransferResult& row) {
  os << format_full(row.gamma) << ',' << format_full(row.mfpt) << ','
     << format_full(row.q_exact) << ',' << format_full(row.q_approx) << ','
     << (row.divergent ? 1 : 0) << "\n";
}

void write_sweep_csv(std::ostream& os, std::span<const TransferResult> rows) {
  write_sweep_csv_header(os);
  for (const auto& row : rows) write_sweep_csv_row(os, row);
}

void write_disorder_csv_header(std::ostream& os) { os << kDisorderCsvHeader << "\n"; }

void write_disorder_csv_row(std::ostream& os, const EnsembleResult& row) {
  os << format_full(row.gamma) << ',' << format_full(row.sigma) << ','
     << row.n_samples << ',' << format_full(row.mean_t) << ','
     << format_full(row.stderr_t) << ',' << format_full(row.mean_q) << ','
     << format_full(row.stderr_q) << ',' << row.divergent_count << "\n";
}

void write_disorder_csv(std::ostream& os, std::span<const EnsembleResult> rows) {
  write_disorder_csv_header(os);
  for (const auto& row : rows) write_disorder_csv_row(os, row);
}

namespace {

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

} // namespace

std::string subspace_report_json(const SubspaceReport& report, const Projection* projection) {
  nlohmann::json j;
  j["trap_site"] = report.trap_site;
  j["exciton_energies_meV"] = vector_json(report.exciton_energies);
  j["trap_overlaps"] = vector_json(report.overlaps);
  j["perp_indices"] = report.perp_indices;
  j["perp_dim"] = report.perp_dim;
  if (projection) {
    j["perp_population"] = projection->perp_population;
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (Eigen::Index r = 0; r < projection->rho_perp0.rows(); ++r) {
      nlohmann::json re_row = nlohmann::json::array(), im_row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < projection->rho_perp0.cols(); ++c) {
        re_row.push_back(projection->rho_perp0(r, c).real());
        im_row.push_back(projection->rho_perp0(r, c).imag());
      }
      re.push_back(re_row);
      im.push_back(im_row);
    }
    j["rho_perp0_re"] = re;
    j["rho_perp0_im"] = im;
  }
  return j.dump(2);
}

namespace {

nlohmann::json curve_json(const std::vector<std::pair<double, double>>& curve) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [gamma, t] : curve) arr.push_back({{"gamma", gamma}, {"mfpt", t}});
  return arr;
}

} // namespace

std::string asymptote_report_json(const AsymptoteReport& report) {
  nlohmann::json j;
  j["weak_constant"] = report.weak_constant.value;
  j["weak_constant_pseudo_inverse"] = report.weak_constant.pseudo_inverse_used;
  j["weak_slope"] = report.weak_slope;
  j["strong_slope"] = report.strong_slope;
  j["hop_prefactor"] = report.hop_prefactor;
  j["optimum_found"] = report.optimum.found;
  j["gamma_opt_numeric_meV"] = report.optimum.gamma_opt;
  j["t_min"] = report.optimum.t_min;
  j["gamma_opt_estimate_meV"] = report.optimum.gamma_estimate;
  j["weak_curve"] = curve_json(report.weak_curve);
  j["strong_curve"] = curve_json(report.strong_curve);
  return j.dump(2);
}

std::string scaling_fit_json(const ScalingFit& fit) {
  nlohmann::json j;
  j["slope_vs_gamma"] = fit.slope_vs_gamma;
  j["slope_vs_gamma_stderr"] = fit.slope_vs_gamma_stderr;
  j["slope_vs_sigma"] = fit.slope_vs_sigma;
  j["slope_vs_sigma_stderr"] = fit.slope_vs_sigma_stderr;
  nlohmann::json cp = nlohmann::json::array();
  for (const auto& [gamma, c_prime] : fit.c_prime_per_gamma)
    cp.push_back({{"gamma", gamma}, {"c_prime", c_prime}});
  j["c_prime_per_gamma"] = cp;
  j["c"] = fit.c;
  j["rms_log_residual"] = fit.rms_log_residual;
  j["regime_warning"] = fit.regime_warning;
  return j.dump(2);
}

} // namespace eetnet
