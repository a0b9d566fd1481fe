// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Heavier Monte Carlo criteria run with 10^4 samples and fixed seeds; no
// tolerance is adjusted at runtime.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <eetnet/asymptotics.hpp>
#include <eetnet/ensemble.hpp>
#include <eetnet/io.hpp>
#include <eetnet/liouville.hpp>
#include <eetnet/mfpt.hpp>
#include <eetnet/network.hpp>
#include <eetnet/subspace.hpp>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "test_util.hpp"

using namespace eetnet;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

SiteNetwork dendrimer() { return build_dendrimer(2, 3, 20.0, 5.0, 5e-3); }

// 1. trapping_time vs the time-integration oracle, 1e-6 relative.
void criterion_1() {
  const SiteNetwork net = dendrimer();
  const StateSpec state = make_state(net, StatePreset::outer_incoherent);
  bool pass = true;
  std::ostringstream detail;
  for (double gamma : {0.2, 2.0, 20.0, 200.0}) {
    const auto parts = assemble(net, gamma);
    const MfptResult solve = trapping_time(parts, state);
    const double oracle = eetnet::testing::mfpt_by_integration(parts, state);
    const double rel = std::abs(solve.value - oracle) / oracle;
    pass = pass && !solve.divergent && rel < 1e-6;
    detail << " G=" << fmt(gamma) << ":rel=" << fmt(rel);
  }
  report(1, pass, "oracle equivalence within 1e-6 at Gamma in {0.2,2,20,200} meV;" + detail.str());
}

// 2. Exact analytic cases and the flux partition on random networks.
void criterion_2() {
  const auto net1 = eetnet::testing::single_site(5.0, 5e-3);
  const auto parts1 = assemble(net1, 0.0);
  const StateSpec state1 = make_state(net1, StatePreset::site, 0);
  const MfptResult t1 = trapping_time(parts1, state1);
  const EfficiencyResult q1 = efficiency_exact(parts1, state1);
  bool pass = !t1.divergent;
  pass = pass && std::abs(t1.value - 0.2) <= 4 * std::numeric_limits<double>::epsilon();
  pass = pass && std::abs(q1.q_exact - 5.0 / 5.005) <= 4 * std::numeric_limits<double>::epsilon();

  std::mt19937_64 rng(31415);
  std::uniform_real_distribution<double> log_gamma(-2.0, 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const SiteNetwork net = eetnet::testing::random_network(rng);
    const StateSpec state = eetnet::testing::random_state(rng, net);
    const EfficiencyResult q =
        efficiency_exact(assemble(net, std::pow(10.0, log_gamma(rng))), state);
    worst = std::max(worst, std::abs(q.q_exact + q.q_decay - 1.0));
  }
  pass = pass && worst < 1e-8;
  report(2, pass,
         "single-site closed forms at machine precision; flux partition on 100 random "
         "networks, worst |q_t+q_d-1| = " + fmt(worst));
}

// 3. Subspace dimensions and the conservation property.
void criterion_3() {
  const SiteNetwork net = dendrimer();
  const SubspaceReport report_d = find_orthogonal_subspace(net);
  bool pass = report_d.perp_dim == 7;
  pass = pass && find_orthogonal_subspace(build_dimer(0.0, 20.0)).perp_dim == 0;

  SiteNetwork closed = net;
  closed.decay_rate = 0.0;
  const Projection proj =
      project_state(report_d, make_state(closed, StatePreset::outer_incoherent));
  Eigen::MatrixXcd confined = proj.rho_perp0 / proj.perp_population;
  confined = 0.5 * (confined + confined.adjoint()).eval();
  const auto traj = propagate(assemble(closed, 0.0), make_custom_state(closed, confined),
                              100.0 / closed.trap_rate, true);
  double max_drift = 0.0;
  for (const auto& pt : traj) max_drift = std::max(max_drift, std::abs(pt.trace - 1.0));
  pass = pass && max_drift < 1e-8;
  report(3, pass,
         "perp_dim(dendrimer) = " + std::to_string(report_d.perp_dim) +
             ", perp_dim(dimer) = 0; confined-state trace drift over t = 100/k_t: " +
             fmt(max_drift));
}

// 4. Strong-damping scaling, slope 1.00 +- 0.05 over [2e3, 2e5] meV.
void criterion_4() {
  const SiteNetwork net = dendrimer();
  const StateSpec state = make_state(net, StatePreset::outer_incoherent);
  std::vector<std::pair<double, double>> curve;
  for (double gamma : log_grid(2e3, 2e5, 6))
    curve.emplace_back(gamma, trapping_time(assemble(net, gamma), state).value);
  const PowerLawFit fit = strong_damping_fit(curve);
  const bool pass = std::abs(fit.slope - 1.0) <= 0.05;
  report(4, pass, "strong-damping slope = " + fmt(fit.slope) + " (want 1.00 +- 0.05)");
}

// 5. Weak-damping asymptote Gamma*<t> -> weak constant; coherent state finite.
void criterion_5() {
  const SiteNetwork net = dendrimer();
  const SubspaceReport sub = find_orthogonal_subspace(net);
  const StateSpec outer = make_state(net, StatePreset::outer_incoherent);
  const WeakConstant weak = weak_damping_constant(net, sub, outer);

  const double p1 = 2e-4 * trapping_time(assemble(net, 2e-4), outer).value;
  const double p2 = 2e-5 * trapping_time(assemble(net, 2e-5), outer).value;
  bool pass = weak.value > 0.0;
  pass = pass && std::abs(p1 - weak.value) / weak.value < 0.05;
  pass = pass && std::abs(p2 - weak.value) / weak.value < 0.05;
  pass = pass && std::abs(p1 - p2) / p2 < 0.01;

  const StateSpec gen1 = make_state(net, StatePreset::gen1_coherent);
  const WeakConstant weak_gen1 = weak_damping_constant(net, sub, gen1);
  const MfptResult t_gen1 = trapping_time(assemble(net, 2e-5), gen1);
  pass = pass && weak_gen1.value == 0.0 && !t_gen1.divergent && std::isfinite(t_gen1.value);

  report(5, pass,
         "weak constant = " + fmt(weak.value) + ", Gamma*t = " + fmt(p1) + " / " + fmt(p2) +
             "; gen1: constant = 0, t(2e-5) = " + fmt(t_gen1.value) + " finite");
}

// 6. Optimum existence and the order-of-magnitude estimate sqrt(C)*max_J.
void criterion_6() {
  const SiteNetwork net = dendrimer();
  const OptimumResult opt =
      gamma_opt(net, make_state(net, StatePreset::outer_incoherent), 2e-2, 2e4, 0);
  bool pass = opt.found && opt.gamma_opt > 0.0;
  double ratio = 0.0;
  if (pass) {
    ratio = opt.gamma_estimate / opt.gamma_opt;
    pass = ratio > 0.1 && ratio < 10.0;
  }
  const OptimumResult coherent =
      gamma_opt(net, make_state(net, StatePreset::gen1_coherent), 2e-2, 2e4, 0);
  pass = pass && !coherent.found;
  report(6, pass,
         "gamma_opt numeric = " + fmt(opt.gamma_opt) + " meV, estimate = " +
             fmt(opt.gamma_estimate) + " meV (ratio " + fmt(ratio) +
             "); coherent state: no optimum");
}

// 7. Disorder scaling at desk scale: 10^4 samples, fixed seed.
void criterion_7() {
  const SiteNetwork net = dendrimer();
  const StateSpec state = make_state(net, StatePreset::outer_incoherent);
  std::vector<EnsembleResult> grid;
  for (double gamma : {1e-12, 1e-10, 1e-8})
    for (double sigma : {1.0, 2.0, 4.0, 8.0}) {
      const DisorderSpec spec = DisorderSpec::uniform(sigma, net.n_sites(), 7001, 10000);
      grid.push_back(run_ensemble(net, state, gamma, spec, 0));
    }
  const ScalingFit fit = fit_scaling(grid);
  const bool pass_gamma = std::abs(fit.slope_vs_gamma + 0.5) <= 0.1;
  const bool pass_sigma = std::abs(fit.slope_vs_sigma + 1.0) <= 0.1;
  report(7, pass_gamma && pass_sigma,
         "slope_vs_gamma = " + fmt(fit.slope_vs_gamma) + " +- " +
             fmt(fit.slope_vs_gamma_stderr) + " (want -0.5 +- 0.1), slope_vs_sigma = " +
             fmt(fit.slope_vs_sigma) + " +- " + fmt(fit.slope_vs_sigma_stderr) +
             " (want -1.0 +- 0.1); n = 10^4/point");
}

// 8. Disorder-enhanced efficiency at Gamma = 0.
void criterion_8() {
  const SiteNetwork net = dendrimer();
  const StateSpec state = make_state(net, StatePreset::outer_incoherent);
  const double clean = efficiency_exact(assemble(net, 0.0), state).q_exact;
  const DisorderSpec spec = DisorderSpec::uniform(4.0, net.n_sites(), 8001, 10000);
  const EnsembleResult r = run_ensemble(net, state, 0.0, spec, 0);
  const bool pass = std::abs(r.mean_q - 0.8) <= 0.1 && std::abs(clean - 0.2) <= 0.05;
  report(8, pass,
         "<q>_sigma = " + fmt(r.mean_q) + " (want 0.8 +- 0.1) vs clean q = " + fmt(clean) +
             " (want 0.2 +- 0.05)");
}

// 9. Static disorder is irrelevant at strong dephasing.
void criterion_9() {
  const SiteNetwork net = dendrimer();
  const StateSpec state = make_state(net, StatePreset::outer_incoherent);
  const double clean = trapping_time(assemble(net, 2e3), state).value;
  const DisorderSpec spec = DisorderSpec::uniform(4.0, net.n_sites(), 9001, 10000);
  const EnsembleResult r = run_ensemble(net, state, 2e3, spec, 0);
  const double rel = std::abs(r.mean_t - clean) / clean;
  report(9, rel < 0.02,
         "ensemble <t> at Gamma = 2e3, sigma = 4 differs from clean by " + fmt(rel) +
             " (want < 2%)");
}

// 10. Bitwise determinism of the ensemble CSV across thread counts.
void criterion_10() {
  const SiteNetwork net = dendrimer();
  const StateSpec state = make_state(net, StatePreset::outer_incoherent);
  auto csv_with_threads = [&](int threads) {
    std::ostringstream os;
    std::vector<EnsembleResult> rows;
    for (double gamma : {1e-3, 1.0})
      for (double sigma : {2.0, 4.0}) {
        const DisorderSpec spec = DisorderSpec::uniform(sigma, net.n_sites(), 1001, 2000);
        rows.push_back(run_ensemble(net, state, gamma, spec, threads));
      }
    write_disorder_csv(os, rows);
    return os.str();
  };
  const std::string serial = csv_with_threads(1);
  const std::string two = csv_with_threads(2);
  const std::string four = csv_with_threads(4);
  report(10, serial == two && serial == four,
         "ensemble CSV bitwise identical for 1, 2, and 4 worker threads");
}

} // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures == 0) std::printf("all criteria passed\n");
  else std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
