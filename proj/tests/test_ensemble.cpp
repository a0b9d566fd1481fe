#include <doctest.h>

#include <cmath>
#include <eetnet/ensemble.hpp>
#include <eetnet/errors.hpp>

#include "test_util.hpp"

using namespace eetnet;

namespace {

// Small star network keeps the per-sample solves cheap.
SiteNetwork star() { return build_dendrimer(1, 3, 20.0); }

} // namespace

TEST_CASE("zero disorder reproduces the clean network with zero spread") {
  const SiteNetwork net = star();
  const StateSpec state = make_state(net, StatePreset::site, 1);
  const DisorderSpec spec = DisorderSpec::uniform(0.0, net.n_sites(), 99, 64);
  const EnsembleResult r = run_ensemble(net, state, 2.0, spec, 2);

  const double clean = trapping_time(assemble(net, 2.0), state).value;
  CHECK(r.mean_t == clean);  // bitwise: every sample solves the same system
  CHECK(r.stderr_t == 0.0);
  CHECK(r.stderr_q == 0.0);
  CHECK(r.divergent_count == 0);
}

TEST_CASE("ensemble means are bitwise independent of the thread count") {
  const SiteNetwork net = star();
  const StateSpec state = make_state(net, StatePreset::site, 1);
  const DisorderSpec spec = DisorderSpec::uniform(2.0, net.n_sites(), 1234, 500);

  const EnsembleResult serial = run_ensemble(net, state, 0.5, spec, 1);
  const EnsembleResult threaded = run_ensemble(net, state, 0.5, spec, 2);
  CHECK(serial.mean_t == threaded.mean_t);
  CHECK(serial.stderr_t == threaded.stderr_t);
  CHECK(serial.mean_q == threaded.mean_q);
  CHECK(serial.stderr_q == threaded.stderr_q);
  CHECK(serial.divergent_count == threaded.divergent_count);
}

TEST_CASE("standard error shrinks like 1/sqrt(n)") {
  const SiteNetwork net = star();
  const StateSpec state = make_state(net, StatePreset::site, 1);
  std::vector<std::pair<double, double>> points;
  for (int n : {100, 1000, 10000}) {
    const DisorderSpec spec = DisorderSpec::uniform(2.0, net.n_sites(), 777, n);
    const EnsembleResult r = run_ensemble(net, state, 1.0, spec, 2);
    points.emplace_back(static_cast<double>(n), r.stderr_t);
  }
  const double slope =
      std::log(points[2].second / points[0].second) / std::log(points[2].first / points[0].first);
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.2));  // -0.5 +- 0.1
}

TEST_CASE("ensemble mean is stable under relabeling equivalent branches") {
  const SiteNetwork net = star();
  const StateSpec state = make_state(net, StatePreset::site, 1);

  // Swap two outer sites; the disorder stream maps to different sites, so
  // agreement is statistical.
  SiteNetwork permuted = net;
  permuted.labels.clear();
  const std::vector<int> perm = {0, 2, 1, 3};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      permuted.couplings(perm[i], perm[j]) = net.couplings(i, j);
  const StateSpec permuted_state = make_state(permuted, StatePreset::site, 2);

  const DisorderSpec spec = DisorderSpec::uniform(2.0, 4, 4321, 4000);
  const EnsembleResult a = run_ensemble(net, state, 1.0, spec, 2);
  const EnsembleResult b = run_ensemble(permuted, permuted_state, 1.0, spec, 2);
  const double tol = 5.0 * std::hypot(a.stderr_t, b.stderr_t);
  CHECK(std::abs(a.mean_t - b.mean_t) < tol);
}

TEST_CASE("scaling fit recovers synthetic exponents exactly") {
  std::vector<EnsembleResult> grid;
  for (double gamma : {1e-12, 1e-11, 1e-10, 1e-9}) {
    for (double sigma : {1.0, 2.0, 4.0, 8.0}) {
      EnsembleResult r;
      r.gamma = gamma;
      r.sigma = sigma;
      r.n_samples = 1;
      r.mean_t = 7.0 / (sigma * std::sqrt(gamma));
      grid.push_back(r);
    }
  }
  const ScalingFit fit = fit_scaling(grid);
  CHECK(fit.slope_vs_gamma == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(fit.slope_vs_sigma == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(fit.c == doctest::Approx(7.0).epsilon(1e-10));
  CHECK(!fit.regime_warning);
  CHECK(fit.rms_log_residual < 1e-12);
  REQUIRE(fit.c_prime_per_gamma.size() == 4);
  CHECK(fit.c_prime_per_gamma[0].second ==
        doctest::Approx(7.0 / std::sqrt(1e-12)).epsilon(1e-10));
}

TEST_CASE("scaling fit warns outside the weak-dephasing regime") {
  std::vector<EnsembleResult> grid;
  for (double gamma : {0.5, 1.0, 2.0}) {
    for (double sigma : {1.0, 2.0}) {
      EnsembleResult r;
      r.gamma = gamma;
      r.sigma = sigma;
      r.mean_t = 1.0 / (sigma * std::sqrt(gamma));
      grid.push_back(r);
    }
  }
  CHECK(fit_scaling(grid).regime_warning);
}

TEST_CASE("an ensemble whose every sample diverges raises the degenerate error") {
  // Gamma = 0 and sigma = 0 on a network with a protected subspace: each
  // sample hits the exactly singular decay-free generator.
  const SiteNetwork net = build_dendrimer(2, 3, 20.0);
  const StateSpec state = make_state(net, StatePreset::outer_incoherent);
  const DisorderSpec spec = DisorderSpec::uniform(0.0, net.n_sites(), 5, 4);
  CHECK_THROWS_AS(run_ensemble(net, state, 0.0, spec, 1), EnsembleDegenerateError);
}

TEST_CASE("scaling fit rejects degenerate grids") {
  std::vector<EnsembleResult> single;
  EnsembleResult r;
  r.gamma = 1e-10;
  r.sigma = 4.0;
  r.mean_t = 10.0;
  single.push_back(r);
  CHECK_THROWS_AS(fit_scaling(single), ParameterError);
}
