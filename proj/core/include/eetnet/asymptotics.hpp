#ifndef EETNET_ASYMPTOTICS_HPP
#define EETNET_ASYMPTOTICS_HPP

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "eetnet/mfpt.hpp"
#include "eetnet/subspace.hpp"

namespace eetnet {

/// Tr[(l_dissip,perp)^-1 rho_perp(0)]: the constant of the weak-damping
/// asymptote <t> ~ weak_constant / Gamma. The Gamma-normalized dephasing
/// superoperator is restricted to the block spanned by |phi_a><phi_b| with
/// a, b trapping-free. A singular restricted block falls back to the
/// pseudo-inverse and sets the flag.
struct WeakConstant {
  double value = 0.0;
  bool pseudo_inverse_used = false;
};

WeakConstant weak_damping_constant(const SiteNetwork& net, const SubspaceReport& report,
                                   const StateSpec& state);

/// Log-log least-squares fit of a (gamma, t) curve plus the constrained
/// linear prefactor of t ~ prefactor * gamma. Needs at least four points.
struct PowerLawFit {
  double slope = 0.0;
  double slope_stderr = 0.0;
  double log10_intercept = 0.0;
  double linear_prefactor = 0.0;  // least-squares t = prefactor * gamma
  int n_points = 0;
};

PowerLawFit strong_damping_fit(std::span<const std::pair<double, double>> curve);

/// Golden-section minimum of f over [lo, hi] (arguments in the same scale
/// the tolerance applies to). Returns the abscissa.
double golden_section_min(const std::function<double(double)>& f, double lo, double hi,
                          double tol);

/// Minimum of <t>(Gamma) over a log interval. `found == false` is the
/// no-optimum signal: the scanned curve is monotone or flat (plateau) so no
/// interior minimum beats the better endpoint by the plateau margin.
struct OptimumResult {
  bool found = false;
  double gamma_opt = 0.0;
  double t_min = 0.0;
  double gamma_estimate = 0.0;  // sqrt(weak_constant) * max|J|
};

OptimumResult gamma_opt(const SiteNetwork& net, const StateSpec& state, double gamma_lo,
                        double gamma_hi, int threads = 0);

struct AnalyzeOptions {
  double weak_lo_rel = 1e-6;    // windows in units of max|J|
  double weak_hi_rel = 1e-5;
  int weak_points = 4;
  double strong_lo_rel = 100.0;
  double strong_hi_rel = 1e4;
  int strong_points = 6;
  double opt_lo_rel = 1e-3;
  double opt_hi_rel = 1e3;
  int threads = 0;
};

/// Combined asymptotic analysis of one (network, state) pair.
struct AsymptoteReport {
  WeakConstant weak_constant;
  double weak_slope = 0.0;     // d log<t> / d log Gamma in the weak window
  double strong_slope = 0.0;   // ... in the strong window
  double hop_prefactor = 0.0;  // <t> ~ prefactor * Gamma at large Gamma
  OptimumResult optimum;
  std::vector<std::pair<double, double>> weak_curve;
  std::vector<std::pair<double, double>> strong_curve;

  double weak_prediction(double gamma) const { return weak_constant.value / gamma; }
  double hop_prediction(double gamma) const { return hop_prefactor * gamma; }
};

AsymptoteReport analyze_asymptotics(const SiteNetwork& net, const StateSpec& state,
                                    const AnalyzeOptions& options = {});

/// Log-spaced grid helper, inclusive of both endpoints.
std::vector<double> log_grid(double lo, double hi, int points);

} // namespace eetnet

#endif
