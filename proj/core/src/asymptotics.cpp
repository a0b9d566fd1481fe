#include "eetnet/asymptotics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "eetnet/errors.hpp"
#include "eetnet/parallel.hpp"

namespace eetnet {

namespace {

// Fraction by which an interior minimum must beat the better endpoint to
// count as an optimum. Curves that are flat before turning linear can carry
// shallow dips of a few percent; those still classify as a plateau.
constexpr double kPlateauMargin = 0.25;

constexpr double kGoldenRatio = 0.6180339887498949;

} // namespace

std::vector<double> log_grid(double lo, double hi, int points) {
  if (lo <= 0.0 || hi <= lo || points < 2) throw ParameterError("invalid log grid");
  std::vector<double> grid(points);
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (int i = 0; i < points; ++i)
    grid[i] = std::pow(10.0, llo + (lhi - llo) * i / (points - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

WeakConstant weak_damping_constant(const SiteNetwork& net, const SubspaceReport& report,
                                   const StateSpec& state) {
  validate_state(state, net.n_sites());
  WeakConstant out;
  if (report.perp_dim == 0) return out;

  const Projection proj = project_state(report, state);
  // States prepared outside the subspace project to roundoff-level residue.
  if (proj.perp_population <= 1e-12) return out;

  const int n = net.n_sites();

  // Slow space of the Gamma -> 0 limit: elements |phi_a><phi_b| with a, b
  // trapping-free AND degenerate (lambda_a = lambda_b). Nondegenerate pairs
  // rotate under l_sys and drop out of the leading 1/Gamma order, so the
  // dephasing block is restricted to degenerate pairs only.
  const double scale = report.exciton_energies.cwiseAbs().maxCoeff();
  const double eps_deg = kDegenerateRel * scale;
  std::vector<std::pair<int, int>> pairs;  // (a, b) exciton index pairs
  {
    std::vector<std::vector<int>> blocks;
    int lo = 0;
    while (lo < n) {
      int hi = lo + 1;
      while (hi < n &&
             report.exciton_energies[hi] - report.exciton_energies[hi - 1] <= eps_deg)
        ++hi;
      std::vector<int> members;
      for (int k = lo; k < hi; ++k)
        if (report.overlaps[k] < kOrthThreshold) members.push_back(k);
      if (!members.empty()) blocks.push_back(std::move(members));
      lo = hi;
    }
    for (const auto& members : blocks)
      for (int a : members)
        for (int b : members) pairs.emplace_back(a, b);
  }
  const int m = static_cast<int>(pairs.size());
  if (m == 0) return out;

  // M_(ab),(cd) = delta_ac delta_bd - sum_i phi_a(i) phi_b(i) phi_c(i) phi_d(i),
  // i.e. M = I - W^T W with W(i, p) = phi_a(i) phi_b(i) for pair p = (a, b).
  Eigen::MatrixXd w(n, m);
  for (int p = 0; p < m; ++p) {
    const auto [a, b] = pairs[p];
    w.col(p) = report.exciton_states.col(a).cwiseProduct(report.exciton_states.col(b));
  }
  Eigen::MatrixXd block = Eigen::MatrixXd::Identity(m, m);
  block.noalias() -= w.transpose() * w;

  // rho(0) components on the slow pairs (the trace only needs the real part).
  Eigen::VectorXd rhs(m);
  for (int p = 0; p < m; ++p) {
    const auto [a, b] = pairs[p];
    const Complex val = report.exciton_states.col(a).transpose().cast<Complex>() *
                        state.rho0 * report.exciton_states.col(b).cast<Complex>();
    rhs[p] = val.real();
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(block);
  Eigen::VectorXd x;
  if (lu.isInvertible()) {
    x = lu.solve(rhs);
  } else {
    out.pseudo_inverse_used = true;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(block);
    x = cod.solve(rhs);
  }

  double trace = 0.0;
  for (int p = 0; p < m; ++p)
    if (pairs[p].first == pairs[p].second) trace += x[p];
  out.value = trace;
  return out;
}

PowerLawFit strong_damping_fit(std::span<const std::pair<double, double>> curve) {
  if (curve.size() < 4)
    throw ParameterError("power-law fit needs at least four points");
  const int m = static_cast<int>(curve.size());
  Eigen::VectorXd lx(m), ly(m);
  for (int i = 0; i < m; ++i) {
    const auto [gamma, t] = curve[i];
    if (gamma <= 0.0 || t <= 0.0 || !std::isfinite(gamma) || !std::isfinite(t))
      throw ParameterError("power-law fit needs positive finite (gamma, t) points");
    lx[i] = std::log10(gamma);
    ly[i] = std::log10(t);
  }
  const double mx = lx.mean(), my = ly.mean();
  const double sxx = (lx.array() - mx).square().sum();
  const double sxy = ((lx.array() - mx) * (ly.array() - my)).sum();

  PowerLawFit fit;
  fit.n_points = m;
  fit.slope = sxy / sxx;
  fit.log10_intercept = my - fit.slope * mx;
  const double ss_res = (ly.array() - my - fit.slope * (lx.array() - mx)).square().sum();
  fit.slope_stderr = m > 2 ? std::sqrt(ss_res / ((m - 2) * sxx)) : 0.0;

  // Constrained fit t = prefactor * gamma.
  double num = 0.0, den = 0.0;
  for (const auto& [gamma, t] : curve) {
    num += t * gamma;
    den += gamma * gamma;
  }
  fit.linear_prefactor = num / den;
  return fit;
}

double golden_section_min(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
  if (!(hi > lo)) throw ParameterError("golden section needs lo < hi");
  double a = lo, b = hi;
  double x1 = b - kGoldenRatio * (b - a);
  double x2 = a + kGoldenRatio * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGoldenRatio * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGoldenRatio * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

namespace {

double trapping_time_at(const SiteNetwork& net, const StateSpec& state, double gamma) {
  const MfptResult r = trapping_time(assemble(net, gamma), state);
  return r.divergent ? std::numeric_limits<double>::infinity() : r.value;
}

} // namespace

OptimumResult gamma_opt(const SiteNetwork& net, const StateSpec& state, double gamma_lo,
                        double gamma_hi, int threads) {
  if (!(gamma_lo > 0.0) || !(gamma_hi > gamma_lo))
    throw ParameterError("gamma_opt needs 0 < gamma_lo < gamma_hi");

  OptimumResult out;
  const SubspaceReport report = find_orthogonal_subspace(net);
  const WeakConstant weak = weak_damping_constant(net, report, state);
  out.gamma_estimate =
      weak.value > 0.0 ? std::sqrt(weak.value) * net.max_coupling() : 0.0;

  // Coarse scan to bracket the minimum and detect monotone/plateau curves.
  constexpr int kScanPoints = 33;
  const std::vector<double> grid = log_grid(gamma_lo, gamma_hi, kScanPoints);
  std::vector<double> t(kScanPoints);
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    t[i] = trapping_time_at(net, state, grid[i]);
  });

  int best = 0;
  for (int i = 1; i < kScanPoints; ++i)
    if (t[i] < t[best]) best = i;
  const double endpoint_min = std::min(t.front(), t.back());
  if (best == 0 || best == kScanPoints - 1 ||
      !(t[best] < (1.0 - kPlateauMargin) * endpoint_min)) {
    out.t_min = t[best];
    out.gamma_opt = grid[best];
    return out;  // no interior optimum
  }

  const double xlo = std::log10(grid[best - 1]);
  const double xhi = std::log10(grid[best + 1]);
  const double xopt = golden_section_min(
      [&](double x) { return trapping_time_at(net, state, std::pow(10.0, x)); }, xlo, xhi,
      1e-3);
  out.found = true;
  out.gamma_opt = std::pow(10.0, xopt);
  out.t_min = trapping_time_at(net, state, out.gamma_opt);
  return out;
}

AsymptoteReport analyze_asymptotics(const SiteNetwork& net, const StateSpec& state,
                                    const AnalyzeOptions& options) {
  const double jmax = net.max_coupling();
  if (jmax <= 0.0) throw ParameterError("asymptotic analysis needs a coupled network");

  AsymptoteReport report;
  const SubspaceReport sub = find_orthogonal_subspace(net);
  report.weak_constant = weak_damping_constant(net, sub, state);

  auto curve_over = [&](double lo, double hi, int points) {
    std::vector<std::pair<double, double>> curve(points);
    const std::vector<double> grid = log_grid(lo, hi, points);
    std::vector<double> t(points);
    parallel_for(grid.size(), options.threads, [&](std::size_t i) {
      t[i] = trapping_time_at(net, state, grid[i]);
    });
    for (int i = 0; i < points; ++i) curve[i] = {grid[i], t[i]};
    return curve;
  };

  report.weak_curve =
      curve_over(options.weak_lo_rel * jmax, options.weak_hi_rel * jmax, options.weak_points);
  report.strong_curve = curve_over(options.strong_lo_rel * jmax, options.strong_hi_rel * jmax,
                                   options.strong_points);

  report.weak_slope = strong_damping_fit(report.weak_curve).slope;
  const PowerLawFit strong = strong_damping_fit(report.strong_curve);
  report.strong_slope = strong.slope;
  report.hop_prefactor = strong.linear_prefactor;

  report.optimum =
      gamma_opt(net, state, options.opt_lo_rel * jmax, options.opt_hi_rel * jmax, options.threads);
  return report;
}

} // namespace eetnet
