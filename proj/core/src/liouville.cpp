#include "eetnet/liouville.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "eetnet/errors.hpp"

namespace eetnet {

namespace {
const Complex kI(0.0, 1.0);
} // namespace

SparseSuperOp LiouvillianParts::total_no_decay() const {
  SparseSuperOp sum = l_sys + l_dissip;
  sum += l_trap;
  sum.makeCompressed();
  return sum;
}

SparseSuperOp LiouvillianParts::total() const {
  SparseSuperOp sum = l_sys + l_dissip;
  sum += l_trap;
  sum += l_decay;
  sum.makeCompressed();
  return sum;
}

LiouvillianParts assemble(const SiteNetwork& net, double gamma) {
  validate_network(net);
  if (gamma < 0.0) throw ParameterError("dephasing rate gamma must be >= 0");

  const int n = net.n_sites();
  const int dim = n * n;
  LiouvillianParts parts;
  parts.n = n;
  parts.gamma = gamma;
  parts.trap_site = net.trap_site;
  parts.trap_rate = net.trap_rate;
  parts.decay_rate = net.decay_rate;

  using Triplet = Eigen::Triplet<Complex>;

  // l_sys vec(rho) = vec(i [H, rho]). The energy part contributes only to
  // the superoperator diagonal as i (eps_i - eps_j); keeping it as a single
  // difference makes the assembly invariant under uniform shifts.
  std::size_t coupling_nnz = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && net.couplings(a, b) != 0.0) ++coupling_nnz;
  std::vector<Triplet> sys;
  sys.reserve(static_cast<std::size_t>(dim) + 2 * coupling_nnz * static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double de = net.energies[i] - net.energies[j];
      if (de != 0.0) sys.emplace_back(vec_index(i, j, n), vec_index(i, j, n), kI * de);
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const double jab = net.couplings(a, b);
      if (jab == 0.0) continue;
      // i J_ab rho_bj  -> row (a,j), col (b,j)
      for (int j = 0; j < n; ++j)
        sys.emplace_back(vec_index(a, j, n), vec_index(b, j, n), kI * jab);
      // -i rho_ia J_ab -> row (i,b), col (i,a)
      for (int i = 0; i < n; ++i)
        sys.emplace_back(vec_index(i, b, n), vec_index(i, a, n), -kI * jab);
    }
  parts.l_sys.resize(dim, dim);
  parts.l_sys.setFromTriplets(sys.begin(), sys.end());
  parts.l_sys.makeCompressed();

  // l_dissip: Gamma on every coherence component, zero on populations.
  std::vector<Triplet> dissip;
  if (gamma > 0.0) {
    dissip.reserve(static_cast<std::size_t>(dim - n));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if (i != j) dissip.emplace_back(vec_index(i, j, n), vec_index(i, j, n), Complex(gamma, 0.0));
  }
  parts.l_dissip.resize(dim, dim);
  parts.l_dissip.setFromTriplets(dissip.begin(), dissip.end());
  parts.l_dissip.makeCompressed();

  // l_trap: (k_t/2) {P_t, rho} -> diagonal (k_t/2)(delta_it + delta_jt).
  std::vector<Triplet> trap;
  if (net.trap_rate > 0.0) {
    const int t = net.trap_site;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double w = 0.5 * net.trap_rate * ((i == t ? 1.0 : 0.0) + (j == t ? 1.0 : 0.0));
        if (w != 0.0) trap.emplace_back(vec_index(i, j, n), vec_index(i, j, n), Complex(w, 0.0));
      }
  }
  parts.l_trap.resize(dim, dim);
  parts.l_trap.setFromTriplets(trap.begin(), trap.end());
  parts.l_trap.makeCompressed();

  // l_decay: k_d on every component.
  std::vector<Triplet> decay;
  if (net.decay_rate > 0.0) {
    decay.reserve(static_cast<std::size_t>(dim));
    for (int k = 0; k < dim; ++k) decay.emplace_back(k, k, Complex(net.decay_rate, 0.0));
  }
  parts.l_decay.resize(dim, dim);
  parts.l_decay.setFromTriplets(decay.begin(), decay.end());
  parts.l_decay.makeCompressed();

  return parts;
}

void validate_state(const StateSpec& state, int n) {
  if (state.rho0.rows() != n || state.rho0.cols() != n)
    throw ParameterError("initial state has wrong dimension");
  const double herm = (state.rho0 - state.rho0.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12) throw ParameterError("initial state must be Hermitian within 1e-12");
  const double trace_err = std::abs(state.rho0.trace() - Complex(1.0, 0.0));
  if (trace_err > 1e-12) throw ParameterError("initial state must have unit trace within 1e-12");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(state.rho0, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw ParameterError("initial state must be positive semidefinite");
}

namespace {

// Depths of all sites from the trap; requires a branched tree so the
// "generation" of a site is well defined.
std::vector<int> generation_depths(const SiteNetwork& net, const char* preset_name) {
  if (!coupling_graph_is_tree(net))
    throw ConfigError(std::string(preset_name) + " preset requires a dendrimer (tree coupling graph)");
  const auto depth = coupling_depths(net, net.trap_site);
  int root_children = 0;
  for (int i = 0; i < net.n_sites(); ++i)
    if (depth[i] == 1) ++root_children;
  if (root_children < 2)
    throw ConfigError(std::string(preset_name) + " preset requires a dendrimer (branching >= 2 at the trap)");
  return depth;
}

} // namespace

StateSpec make_state(const SiteNetwork& net, StatePreset preset, int site) {
  const int n = net.n_sites();
  StateSpec state;
  state.preset = preset;
  state.rho0 = Eigen::MatrixXcd::Zero(n, n);

  switch (preset) {
    case StatePreset::outer_incoherent: {
      const auto depth = generation_depths(net, "outer_incoherent");
      const int outer = *std::max_element(depth.begin(), depth.end());
      if (outer < 1) throw ConfigError("outer_incoherent preset needs at least one generation");
      std::vector<int> sites;
      for (int i = 0; i < n; ++i)
        if (depth[i] == outer) sites.push_back(i);
      const double w = 1.0 / static_cast<double>(sites.size());
      for (int i : sites) state.rho0(i, i) = w;
      break;
    }
    case StatePreset::gen1_coherent: {
      const auto depth = generation_depths(net, "gen1_coherent");
      Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n);
      int count = 0;
      for (int i = 0; i < n; ++i)
        if (depth[i] == 1) {
          psi[i] = 1.0;
          ++count;
        }
      psi /= std::sqrt(static_cast<double>(count));
      state.rho0 = psi * psi.adjoint();
      break;
    }
    case StatePreset::site: {
      if (site < 0 || site >= n) throw ConfigError("site preset index out of range");
      state.site = site;
      state.rho0(site, site) = 1.0;
      break;
    }
    case StatePreset::custom:
      throw ParameterError("use make_custom_state for explicit density matrices");
  }
  validate_state(state, n);
  return state;
}

StateSpec make_custom_state(const SiteNetwork& net, Eigen::MatrixXcd rho0) {
  StateSpec state;
  state.preset = StatePreset::custom;
  state.rho0 = std::move(rho0);
  validate_state(state, net.n_sites());
  return state;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

double vec_trace(const Eigen::VectorXcd& y, int n) {
  double tr = 0.0;
  for (int i = 0; i < n; ++i) tr += y[i * (n + 1)].real();
  return tr;
}

} // namespace

std::vector<TrajectoryPoint> propagate(const LiouvillianParts& parts,
                                       const StateSpec& state,
                                       const PropagateOptions& options) {
  if (options.t_final <= 0.0) throw ParameterError("t_final must be > 0");
  validate_state(state, parts.n);

  const int n = parts.n;
  const SparseSuperOp gen =
      options.include_decay ? parts.total() : parts.total_no_decay();

  Eigen::VectorXcd y = Eigen::Map<const Eigen::VectorXcd>(state.rho0.data(), parts.dim());
  auto deriv = [&gen](const Eigen::VectorXcd& v) -> Eigen::VectorXcd { return -(gen * v); };

  std::vector<TrajectoryPoint> traj;
  auto store = [&](double t, const Eigen::VectorXcd& v, double integral) {
    TrajectoryPoint pt;
    pt.t = t;
    pt.rho = Eigen::Map<const Eigen::MatrixXcd>(v.data(), n, n);
    pt.trace = vec_trace(v, n);
    pt.survival_integral = integral;
    traj.push_back(std::move(pt));
  };

  double t = 0.0;
  double integral = 0.0;
  store(t, y, integral);

  Eigen::VectorXcd k1 = deriv(y);
  const double y_norm = y.cwiseAbs().maxCoeff();
  const double f_norm = std::max(k1.cwiseAbs().maxCoeff(), 1e-300);
  double h = std::min(options.t_final, 0.01 * std::max(y_norm, options.abs_tol) / f_norm);

  std::uint64_t stride = 1, since_store = 0, steps = 0;
  const double initial_trace = vec_trace(y, n);

  Eigen::VectorXcd y2, y3, y4, y5, y6, ynew, k2, k3, k4, k5, k6, k7, err;

  while (t < options.t_final) {
    if (++steps > options.max_steps)
      throw IntegrationError("step budget exhausted", t);
    h = std::min(h, options.t_final - t);
    if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
      throw IntegrationError("step size underflow", t);

    y2 = y + h * (kA21 * k1);
    k2 = deriv(y2);
    y3 = y + h * (kA31 * k1 + kA32 * k2);
    k3 = deriv(y3);
    y4 = y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3);
    k4 = deriv(y4);
    y5 = y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4);
    k5 = deriv(y5);
    y6 = y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5);
    k6 = deriv(y6);
    ynew = y + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
    k7 = deriv(ynew);
    err = h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);

    double err_norm = 0.0;
    for (int i = 0; i < err.size(); ++i) {
      const double scale =
          options.abs_tol +
          options.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err_norm = std::max(err_norm, std::abs(err[i]) / scale);
    }

    if (err_norm <= 1.0) {
      // Quadrature of Tr rho with the same 5th-order weights.
      integral += h * (kB1 * vec_trace(y, n) + kB3 * vec_trace(y3, n) +
                       kB4 * vec_trace(y4, n) + kB5 * vec_trace(y5, n) +
                       kB6 * vec_trace(y6, n));
      t += h;
      y.swap(ynew);
      k1.swap(k7);

      if (++since_store >= stride) {
        since_store = 0;
        store(t, y, integral);
        if (static_cast<int>(traj.size()) >= options.max_stored) {
          // Thin by keeping every other sample; double the stride.
          std::vector<TrajectoryPoint> thinned;
          thinned.reserve(traj.size() / 2 + 2);
          for (std::size_t i = 0; i < traj.size(); i += 2) thinned.push_back(std::move(traj[i]));
          traj = std::move(thinned);
          stride *= 2;
        }
      }
      if (options.trace_floor > 0.0 &&
          vec_trace(y, n) < options.trace_floor * std::max(initial_trace, 1e-300))
        break;
    }

    const double factor =
        (err_norm <= 0.0) ? 5.0
                          : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
    h *= factor;
  }

  if (traj.back().t != t) store(t, y, integral);
  return traj;
}

} // namespace eetnet
