#ifndef EETNET_TESTS_ORACLE_HPP
#define EETNET_TESTS_ORACLE_HPP

// Time-domain reference path: integrate the master equation and accumulate
// int Tr rho dt, closing the remainder with the instantaneous decay rate.
// Kept independent of the resolvent (linear-solve) code it cross-checks.

#include <eetnet/liouville.hpp>

namespace eetnet::testing {

struct IntegratedSurvival {
  double value = 0.0;       // int_0^inf Tr rho dt
  double t_reached = 0.0;
  double tail = 0.0;
};

inline IntegratedSurvival integrate_survival(const LiouvillianParts& parts,
                                             const StateSpec& state,
                                             bool include_decay,
                                             double rel_tol = 1e-10,
                                             double trace_floor = 1e-9) {
  PropagateOptions options;
  options.t_final = 1e9;
  options.include_decay = include_decay;
  options.rel_tol = rel_tol;
  options.trace_floor = trace_floor;
  const auto traj = propagate(parts, state, options);

  const auto& last = traj.back();
  const double trace = last.trace;
  const double trap_pop = last.rho(parts.trap_site, parts.trap_site).real();
  // d Tr rho/dt = -k_t rho_tt - [k_d Tr rho]; assume exponential decay at the
  // instantaneous rate from time t_reached onward.
  double drain = parts.trap_rate * trap_pop;
  if (include_decay) drain += parts.decay_rate * trace;

  IntegratedSurvival out;
  out.t_reached = last.t;
  out.tail = drain > 0.0 ? trace * trace / drain : 0.0;
  out.value = last.survival_integral + out.tail;
  return out;
}

/// <t> oracle: survival integral of the decay-free dynamics.
inline double mfpt_by_integration(const LiouvillianParts& parts, const StateSpec& state,
                                  double rel_tol = 1e-10) {
  return integrate_survival(parts, state, false, rel_tol).value;
}

} // namespace eetnet::testing

#endif
