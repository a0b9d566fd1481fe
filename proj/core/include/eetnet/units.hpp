#ifndef EETNET_UNITS_HPP
#define EETNET_UNITS_HPP

namespace eetnet {

// All energies and rates are in meV with hbar = 1, so times come out in
// units of hbar/meV. Multiply a time by this constant to convert to ps.
inline constexpr double hbar_meV_ps = 0.6582119569;

} // namespace eetnet

#endif
