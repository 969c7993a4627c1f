#pragma once

#include <numbers>

namespace rqm {

// Natural units: hbar = c = 1 everywhere internally. Masses enter as rest
// energies mc^2. Field energies follow the Gaussian convention, hence the
// 8*pi in the energy normalization of E and H.
struct UnitSystem {
  static constexpr double hbar = 1.0;
  static constexpr double c = 1.0;
  static constexpr double gauss_factor = 8.0 * std::numbers::pi;
};

inline constexpr double hbar = UnitSystem::hbar;
inline constexpr double c_light = UnitSystem::c;
inline constexpr double gauss_factor = UnitSystem::gauss_factor;

}  // namespace rqm
