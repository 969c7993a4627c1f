#include "rqm/dispersion.hpp"

#include <cmath>

#include "rqm/error.hpp"
#include "rqm/units.hpp"

namespace rqm {

double free_energy(double p, double mass_energy) {
  if (!(p >= 0.0)) throw InvalidArgument("momentum must be non-negative");
  if (!(mass_energy >= 0.0)) throw InvalidArgument("mass energy must be non-negative");
  return std::hypot(p * c_light, mass_energy);
}

double total_energy(double p, double mass_energy, double potential) {
  return free_energy(p, mass_energy) + potential;
}

EffectiveMedium effective_medium(double energy, double potential, double mass_energy) {
  if (energy == 0.0) throw SingularEnergy();
  EffectiveMedium m;
  m.epsilon = 1.0 - (potential + mass_energy) / energy;
  m.mu = 1.0 - (potential - mass_energy) / energy;
  m.n_squared = m.epsilon * m.mu;
  return m;
}

double minkowski_momentum(double energy, const EffectiveMedium& medium) {
  if (medium.n_squared < 0.0) throw EvanescentRegime(medium.n_squared);
  return std::sqrt(medium.n_squared) * std::abs(energy) / c_light;
}

}  // namespace rqm
