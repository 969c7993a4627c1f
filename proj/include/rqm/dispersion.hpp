#pragma once

namespace rqm {

struct ParticleParams {
  double mass_energy = 0.0;  ///< mc^2
  double potential_value = 0.0;
};

/// Permittivity, permeability and squared refractive index of the fictitious
/// medium that turns E = sqrt((pc)^2 + (mc^2)^2) + V into E = pc/n.
struct EffectiveMedium {
  double epsilon = 1.0;
  double mu = 1.0;
  double n_squared = 1.0;
};

/// Positive branch sqrt((pc)^2 + (mc^2)^2). Throws InvalidArgument for
/// negative p or m.
double free_energy(double p, double mass_energy);

/// free_energy(p, m) + V.
double total_energy(double p, double mass_energy, double potential);

/// eps = 1 - (V + mc^2)/E, mu = 1 - (V - mc^2)/E, n^2 = eps mu.
/// Throws SingularEnergy for E = 0.
EffectiveMedium effective_medium(double energy, double potential, double mass_energy);

/// Minkowski momentum sqrt(eps mu) E / c. Throws EvanescentRegime when
/// n^2 < 0.
double minkowski_momentum(double energy, const EffectiveMedium& medium);

}  // namespace rqm
