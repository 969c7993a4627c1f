#pragma once

#include "rqm/report.hpp"
#include "rqm/vector_qm.hpp"

namespace rqm::io {

/// Runs the named scenario. Numerical errors (singular energy, evanescent
/// regime, non-invertible medium) are caught and stored in RunReport::error
/// together with the offending parameters. Invalid configs throw ConfigError.
RunReport run_scenario(const ScenarioConfig& config);

FourierGrid make_grid(const GridConfig& grid);

/// zero, constant V0 or V(r) = value + amplitude cos(2 pi mode z / L).
PotentialSpec make_potential(const PotentialConfig& potential, const FourierGrid& grid);

/// Unit-norm superposition of positive-energy Dirac plane waves (first spin
/// state) with Gaussian weights exp(-|k - k0|^2 w^2 / 2) around `k0`,
/// centred at `center`. Nyquist modes are left empty.
BiSpinorField dirac_wave_packet(const FourierGrid& grid, double mass_energy, const Vec3& k0, const Vec3& center,
                                double width);

/// Same for transverse Maxwell eigenmodes (particle branch, first
/// polarization); k = 0 and Nyquist modes are left empty.
TransverseFieldPair maxwell_wave_packet(const FourierGrid& grid, double mass_energy, const Vec3& k0,
                                        const Vec3& center, double width);

}  // namespace rqm::io
