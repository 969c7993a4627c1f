#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rqm/fourier_grid.hpp"
#include "rqm/scalar_qm.hpp"

namespace rqm {

/// Complex E and H fields of the vector-field formulation. Both are expected
/// to be divergence-free.
struct TransverseFieldPair {
  Vec3Field e;
  Vec3Field h;

  TransverseFieldPair() = default;
  explicit TransverseFieldPair(std::size_t points) : e(points), h(points) {}
  TransverseFieldPair(Vec3Field e_field, Vec3Field h_field) : e(std::move(e_field)), h(std::move(h_field)) {}
};

double norm_squared(const TransverseFieldPair& f, const FourierGrid& grid);
double norm(const TransverseFieldPair& f, const FourierGrid& grid);
/// max(||div E|| / ||E||, ||div H|| / ||H||).
double max_relative_divergence(const TransverseFieldPair& f, const FourierGrid& grid);

/// psi = sqrt(eps) E + i sqrt(mu) H. For complex E and H the vector alone
/// does not fix both fields, so the partner sqrt(eps) E - i sqrt(mu) H is
/// carried along; for real fields it equals conj(psi).
struct RiemannSilbersteinField {
  Vec3Field psi;
  Vec3Field psi_partner;
  double epsilon_used = 1.0;
  double mu_used = 1.0;
};

/// Throws NonInvertibleMedium unless eps > 0 and mu > 0.
RiemannSilbersteinField rs_compose(const TransverseFieldPair& fields, double epsilon, double mu);
TransverseFieldPair rs_decompose(const RiemannSilbersteinField& rs);

using Matrix6c = Eigen::Matrix<Complex, 6, 6>;
using Vector6c = Eigen::Matrix<Complex, 6, 1>;

/// G(k) with i hbar d/dt (E; H) = G(k) (E; H):
/// [[(V0 + mc^2) I, -hbar c [k]x], [hbar c [k]x, (V0 - mc^2) I]].
Matrix6c maxwell_generator_k(const Vec3& k, double mass_energy, double v0);

/// Two real unit vectors orthogonal to k. The first is the coordinate axis
/// with the smallest |k_i| (lowest index on ties) with its k component
/// removed; the second is k_hat x first. Throws UndefinedPolarization at k = 0.
std::pair<Vec3, Vec3> polarization_basis(const Vec3& k);

struct GeneratorSpectrum {
  std::vector<double> transverse;    ///< 4 values, descending
  std::vector<double> longitudinal;  ///< 2 values, descending
};

/// Eigenvalues of G(k) restricted to the transverse (k.E = k.H = 0) and
/// longitudinal subspaces. G commutes with the transverse projector, so the
/// restrictions are exact blocks. Requires |k| > 0.
GeneratorSpectrum maxwell_spectrum(const Vec3& k, double mass_energy, double v0);

struct MaxwellMode {
  Vec3 k = Vec3::Zero();
  double energy = 0.0;
  CVec3 e0 = CVec3::Zero();
  CVec3 h0 = CVec3::Zero();
  Branch branch;

  Vector6c stacked() const;
};

/// The four transverse eigenmodes of G(k), energies V0 +- sqrt((hbar|k|c)^2
/// + (mc^2)^2). Polarization vectors are real; (E0; H0) has unit norm and a
/// real positive first nonzero component. Throws UndefinedPolarization at
/// k = 0.
std::vector<MaxwellMode> maxwell_eigenmodes(const Vec3& k, double mass_energy, double v0);

/// ||lhs - rhs|| / max(||lhs||, ||rhs||, floor), 0 when all vanish.
double relative_gap(const Eigen::VectorXcd& lhs, const Eigen::VectorXcd& rhs, double floor = 0.0);

struct PairResidual {
  double first = 0.0;
  double second = 0.0;
  double max() const { return first > second ? first : second; }
};

/// (|E - V0| + mc^2) ||(E0; H0)||, the denominator floor of the mode residuals.
double residual_floor(const MaxwellMode& mode, double mass_energy, double v0, double energy);

/// Residuals of (E - V - mc^2) E0 = -c p x H0 and (E - V + mc^2) H0 = c p x E0.
PairResidual maxwell_mode_residual(const MaxwellMode& mode, double mass_energy, double v0, double energy);

/// Residuals of eps E E0 = -c p x H0 and mu E H0 = c p x E0 with (eps, mu)
/// from effective_medium(E, V0, m), same floor as above. Throws
/// SingularEnergy at E = 0.
PairResidual medium_form_residual(const MaxwellMode& mode, double mass_energy, double v0);

/// E0 exp(i k.r), H0 exp(i k.r) scaled by `amplitude`.
TransverseFieldPair sample_mode(const MaxwellMode& mode, const FourierGrid& grid, Complex amplitude = 1.0);

// ---- grid dynamics ---------------------------------------------------------

/// G applied to (E, H): kinetic part spectrally, V pointwise.
TransverseFieldPair apply_maxwell_generator(const TransverseFieldPair& fields, const FourierGrid& grid,
                                            double mass_energy, const PotentialSpec& pot);

struct MaxwellEvolution {
  TransverseFieldPair state;
  /// Largest max_relative_divergence seen after any step.
  double max_divergence = 0.0;
  /// Squared norm removed by transverse re-projection, per step. Empty for
  /// uniform potentials, where no projection is needed.
  std::vector<double> discarded_norm_squared;

  double total_discarded() const;
};

/// Uniform V: exact per-mode propagation exp(-i G(k) t / hbar). Sampled V:
/// Strang splitting with the exact kinetic step, re-projecting onto the
/// transverse subspace after each potential sub-step. Requires a 3D grid.
MaxwellEvolution evolve_maxwell(const TransverseFieldPair& state, const FourierGrid& grid,
                                const PotentialSpec& pot, double mass_energy, double dt, std::size_t steps,
                                const Observation<TransverseFieldPair>& observe = {});

/// Every Cartesian component of E and H under the Schrodinger propagator,
/// with transverse re-projection after potential sub-steps for sampled V.
/// Throws InvalidArgument for m = 0.
MaxwellEvolution evolve_schrodinger_maxwell(const TransverseFieldPair& state, const FourierGrid& grid,
                                            const PotentialSpec& pot, double mass_energy, double dt,
                                            std::size_t steps,
                                            const Observation<TransverseFieldPair>& observe = {});

/// ||(E_cl - V0) F + (hbar^2/2m) Laplacian F|| / ||F|| for F = E (first) and
/// F = H (second).
PairResidual nr_reduction_residual(const TransverseFieldPair& state, const FourierGrid& grid, double mass_energy,
                                   double v0, double classical_energy);

/// (1/8pi) sum eps |F|^2 dV.
double energy_normalization(const Vec3Field& field, double eps_or_mu, const FourierGrid& grid);

/// Scales E so (1/8pi) int eps |E|^2 = target and H so (1/8pi) int mu |H|^2
/// = target. Throws CannotNormalize for a zero field.
TransverseFieldPair normalize_to_energy(const TransverseFieldPair& state, double epsilon, double mu,
                                        double target_energy, const FourierGrid& grid);

}  // namespace rqm
