#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "rqm/fourier_grid.hpp"
#include "rqm/pauli.hpp"

namespace rqm {

/// V as zero, a constant V0, or real samples on a grid.
class PotentialSpec {
 public:
  enum class Kind { zero, constant, sampled };

  static PotentialSpec zero() { return PotentialSpec(Kind::zero, 0.0, {}); }
  static PotentialSpec constant(double v0);
  static PotentialSpec sampled(RealField values);

  Kind kind() const { return kind_; }
  bool is_uniform() const { return kind_ != Kind::sampled; }
  /// V0 for zero/constant kinds.
  double uniform_value() const { return value_; }
  const RealField& samples() const { return samples_; }
  /// V at grid point `i`.
  double at(std::size_t i) const { return kind_ == Kind::sampled ? samples_[i] : value_; }

  /// Throws InvalidArgument if sampled values do not match the grid.
  void check_against(const FourierGrid& grid) const;

 private:
  PotentialSpec(Kind kind, double value, RealField samples)
      : kind_(kind), value_(value), samples_(std::move(samples)) {}

  Kind kind_;
  double value_;
  RealField samples_;
};

enum class Charge { particle, antiparticle };

/// Particle/antiparticle branch and the index (1 or 2) inside the
/// degenerate pair.
struct Branch {
  Charge charge = Charge::particle;
  int spin = 1;

  bool operator==(const Branch&) const = default;
  std::string label() const;
};

struct PlaneWaveMode {
  Vec3 k = Vec3::Zero();
  double energy = 0.0;
  Eigen::VectorXcd eigenvector;
  Branch branch;
  double omega = 0.0;  ///< energy / hbar
};

using Matrix4c = Eigen::Matrix4cd;

/// [[V0 + mc^2, c hbar|k|], [c hbar|k|, V0 - mc^2]].
Eigen::Matrix2cd spinless_hamiltonian_k(const Vec3& k, double mass_energy, double v0);

/// [[(V0 + mc^2) I, c sigma.(hbar k)], [c sigma.(hbar k), (V0 - mc^2) I]].
Matrix4c dirac_hamiltonian_k(const Vec3& k, double mass_energy, double v0);

/// Eigenvalues of dirac_hamiltonian_k by dense Hermitian eigensolve, sorted
/// descending.
std::array<double, 4> dirac_spectrum(const Vec3& k, double mass_energy, double v0);

/// Eigenvalues of spinless_hamiltonian_k, sorted descending.
std::array<double, 2> spinless_spectrum(const Vec3& k, double mass_energy, double v0);

/// The four plane-wave eigenmodes of the Dirac Hamiltonian. Degenerate pairs
/// are rebuilt from their spectral projector by Gram-Schmidt over the
/// standard basis; each eigenvector has its first nonzero component real
/// and positive. Sorted by energy descending, then branch.
std::vector<PlaneWaveMode> dirac_eigenmodes(const Vec3& k, double mass_energy, double v0);

/// Rescales `v` so its first nonzero component (|v_i| > tol * |v|) is real
/// and positive.
void apply_phase_convention(Eigen::Ref<Eigen::VectorXcd> v, double tol = 1e-12);

/// ||H v - E v|| / (||v|| * scale) with scale = max(|E|, ||H||_2, tiny).
double eigen_residual(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& v, double energy);

// ---- grid operators ------------------------------------------------------

/// H psi with the kinetic term applied spectrally and V pointwise.
BiSpinorField apply_dirac_hamiltonian(const BiSpinorField& psi, const FourierGrid& grid,
                                      double mass_energy, const PotentialSpec& pot);

/// c (sigma . p) applied spectrally to a two-component field.
SpinorField apply_sigma_momentum(const SpinorField& phi, const FourierGrid& grid);

template <typename State>
using StepObserver = std::function<void(std::size_t step, const State& state)>;

/// Observer called after every `stride` steps (and never when stride = 0).
template <typename State>
struct Observation {
  std::size_t stride = 0;
  StepObserver<State> callback;

  bool due(std::size_t step) const { return stride != 0 && callback && step % stride == 0; }
};

/// Propagates i hbar dPsi/dt = H Psi. Uniform V: exact per-mode propagator
/// exp(-i H(k) t / hbar) from the spectral projectors of H(k). Sampled V:
/// Strang splitting V/2 - kinetic - V/2 with the exact kinetic exponential.
BiSpinorField evolve_dirac(const BiSpinorField& state, const FourierGrid& grid, const PotentialSpec& pot,
                           double mass_energy, double dt, std::size_t steps,
                           const Observation<BiSpinorField>& observe = {});

/// Psi_k = Psi exp(+i mc^2 t / hbar).
BiSpinorField gauge_to_kinetic(const BiSpinorField& state, double t, double mass_energy);
/// Inverse of gauge_to_kinetic.
BiSpinorField gauge_from_kinetic(const BiSpinorField& state, double t, double mass_energy);

/// Per-mode kinetic phases exp(-i hbar k^2 dt / 2m) in FFT order.
Field schrodinger_kinetic_phases(const FourierGrid& grid, double mass_energy, double dt);

/// Split-step propagation of i hbar dpsi/dt = (-hbar^2 Laplacian / 2m + V) psi.
/// Throws InvalidArgument for m = 0.
Field evolve_schrodinger(const Field& psi, const FourierGrid& grid, const PotentialSpec& pot,
                         double mass_energy, double dt, std::size_t steps,
                         const Observation<Field>& observe = {});

/// X = c (sigma . p) Phi / (2 mc^2).
SpinorField levy_leblond_lower(const SpinorField& phi, const FourierGrid& grid, double mass_energy);

struct LevyLeblondResidual {
  double upper = 0.0;  ///< ||(E_cl - V) Phi - c (sigma.p) X|| / ||Phi||
  double lower = 0.0;  ///< ||2mc^2 X - c (sigma.p) Phi|| / max(||X||, ||Phi||)
};

LevyLeblondResidual levy_leblond_residual(const SpinorField& phi, const SpinorField& chi,
                                          const FourierGrid& grid, const PotentialSpec& pot,
                                          double mass_energy, double classical_energy);

/// ||(d_tt - c^2 Laplacian + (mc^2/hbar)^2) psi|| / ||psi|| at the middle
/// sample, d_tt by second-order central difference.
double klein_gordon_residual(const std::array<Field, 3>& samples, const FourierGrid& grid, double dt,
                             double mass_energy);

}  // namespace rqm
