#include "rqm/scalar_qm.hpp"

#include <algorithm>
#include <cmath>

#include "rqm/error.hpp"
#include "rqm/spectral_ops.hpp"
#include "rqm/units.hpp"

namespace rqm {

namespace {

constexpr Complex I{0.0, 1.0};

void require_positive_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time step must be positive and finite");
}

template <std::size_t N>
void require_state(const MultiField<N>& state, const FourierGrid& grid) {
  for (const auto& c : state.comp)
    if (c.size() != grid.size()) throw InvalidArgument("state size does not match grid");
  if (!all_finite(state)) throw InvalidArgument("state contains non-finite values");
}

void apply_potential_phase(Field& f, const PotentialSpec& pot, double tau) {
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= std::polar(1.0, -pot.at(i) * tau / hbar);
}

/// Exact exp(-i M dt / hbar) per Fourier mode with M = H(k) - V, stored as
/// cos(w dt) and sin(w dt)/w so M^2 = w^2 gives the closed form
/// cos(w dt) - i sin(w dt) M / w.
struct DiracKineticStep {
  std::vector<double> cosines;
  std::vector<double> sines;  // sin(w dt) / w, dt / hbar at w = 0
  double mass_energy;

  DiracKineticStep(const FourierGrid& grid, double m, double dt) : mass_energy(m) {
    cosines.resize(grid.size());
    sines.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double w = std::hypot(hbar * c_light * grid.derivative_wave_vector(i).norm(), m) / hbar;
      cosines[i] = std::cos(w * dt);
      sines[i] = w == 0.0 ? dt : std::sin(w * dt) / w;
    }
  }

  void apply(BiSpinorField& psihat, const FourierGrid& grid, Complex uniform_phase) const {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Vec3 p = hbar * grid.derivative_wave_vector(i);
      const Complex sx = c_light * p.x(), sy = c_light * p.y(), sz = c_light * p.z();
      const Complex u1 = psihat[0][i], u2 = psihat[1][i], l1 = psihat[2][i], l2 = psihat[3][i];
      // M psi with M = [[m, c sigma.p], [c sigma.p, -m]]
      const Complex m1 = mass_energy * u1 + sz * l1 + (sx - I * sy) * l2;
      const Complex m2 = mass_energy * u2 + (sx + I * sy) * l1 - sz * l2;
      const Complex m3 = -mass_energy * l1 + sz * u1 + (sx - I * sy) * u2;
      const Complex m4 = -mass_energy * l2 + (sx + I * sy) * u1 - sz * u2;
      const double co = cosines[i];
      const Complex si = -I * (sines[i] / hbar);
      psihat[0][i] = uniform_phase * (co * u1 + si * m1);
      psihat[1][i] = uniform_phase * (co * u2 + si * m2);
      psihat[2][i] = uniform_phase * (co * l1 + si * m3);
      psihat[3][i] = uniform_phase * (co * l2 + si * m4);
    }
  }
};

SpinMatrix2 sigma_momentum(const Vec3& k) { return c_light * pauli_dot(Vec3(hbar * k)); }

}  // namespace

PotentialSpec PotentialSpec::constant(double v0) {
  if (!std::isfinite(v0)) throw InvalidArgument("potential value must be finite");
  return PotentialSpec(Kind::constant, v0, {});
}

PotentialSpec PotentialSpec::sampled(RealField values) {
  for (double v : values)
    if (!std::isfinite(v)) throw InvalidArgument("sampled potential contains non-finite values");
  return PotentialSpec(Kind::sampled, 0.0, std::move(values));
}

void PotentialSpec::check_against(const FourierGrid& grid) const {
  if (kind_ == Kind::sampled && samples_.size() != grid.size())
    throw InvalidArgument("sampled potential size does not match grid");
}

std::string Branch::label() const {
  return std::string(charge == Charge::particle ? "particle" : "antiparticle") + "/spin-" +
         std::to_string(spin);
}

Eigen::Matrix2cd spinless_hamiltonian_k(const Vec3& k, double mass_energy, double v0) {
  const double cp = c_light * hbar * k.norm();
  Eigen::Matrix2cd h;
  h << v0 + mass_energy, cp, cp, v0 - mass_energy;
  return h;
}

Matrix4c dirac_hamiltonian_k(const Vec3& k, double mass_energy, double v0) {
  Matrix4c h = Matrix4c::Zero();
  const SpinMatrix2 sp = sigma_momentum(k);
  h.topLeftCorner<2, 2>() = (v0 + mass_energy) * SpinMatrix2::Identity();
  h.bottomRightCorner<2, 2>() = (v0 - mass_energy) * SpinMatrix2::Identity();
  h.topRightCorner<2, 2>() = sp;
  h.bottomLeftCorner<2, 2>() = sp;
  return h;
}

std::array<double, 4> dirac_spectrum(const Vec3& k, double mass_energy, double v0) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(dirac_hamiltonian_k(k, mass_energy, v0), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev[3], ev[2], ev[1], ev[0]};
}

std::array<double, 2> spinless_spectrum(const Vec3& k, double mass_energy, double v0) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(spinless_hamiltonian_k(k, mass_energy, v0),
                                                     Eigen::EigenvaluesOnly);
  return {es.eigenvalues()[1], es.eigenvalues()[0]};
}

void apply_phase_convention(Eigen::Ref<Eigen::VectorXcd> v, double tol) {
  const double n = v.norm();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > tol * n) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      v[i] = std::abs(v[i]);
      return;
    }
  }
}

double eigen_residual(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& v, double energy) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  const double op_norm = es.eigenvalues().cwiseAbs().maxCoeff();
  const double scale = std::max({std::abs(energy), op_norm, 1e-300});
  const double vn = v.norm();
  if (vn == 0.0) return 0.0;
  return (h * v - energy * v).norm() / (vn * scale);
}

std::vector<PlaneWaveMode> dirac_eigenmodes(const Vec3& k, double mass_energy, double v0) {
  const Matrix4c h = dirac_hamiltonian_k(k, mass_energy, v0);
  const Matrix4c kinetic = h - v0 * Matrix4c::Identity();
  const double w = std::hypot(c_light * hbar * k.norm(), mass_energy);

  // (H - V)^2 = w^2, so the spectral projectors are (1 +- (H - V)/w)/2.
  struct Cluster {
    Matrix4c projector;
    double energy;
    int size;
  };
  std::vector<Cluster> clusters;
  if (w == 0.0) {
    clusters.push_back({Matrix4c::Identity(), v0, 4});
  } else {
    clusters.push_back({0.5 * (Matrix4c::Identity() + kinetic / w), v0 + w, 2});
    clusters.push_back({0.5 * (Matrix4c::Identity() - kinetic / w), v0 - w, 2});
  }

  std::vector<PlaneWaveMode> modes;
  for (const auto& cl : clusters) {
    std::vector<Eigen::Vector4cd> accepted;
    for (int j = 0; j < 4 && static_cast<int>(accepted.size()) < cl.size; ++j) {
      Eigen::Vector4cd v = cl.projector.col(j);
      for (const auto& a : accepted) v -= a.dot(v) * a;
      // Projector columns have total squared norm cl.size, so some column
      // always clears this threshold.
      if (v.norm() > 0.1) accepted.push_back(v.normalized());
    }
    for (std::size_t s = 0; s < accepted.size(); ++s) {
      PlaneWaveMode mode;
      mode.k = k;
      mode.energy = cl.energy;
      mode.omega = cl.energy / hbar;
      mode.eigenvector = accepted[s];
      apply_phase_convention(mode.eigenvector);
      bool particle = cl.energy > v0;
      if (w == 0.0) particle = accepted[s].head<2>().squaredNorm() >= accepted[s].tail<2>().squaredNorm();
      mode.branch.charge = particle ? Charge::particle : Charge::antiparticle;
      modes.push_back(std::move(mode));
    }
  }
  std::stable_sort(modes.begin(), modes.end(), [](const PlaneWaveMode& a, const PlaneWaveMode& b) {
    if (a.energy != b.energy) return a.energy > b.energy;
    return a.branch.charge == Charge::particle && b.branch.charge == Charge::antiparticle;
  });
  int particle_count = 0, antiparticle_count = 0;
  for (auto& mode : modes)
    mode.branch.spin = mode.branch.charge == Charge::particle ? ++particle_count : ++antiparticle_count;
  return modes;
}

BiSpinorField apply_dirac_hamiltonian(const BiSpinorField& psi, const FourierGrid& grid, double mass_energy,
                                      const PotentialSpec& pot) {
  require_state(psi, grid);
  pot.check_against(grid);
  SpinorField upper(grid.size()), lower(grid.size());
  upper[0] = psi[0];
  upper[1] = psi[1];
  lower[0] = psi[2];
  lower[1] = psi[3];
  const SpinorField sp_lower = apply_sigma_momentum(lower, grid);
  const SpinorField sp_upper = apply_sigma_momentum(upper, grid);
  BiSpinorField out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = pot.at(i);
    out[0][i] = (v + mass_energy) * psi[0][i] + sp_lower[0][i];
    out[1][i] = (v + mass_energy) * psi[1][i] + sp_lower[1][i];
    out[2][i] = (v - mass_energy) * psi[2][i] + sp_upper[0][i];
    out[3][i] = (v - mass_energy) * psi[3][i] + sp_upper[1][i];
  }
  return out;
}

SpinorField apply_sigma_momentum(const SpinorField& phi, const FourierGrid& grid) {
  SpinorField hat = phi;
  grid.forward(hat);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const SpinMatrix2 sp = sigma_momentum(grid.derivative_wave_vector(i));
    const Complex a = hat[0][i], b = hat[1][i];
    hat[0][i] = sp(0, 0) * a + sp(0, 1) * b;
    hat[1][i] = sp(1, 0) * a + sp(1, 1) * b;
  }
  grid.inverse(hat);
  return hat;
}

BiSpinorField evolve_dirac(const BiSpinorField& state, const FourierGrid& grid, const PotentialSpec& pot,
                           double mass_energy, double dt, std::size_t steps,
                           const Observation<BiSpinorField>& observe) {
  require_positive_dt(dt);
  require_state(state, grid);
  pot.check_against(grid);
  if (!(mass_energy >= 0.0)) throw InvalidArgument("mass energy must be non-negative");
  if (steps == 0) return state;

  const DiracKineticStep kinetic(grid, mass_energy, dt);
  BiSpinorField psi = state;

  if (pot.is_uniform()) {
    const Complex phase = std::polar(1.0, -pot.uniform_value() * dt / hbar);
    grid.forward(psi);
    for (std::size_t n = 1; n <= steps; ++n) {
      kinetic.apply(psi, grid, phase);
      if (observe.due(n)) {
        BiSpinorField snapshot = psi;
        grid.inverse(snapshot);
        observe.callback(n, snapshot);
      }
    }
    grid.inverse(psi);
    return psi;
  }

  for (std::size_t n = 1; n <= steps; ++n) {
    for (auto& c : psi.comp) apply_potential_phase(c, pot, 0.5 * dt);
    grid.forward(psi);
    kinetic.apply(psi, grid, Complex{1.0, 0.0});
    grid.inverse(psi);
    for (auto& c : psi.comp) apply_potential_phase(c, pot, 0.5 * dt);
    if (observe.due(n)) observe.callback(n, psi);
  }
  return psi;
}

BiSpinorField gauge_to_kinetic(const BiSpinorField& state, double t, double mass_energy) {
  return std::polar(1.0, mass_energy * t / hbar) * state;
}

BiSpinorField gauge_from_kinetic(const BiSpinorField& state, double t, double mass_energy) {
  return std::polar(1.0, -mass_energy * t / hbar) * state;
}

Field schrodinger_kinetic_phases(const FourierGrid& grid, double mass_energy, double dt) {
  if (!(mass_energy > 0.0)) throw InvalidArgument("Schrodinger evolution requires m > 0");
  const double mass = mass_energy / (c_light * c_light);
  Field phases(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double kin = hbar * hbar * grid.wave_vector(i).squaredNorm() / (2.0 * mass);
    phases[i] = std::polar(1.0, -kin * dt / hbar);
  }
  return phases;
}

Field evolve_schrodinger(const Field& psi, const FourierGrid& grid, const PotentialSpec& pot, double mass_energy,
                         double dt, std::size_t steps, const Observation<Field>& observe) {
  require_positive_dt(dt);
  if (!(mass_energy > 0.0)) throw InvalidArgument("Schrodinger evolution requires m > 0");
  if (psi.size() != grid.size()) throw InvalidArgument("state size does not match grid");
  if (!all_finite(psi)) throw InvalidArgument("state contains non-finite values");
  pot.check_against(grid);
  if (steps == 0) return psi;

  Field phases = schrodinger_kinetic_phases(grid, mass_energy, dt);
  Field out = psi;
  if (pot.is_uniform()) {
    const Complex vphase = std::polar(1.0, -pot.uniform_value() * dt / hbar);
    for (auto& p : phases) p *= vphase;
    grid.forward(out);
    for (std::size_t n = 1; n <= steps; ++n) {
      for (std::size_t i = 0; i < out.size(); ++i) out[i] *= phases[i];
      if (observe.due(n)) observe.callback(n, grid.inverse_copy(out));
    }
    grid.inverse(out);
    return out;
  }

  for (std::size_t n = 1; n <= steps; ++n) {
    apply_potential_phase(out, pot, 0.5 * dt);
    grid.forward(out);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= phases[i];
    grid.inverse(out);
    apply_potential_phase(out, pot, 0.5 * dt);
    if (observe.due(n)) observe.callback(n, out);
  }
  return out;
}

SpinorField levy_leblond_lower(const SpinorField& phi, const FourierGrid& grid, double mass_energy) {
  if (!(mass_energy > 0.0)) throw InvalidArgument("Levy-Leblond lower spinor requires m > 0");
  SpinorField chi = apply_sigma_momentum(phi, grid);
  chi *= Complex{1.0 / (2.0 * mass_energy), 0.0};
  return chi;
}

LevyLeblondResidual levy_leblond_residual(const SpinorField& phi, const SpinorField& chi, const FourierGrid& grid,
                                          const PotentialSpec& pot, double mass_energy, double classical_energy) {
  pot.check_against(grid);
  const SpinorField sp_chi = apply_sigma_momentum(chi, grid);
  const SpinorField sp_phi = apply_sigma_momentum(phi, grid);
  SpinorField r1(grid.size()), r2(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (int a = 0; a < 2; ++a) {
      r1[a][i] = (classical_energy - pot.at(i)) * phi[a][i] - sp_chi[a][i];
      r2[a][i] = 2.0 * mass_energy * chi[a][i] - sp_phi[a][i];
    }
  }
  const double phi_norm = norm(phi, grid);
  const double chi_norm = norm(chi, grid);
  const auto ratio = [](double num, double den) { return den > 0.0 ? num / den : num; };
  LevyLeblondResidual res;
  res.upper = ratio(norm(r1, grid), phi_norm > 0.0 ? phi_norm : chi_norm);
  res.lower = ratio(norm(r2, grid), std::max(chi_norm, phi_norm));
  return res;
}

double klein_gordon_residual(const std::array<Field, 3>& samples, const FourierGrid& grid, double dt,
                             double mass_energy) {
  require_positive_dt(dt);
  const Field& mid = samples[1];
  const Field lap = laplacian_spectral(mid, grid);
  const double rest = mass_energy / hbar;
  Field r(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex dtt = (samples[2][i] - 2.0 * mid[i] + samples[0][i]) / (dt * dt);
    r[i] = dtt - c_light * c_light * lap[i] + rest * rest * mid[i];
  }
  const double n = norm(mid, grid);
  return n > 0.0 ? norm(r, grid) / n : norm(r, grid);
}

}  // namespace rqm
