#include "rqm/vector_qm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "rqm/dispersion.hpp"
#include "rqm/error.hpp"
#include "rqm/pauli.hpp"
#include "rqm/spectral_ops.hpp"
#include "rqm/units.hpp"

namespace rqm {

namespace {

constexpr Complex I{0.0, 1.0};

void require_medium(double epsilon, double mu) {
  if (!(epsilon > 0.0) || !(mu > 0.0)) throw NonInvertibleMedium(epsilon, mu);
}

void require_state(const TransverseFieldPair& s, const FourierGrid& grid) {
  for (const auto* f : {&s.e, &s.h})
    for (const auto& c : f->comp)
      if (c.size() != grid.size()) throw InvalidArgument("field size does not match grid");
  if (!all_finite(s.e) || !all_finite(s.h)) throw InvalidArgument("fields contain non-finite values");
}

void require_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time step must be positive and finite");
}

CVec3 at(const Vec3Field& f, std::size_t i) { return {f[0][i], f[1][i], f[2][i]}; }

void store(Vec3Field& f, std::size_t i, const CVec3& v) {
  f[0][i] = v.x();
  f[1][i] = v.y();
  f[2][i] = v.z();
}

/// ||k.F|| / ||F|| of a Fourier-space field, by Parseval.
double spectral_relative_divergence(const Vec3Field& fhat, const FourierGrid& grid) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 k = grid.derivative_wave_vector(i);
    num += std::norm(k.x() * fhat[0][i] + k.y() * fhat[1][i] + k.z() * fhat[2][i]);
    den += std::norm(fhat[0][i]) + std::norm(fhat[1][i]) + std::norm(fhat[2][i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

double spectral_pair_divergence(const TransverseFieldPair& hat, const FourierGrid& grid) {
  return std::max(spectral_relative_divergence(hat.e, grid), spectral_relative_divergence(hat.h, grid));
}

void forward(TransverseFieldPair& s, const FourierGrid& grid) {
  grid.forward(s.e);
  grid.forward(s.h);
}

void inverse(TransverseFieldPair& s, const FourierGrid& grid) {
  grid.inverse(s.e);
  grid.inverse(s.h);
}

void potential_phase(TransverseFieldPair& s, const PotentialSpec& pot, double tau) {
  for (std::size_t i = 0; i < s.e.points(); ++i) {
    const Complex ph = std::polar(1.0, -pot.at(i) * tau / hbar);
    for (int a = 0; a < 3; ++a) {
      s.e[a][i] *= ph;
      s.h[a][i] *= ph;
    }
  }
}

double project(TransverseFieldPair& hat, const FourierGrid& grid) {
  return transverse_project_spectral(hat.e, grid) + transverse_project_spectral(hat.h, grid);
}

/// Exact exp(-i (G(k) - V) dt / hbar) per mode. On the transverse subspace
/// N = G - V squares to w^2 = (hbar c k)^2 + (mc^2)^2; on the longitudinal one
/// it is diag(mc^2, -mc^2).
class MaxwellKineticStep {
 public:
  MaxwellKineticStep(const FourierGrid& grid, double m, double dt) : m_(m) {
    cos_.resize(grid.size());
    sin_.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double w = std::hypot(hbar * c_light * grid.derivative_wave_vector(i).norm(), m);
      cos_[i] = std::cos(w * dt / hbar);
      sin_[i] = w == 0.0 ? dt / hbar : std::sin(w * dt / hbar) / w;
    }
    long_e_ = std::polar(1.0, -m * dt / hbar);
    long_h_ = std::polar(1.0, m * dt / hbar);
  }

  void apply(TransverseFieldPair& hat, const FourierGrid& grid, Complex uniform_phase) const {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Vec3 k = grid.derivative_wave_vector(i);
      const double k2 = k.squaredNorm();
      const CVec3 e = at(hat.e, i), h = at(hat.h, i);
      if (k2 == 0.0) {
        store(hat.e, i, uniform_phase * long_e_ * e);
        store(hat.h, i, uniform_phase * long_h_ * h);
        continue;
      }
      const CVec3 kc = k.cast<Complex>();
      const CVec3 e_long = kc * (kc.dot(e) / k2);  // kc real, so dot() conj is harmless
      const CVec3 h_long = kc * (kc.dot(h) / k2);
      const CVec3 e_t = e - e_long, h_t = h - h_long;
      const CVec3 pc_cross_h = hbar * c_light * cross(kc, h_t);
      const CVec3 pc_cross_e = hbar * c_light * cross(kc, e_t);
      const CVec3 ne = m_ * e_t - pc_cross_h;
      const CVec3 nh = pc_cross_e - m_ * h_t;
      const Complex s = -I * sin_[i];
      store(hat.e, i, uniform_phase * (cos_[i] * e_t + s * ne + long_e_ * e_long));
      store(hat.h, i, uniform_phase * (cos_[i] * h_t + s * nh + long_h_ * h_long));
    }
  }

 private:
  double m_;
  std::vector<double> cos_, sin_;
  Complex long_e_, long_h_;
};

/// Shared loop for both field propagators. `kinetic` advances a
/// Fourier-space state by one full step with the given uniform phase.
MaxwellEvolution run_evolution(const TransverseFieldPair& state, const FourierGrid& grid, const PotentialSpec& pot,
                               double dt, std::size_t steps, const Observation<TransverseFieldPair>& observe,
                               const std::function<void(TransverseFieldPair&, Complex)>& kinetic) {
  MaxwellEvolution out;
  out.state = state;
  out.max_divergence = max_relative_divergence(state, grid);
  if (steps == 0) return out;

  TransverseFieldPair& s = out.state;
  if (pot.is_uniform()) {
    const Complex phase = std::polar(1.0, -pot.uniform_value() * dt / hbar);
    forward(s, grid);
    for (std::size_t n = 1; n <= steps; ++n) {
      kinetic(s, phase);
      out.max_divergence = std::max(out.max_divergence, spectral_pair_divergence(s, grid));
      if (observe.due(n)) {
        TransverseFieldPair snapshot = s;
        inverse(snapshot, grid);
        observe.callback(n, snapshot);
      }
    }
    inverse(s, grid);
    return out;
  }

  out.discarded_norm_squared.reserve(steps);
  for (std::size_t n = 1; n <= steps; ++n) {
    potential_phase(s, pot, 0.5 * dt);
    forward(s, grid);
    double removed = project(s, grid);
    kinetic(s, Complex{1.0, 0.0});
    inverse(s, grid);
    potential_phase(s, pot, 0.5 * dt);
    forward(s, grid);
    removed += project(s, grid);
    out.max_divergence = std::max(out.max_divergence, spectral_pair_divergence(s, grid));
    inverse(s, grid);
    out.discarded_norm_squared.push_back(removed);
    if (observe.due(n)) observe.callback(n, s);
  }
  return out;
}

}  // namespace

double norm_squared(const TransverseFieldPair& f, const FourierGrid& grid) {
  return norm_squared(f.e, grid) + norm_squared(f.h, grid);
}

double norm(const TransverseFieldPair& f, const FourierGrid& grid) { return std::sqrt(norm_squared(f, grid)); }

double max_relative_divergence(const TransverseFieldPair& f, const FourierGrid& grid) {
  return std::max(relative_divergence(f.e, grid), relative_divergence(f.h, grid));
}

RiemannSilbersteinField rs_compose(const TransverseFieldPair& fields, double epsilon, double mu) {
  require_medium(epsilon, mu);
  const double se = std::sqrt(epsilon), sm = std::sqrt(mu);
  RiemannSilbersteinField rs;
  rs.epsilon_used = epsilon;
  rs.mu_used = mu;
  rs.psi = Vec3Field(fields.e.points());
  rs.psi_partner = Vec3Field(fields.e.points());
  for (int a = 0; a < 3; ++a) {
    for (std::size_t i = 0; i < fields.e.points(); ++i) {
      rs.psi[a][i] = se * fields.e[a][i] + I * sm * fields.h[a][i];
      rs.psi_partner[a][i] = se * fields.e[a][i] - I * sm * fields.h[a][i];
    }
  }
  return rs;
}

TransverseFieldPair rs_decompose(const RiemannSilbersteinField& rs) {
  require_medium(rs.epsilon_used, rs.mu_used);
  const double se = std::sqrt(rs.epsilon_used), sm = std::sqrt(rs.mu_used);
  TransverseFieldPair f(rs.psi.points());
  for (int a = 0; a < 3; ++a) {
    for (std::size_t i = 0; i < rs.psi.points(); ++i) {
      f.e[a][i] = (rs.psi[a][i] + rs.psi_partner[a][i]) / (2.0 * se);
      f.h[a][i] = (rs.psi[a][i] - rs.psi_partner[a][i]) / (2.0 * I * sm);
    }
  }
  return f;
}

Matrix6c maxwell_generator_k(const Vec3& k, double mass_energy, double v0) {
  const Eigen::Matrix3cd kx = (hbar * c_light * cross_matrix(k)).cast<Complex>();
  Matrix6c g = Matrix6c::Zero();
  g.topLeftCorner<3, 3>() = (v0 + mass_energy) * Eigen::Matrix3cd::Identity();
  g.bottomRightCorner<3, 3>() = (v0 - mass_energy) * Eigen::Matrix3cd::Identity();
  g.topRightCorner<3, 3>() = -kx;
  g.bottomLeftCorner<3, 3>() = kx;
  return g;
}

std::pair<Vec3, Vec3> polarization_basis(const Vec3& k) {
  const double kn = k.norm();
  if (kn == 0.0) throw UndefinedPolarization();
  const Vec3 khat = k / kn;
  int axis = 0;
  for (int a = 1; a < 3; ++a)
    if (std::abs(k[a]) < std::abs(k[axis])) axis = a;
  Vec3 u = Vec3::Unit(axis);
  u -= u.dot(khat) * khat;
  u.normalize();
  return {u, khat.cross(u)};
}

GeneratorSpectrum maxwell_spectrum(const Vec3& k, double mass_energy, double v0) {
  const auto [u1, u2] = polarization_basis(k);
  const Vec3 khat = k.normalized();
  const Matrix6c g = maxwell_generator_k(k, mass_energy, v0);

  Eigen::Matrix<Complex, 6, 4> qt = Eigen::Matrix<Complex, 6, 4>::Zero();
  qt.block<3, 1>(0, 0) = u1.cast<Complex>();
  qt.block<3, 1>(0, 1) = u2.cast<Complex>();
  qt.block<3, 1>(3, 2) = u1.cast<Complex>();
  qt.block<3, 1>(3, 3) = u2.cast<Complex>();
  Eigen::Matrix<Complex, 6, 2> ql = Eigen::Matrix<Complex, 6, 2>::Zero();
  ql.block<3, 1>(0, 0) = khat.cast<Complex>();
  ql.block<3, 1>(3, 1) = khat.cast<Complex>();

  const Eigen::Matrix4cd gt = qt.adjoint() * g * qt;
  const Eigen::Matrix2cd gl = ql.adjoint() * g * ql;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> est(gt, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> esl(gl, Eigen::EigenvaluesOnly);

  GeneratorSpectrum spec;
  for (int i = 3; i >= 0; --i) spec.transverse.push_back(est.eigenvalues()[i]);
  for (int i = 1; i >= 0; --i) spec.longitudinal.push_back(esl.eigenvalues()[i]);
  return spec;
}

Vector6c MaxwellMode::stacked() const {
  Vector6c v;
  v << e0, h0;
  return v;
}

std::vector<MaxwellMode> maxwell_eigenmodes(const Vec3& k, double mass_energy, double v0) {
  const auto [u1, u2] = polarization_basis(k);
  const double w = std::hypot(hbar * c_light * k.norm(), mass_energy);
  const Vec3 pc = hbar * c_light * k;

  std::vector<MaxwellMode> modes;
  for (Charge charge : {Charge::particle, Charge::antiparticle}) {
    int spin = 1;
    for (const Vec3& u : {u1, u2}) {
      // Particle branch: E0 = u, H0 = c p x u / (w + mc^2).
      // Antiparticle branch: H0 = u, E0 = c p x u / (w + mc^2).
      // Both denominators stay >= w > 0, unlike the other arrangement.
      const Vec3 partner = pc.cross(u) / (w + mass_energy);
      MaxwellMode mode;
      mode.k = k;
      mode.energy = charge == Charge::particle ? v0 + w : v0 - w;
      mode.branch = {charge, spin++};
      Eigen::Matrix<double, 6, 1> v;
      if (charge == Charge::particle)
        v << u, partner;
      else
        v << partner, u;
      v.normalize();
      for (int i = 0; i < 6; ++i) {
        if (std::abs(v[i]) > 1e-12) {
          if (v[i] < 0.0) v = -v;
          break;
        }
      }
      mode.e0 = v.head<3>().cast<Complex>();
      mode.h0 = v.tail<3>().cast<Complex>();
      modes.push_back(mode);
    }
  }
  return modes;
}

double relative_gap(const Eigen::VectorXcd& lhs, const Eigen::VectorXcd& rhs, double floor) {
  const double scale = std::max({lhs.norm(), rhs.norm(), floor});
  if (scale == 0.0) return 0.0;
  return (lhs - rhs).norm() / scale;
}

double residual_floor(const MaxwellMode& mode, double mass_energy, double v0, double energy) {
  return (std::abs(energy - v0) + mass_energy) * mode.stacked().norm();
}

PairResidual maxwell_mode_residual(const MaxwellMode& mode, double mass_energy, double v0, double energy) {
  const CVec3 pc = (hbar * c_light * mode.k).cast<Complex>();
  PairResidual r;
  const double floor = residual_floor(mode, mass_energy, v0, energy);
  r.first = relative_gap((energy - v0 - mass_energy) * mode.e0, -cross(pc, mode.h0), floor);
  r.second = relative_gap((energy - v0 + mass_energy) * mode.h0, cross(pc, mode.e0), floor);
  return r;
}

PairResidual medium_form_residual(const MaxwellMode& mode, double mass_energy, double v0) {
  const EffectiveMedium med = effective_medium(mode.energy, v0, mass_energy);
  const CVec3 pc = (hbar * c_light * mode.k).cast<Complex>();
  PairResidual r;
  const double floor = residual_floor(mode, mass_energy, v0, mode.energy);
  r.first = relative_gap(med.epsilon * mode.energy * mode.e0, -cross(pc, mode.h0), floor);
  r.second = relative_gap(med.mu * mode.energy * mode.h0, cross(pc, mode.e0), floor);
  return r;
}

TransverseFieldPair sample_mode(const MaxwellMode& mode, const FourierGrid& grid, Complex amplitude) {
  return {plane_wave(CVec3(amplitude * mode.e0), mode.k, grid), plane_wave(CVec3(amplitude * mode.h0), mode.k, grid)};
}

TransverseFieldPair apply_maxwell_generator(const TransverseFieldPair& fields, const FourierGrid& grid,
                                            double mass_energy, const PotentialSpec& pot) {
  if (grid.dims() != 3) throw UnsupportedDimension(grid.dims());
  require_state(fields, grid);
  pot.check_against(grid);
  // rot -> i k x, and i hbar c rot H = -hbar c k x H in Fourier space.
  const Vec3Field curl_h = curl_spectral(fields.h, grid);
  const Vec3Field curl_e = curl_spectral(fields.e, grid);
  TransverseFieldPair out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = pot.at(i);
    for (int a = 0; a < 3; ++a) {
      out.e[a][i] = (v + mass_energy) * fields.e[a][i] + I * hbar * c_light * curl_h[a][i];
      out.h[a][i] = (v - mass_energy) * fields.h[a][i] - I * hbar * c_light * curl_e[a][i];
    }
  }
  return out;
}

double MaxwellEvolution::total_discarded() const {
  double s = 0.0;
  for (double d : discarded_norm_squared) s += d;
  return s;
}

MaxwellEvolution evolve_maxwell(const TransverseFieldPair& state, const FourierGrid& grid, const PotentialSpec& pot,
                                double mass_energy, double dt, std::size_t steps,
                                const Observation<TransverseFieldPair>& observe) {
  if (grid.dims() != 3) throw UnsupportedDimension(grid.dims());
  require_dt(dt);
  require_state(state, grid);
  pot.check_against(grid);
  if (!(mass_energy >= 0.0)) throw InvalidArgument("mass energy must be non-negative");
  const MaxwellKineticStep step(grid, mass_energy, dt);
  return run_evolution(state, grid, pot, dt, steps, observe,
                       [&](TransverseFieldPair& hat, Complex phase) { step.apply(hat, grid, phase); });
}

MaxwellEvolution evolve_schrodinger_maxwell(const TransverseFieldPair& state, const FourierGrid& grid,
                                            const PotentialSpec& pot, double mass_energy, double dt,
                                            std::size_t steps, const Observation<TransverseFieldPair>& observe) {
  if (grid.dims() != 3) throw UnsupportedDimension(grid.dims());
  require_dt(dt);
  require_state(state, grid);
  pot.check_against(grid);
  const Field kinetic = schrodinger_kinetic_phases(grid, mass_energy, dt);
  // Folding the uniform phase into the kinetic phases first mirrors
  // evolve_schrodinger operation for operation.
  Field uniform_phases = kinetic;
  if (pot.is_uniform()) {
    const Complex vphase = std::polar(1.0, -pot.uniform_value() * dt / hbar);
    for (auto& p : uniform_phases) p *= vphase;
  }
  const Field& ph = pot.is_uniform() ? uniform_phases : kinetic;
  return run_evolution(state, grid, pot, dt, steps, observe, [&](TransverseFieldPair& hat, Complex) {
    for (auto* f : {&hat.e, &hat.h})
      for (auto& c : f->comp)
        for (std::size_t i = 0; i < c.size(); ++i) c[i] *= ph[i];
  });
}

PairResidual nr_reduction_residual(const TransverseFieldPair& state, const FourierGrid& grid, double mass_energy,
                                   double v0, double classical_energy) {
  if (!(mass_energy > 0.0)) throw InvalidArgument("non-relativistic reduction requires m > 0");
  const double mass = mass_energy / (c_light * c_light);
  const auto residual = [&](const Vec3Field& f) {
    Vec3Field r(grid.size());
    for (int a = 0; a < 3; ++a) {
      const Field lap = laplacian_spectral(f[a], grid);
      for (std::size_t i = 0; i < grid.size(); ++i)
        r[a][i] = (classical_energy - v0) * f[a][i] + hbar * hbar / (2.0 * mass) * lap[i];
    }
    const double n = norm(f, grid);
    return n > 0.0 ? norm(r, grid) / n : norm(r, grid);
  };
  return {residual(state.e), residual(state.h)};
}

double energy_normalization(const Vec3Field& field, double eps_or_mu, const FourierGrid& grid) {
  return eps_or_mu * norm_squared(field, grid) / gauss_factor;
}

TransverseFieldPair normalize_to_energy(const TransverseFieldPair& state, double epsilon, double mu,
                                        double target_energy, const FourierGrid& grid) {
  require_medium(epsilon, mu);
  if (!(target_energy > 0.0)) throw InvalidArgument("target energy must be positive");
  const double ee = energy_normalization(state.e, epsilon, grid);
  const double eh = energy_normalization(state.h, mu, grid);
  if (ee == 0.0 || eh == 0.0) throw CannotNormalize("cannot normalize a zero E or H field");
  TransverseFieldPair out = state;
  out.e *= Complex{std::sqrt(target_energy / ee), 0.0};
  out.h *= Complex{std::sqrt(target_energy / eh), 0.0};
  return out;
}

}  // namespace rqm
