#include "rqm/isomorphism.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rqm/dispersion.hpp"
#include "rqm/error.hpp"
#include "rqm/pauli.hpp"
#include "rqm/units.hpp"

namespace rqm {

namespace {

constexpr Complex I{0.0, 1.0};

CVec3 at(const Vec3Field& f, std::size_t i) { return {f[0][i], f[1][i], f[2][i]}; }

SpinMatrix2 matrix_at(const SpinMatrixField& m, std::size_t i) {
  SpinMatrix2 s;
  s << m[0][i], m[1][i], m[2][i], m[3][i];
  return s;
}

void store_matrix(SpinMatrixField& m, std::size_t i, const SpinMatrix2& s) {
  m[0][i] = s(0, 0);
  m[1][i] = s(0, 1);
  m[2][i] = s(1, 0);
  m[3][i] = s(1, 1);
}

CVec3 vector_from_matrix(const SpinMatrix2& s) {
  return {0.5 * (s(0, 1) + s(1, 0)), 0.5 * I * (s(0, 1) - s(1, 0)), 0.5 * (s(0, 0) - s(1, 1))};
}

void check_traceless(const SpinMatrix2& s, double tolerance, std::size_t point) {
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if (std::abs(s.trace()) > tolerance * scale)
    throw MalformedMatrix("matrix at grid point " + std::to_string(point) + " is not traceless");
}

// Box used for the normalization bridge. Plane waves have |exp(ik.r)| = 1,
// so box integrals are exact for any k, on or off the lattice.
const FourierGrid& certification_box() {
  static const FourierGrid grid(3, 4, 1.0);
  return grid;
}

}  // namespace

const char* to_string(MappingVariant v) { return v == MappingVariant::A ? "A" : "B"; }

NormalizedMapWeights NormalizedMapWeights::from_medium(double epsilon, double mu, double omega) {
  if (!(epsilon > 0.0) || !(mu > 0.0)) throw NonInvertibleMedium(epsilon, mu);
  if (!(omega > 0.0)) throw InvalidArgument("normalized weights require omega > 0");
  const double denom = gauss_factor * hbar * omega;
  return {std::sqrt(epsilon / denom), std::sqrt(mu / denom)};
}

SpinorMatrixFields spinor_matrix_from_fields(const TransverseFieldPair& fields) {
  const std::size_t n = fields.e.points();
  SpinorMatrixFields out{SpinMatrixField(n), SpinMatrixField(n)};
  for (std::size_t i = 0; i < n; ++i) {
    store_matrix(out.phi, i, pauli_dot(at(fields.e, i)));
    store_matrix(out.chi, i, I * pauli_dot(at(fields.h, i)));
  }
  return out;
}

TransverseFieldPair fields_from_matrices(const SpinMatrixField& m_phi, const SpinMatrixField& m_chi,
                                         double tolerance) {
  const std::size_t n = m_phi.points();
  if (m_chi.points() != n) throw InvalidArgument("matrix fields differ in size");
  TransverseFieldPair out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const SpinMatrix2 sp = matrix_at(m_phi, i);
    const SpinMatrix2 sc = matrix_at(m_chi, i);
    check_traceless(sp, tolerance, i);
    check_traceless(sc, tolerance, i);
    const CVec3 e = vector_from_matrix(sp);
    const CVec3 h = vector_from_matrix(sc / I);
    for (int a = 0; a < 3; ++a) {
      out.e[a][i] = e[a];
      out.h[a][i] = h[a];
    }
  }
  return out;
}

TransverseFieldPair fields_from_columns(const BiSpinorField& column_a, const BiSpinorField& column_b,
                                        double tolerance) {
  const std::size_t n = column_a.points();
  if (column_b.points() != n) throw InvalidArgument("spinor columns differ in size");
  SpinMatrixField m_phi(n), m_chi(n);
  for (std::size_t i = 0; i < n; ++i) {
    // column A is the first matrix column, column B the second
    m_phi[0][i] = column_a[0][i];
    m_phi[2][i] = column_a[1][i];
    m_phi[1][i] = column_b[0][i];
    m_phi[3][i] = column_b[1][i];
    m_chi[0][i] = column_a[2][i];
    m_chi[2][i] = column_a[3][i];
    m_chi[1][i] = column_b[2][i];
    m_chi[3][i] = column_b[3][i];
  }
  return fields_from_matrices(m_phi, m_chi, tolerance);
}

Eigen::Vector4cd spinor_column(const CVec3& e, const CVec3& h, MappingVariant variant,
                               const NormalizedMapWeights& weights) {
  const int col = variant == MappingVariant::A ? 0 : 1;
  const SpinMatrix2 mp = pauli_dot(e);
  const SpinMatrix2 mc = I * pauli_dot(h);
  Eigen::Vector4cd s;
  s << weights.w_phi * mp.col(col), weights.w_chi * mc.col(col);
  return s;
}

BiSpinorField spinors_from_fields(const TransverseFieldPair& fields, MappingVariant variant,
                                  const NormalizedMapWeights& weights) {
  const std::size_t n = fields.e.points();
  BiSpinorField out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector4cd s = spinor_column(at(fields.e, i), at(fields.h, i), variant, weights);
    for (int c = 0; c < 4; ++c) out[c][i] = s[c];
  }
  return out;
}

PairResidual pauli_maxwell_residual(const TransverseFieldPair& fields, const FourierGrid& grid, double mass_energy,
                                    double v0, double energy) {
  if (grid.dims() != 3) throw UnsupportedDimension(grid.dims());
  TransverseFieldPair hat = fields;
  grid.forward(hat.e);
  grid.forward(hat.h);
  // Accumulate |lhs - rhs|^2, |lhs|^2, |rhs|^2 over every mode and matrix
  // entry; Parseval makes these proportional to the position-space norms.
  double d1 = 0, l1 = 0, r1 = 0, d2 = 0, l2 = 0, r2 = 0, field_sq = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const SpinMatrix2 sp = c_light * pauli_dot(Vec3(hbar * grid.derivative_wave_vector(i)));
    const SpinMatrix2 se = pauli_dot(at(hat.e, i));
    const SpinMatrix2 sh = pauli_dot(at(hat.h, i));
    const SpinMatrix2 lhs1 = (energy - v0 - mass_energy) * se;
    const SpinMatrix2 rhs1 = I * sp * sh;
    const SpinMatrix2 lhs2 = (energy - v0 + mass_energy) * sh;
    const SpinMatrix2 rhs2 = -I * sp * se;
    d1 += (lhs1 - rhs1).squaredNorm();
    l1 += lhs1.squaredNorm();
    r1 += rhs1.squaredNorm();
    d2 += (lhs2 - rhs2).squaredNorm();
    l2 += lhs2.squaredNorm();
    r2 += rhs2.squaredNorm();
    field_sq += se.squaredNorm() + sh.squaredNorm();
  }
  const double floor = std::pow(std::abs(energy - v0) + mass_energy, 2) * field_sq;
  const auto gap = [floor](double d, double l, double r) {
    const double s = std::max({l, r, floor});
    return s > 0.0 ? std::sqrt(d / s) : 0.0;
  };
  return {gap(d1, l1, r1), gap(d2, l2, r2)};
}

PairResidual pauli_maxwell_residual(const MaxwellMode& mode, double mass_energy, double v0, double energy) {
  const SpinMatrix2 sp = c_light * pauli_dot(Vec3(hbar * mode.k));
  const SpinMatrix2 se = pauli_dot(mode.e0);
  const SpinMatrix2 sh = pauli_dot(mode.h0);
  const auto flat = [](const SpinMatrix2& m) { return Eigen::VectorXcd(Eigen::Map<const Eigen::Vector4cd>(m.data())); };
  const double floor = residual_floor(mode, mass_energy, v0, energy) * std::sqrt(2.0);
  return {relative_gap(flat((energy - v0 - mass_energy) * se), flat(I * sp * sh), floor),
          relative_gap(flat((energy - v0 + mass_energy) * sh), flat(-I * sp * se), floor)};
}

std::pair<CVec3, CVec3> duality_swap(const CVec3& e, const CVec3& h, double epsilon, double mu) {
  if (!(epsilon > 0.0) || !(mu > 0.0)) throw NonInvertibleMedium(epsilon, mu);
  return {I * std::sqrt(mu / epsilon) * h, -I * std::sqrt(epsilon / mu) * e};
}

TransverseFieldPair duality_swap(const TransverseFieldPair& fields, double epsilon, double mu) {
  if (!(epsilon > 0.0) || !(mu > 0.0)) throw NonInvertibleMedium(epsilon, mu);
  const Complex to_e = I * std::sqrt(mu / epsilon);
  const Complex to_h = -I * std::sqrt(epsilon / mu);
  TransverseFieldPair out = fields;
  std::swap(out.e, out.h);
  out.e *= to_e;
  out.h *= to_h;
  return out;
}

double max_pointwise_gap(const BiSpinorField& a, const BiSpinorField& b) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t i = 0; i < a[c].size(); ++i) {
      diff = std::max(diff, std::abs(a[c][i] - b[c][i]));
      scale = std::max(scale, std::abs(b[c][i]));
    }
  }
  return scale > 0.0 ? diff / scale : diff;
}

double IsomorphismReport::max_dirac_residual() const {
  double r = 0.0;
  for (const auto& m : modes) r = std::max({r, m.dirac_residual_a, m.dirac_residual_b});
  return r;
}

double IsomorphismReport::max_spectral_error() const {
  double r = 0.0;
  for (const auto& m : modes) r = std::max(r, m.spectral_error);
  return r;
}

double IsomorphismReport::max_swap_error() const {
  double r = 0.0;
  for (const auto& m : modes) r = std::max(r, m.swap_error);
  return r;
}

double IsomorphismReport::max_normalization_error() const {
  double r = 0.0;
  for (const auto& m : modes)
    if (m.normalization_checked) r = std::max({r, m.upper_norm_error, m.lower_norm_error});
  return r;
}

std::size_t IsomorphismReport::skipped_normalizations() const {
  return static_cast<std::size_t>(
      std::count_if(modes.begin(), modes.end(), [](const ModeCertificate& m) { return !m.normalization_checked; }));
}

bool IsomorphismReport::passed(const CertificationTolerances& tol) const {
  return modes.size() == 4 && max_dirac_residual() <= tol.dirac_residual &&
         max_spectral_error() <= tol.spectral && max_swap_error() <= tol.swap &&
         max_normalization_error() <= tol.normalization;
}

IsomorphismReport certify_isomorphism(const Vec3& k, double mass_energy, double v0) {
  IsomorphismReport report;
  report.k = k;
  report.mass_energy = mass_energy;
  report.v0 = v0;

  const Matrix4c h = dirac_hamiltonian_k(k, mass_energy, v0);
  const auto dirac = dirac_spectrum(k, mass_energy, v0);
  const double scale = std::max({std::abs(dirac.front()), std::abs(dirac.back()), 1e-300});
  const FourierGrid& box = certification_box();

  for (const MaxwellMode& mode : maxwell_eigenmodes(k, mass_energy, v0)) {
    ModeCertificate cert;
    cert.branch = mode.branch;
    cert.energy = mode.energy;
    cert.dirac_residual_a = eigen_residual(h, spinor_column(mode.e0, mode.h0, MappingVariant::A), mode.energy);
    cert.dirac_residual_b = eigen_residual(h, spinor_column(mode.e0, mode.h0, MappingVariant::B), mode.energy);
    double nearest = std::numeric_limits<double>::infinity();
    for (double d : dirac) nearest = std::min(nearest, std::abs(d - mode.energy));
    cert.spectral_error = nearest / std::max(std::abs(mode.energy), scale);
    cert.maxwell_residual = maxwell_mode_residual(mode, mass_energy, v0, mode.energy).max();
    cert.pauli_residual = pauli_maxwell_residual(mode, mass_energy, v0, mode.energy).max();

    const TransverseFieldPair sampled = sample_mode(mode, box);
    double eps = 1.0, mu = 1.0;
    NormalizedMapWeights weights;
    bool medium_ok = false;
    if (mode.energy == 0.0) {
      cert.skip_reason = "E = 0";
    } else {
      const EffectiveMedium med = effective_medium(mode.energy, v0, mass_energy);
      if (med.epsilon <= 0.0 || med.mu <= 0.0) {
        cert.skip_reason = "eps or mu not positive";
      } else if (mode.energy <= 0.0) {
        cert.skip_reason = "E not positive";
      } else {
        eps = med.epsilon;
        mu = med.mu;
        weights = NormalizedMapWeights::from_medium(eps, mu, mode.energy / hbar);
        medium_ok = true;
      }
    }

    if (medium_ok) {
      const TransverseFieldPair normalized = normalize_to_energy(sampled, eps, mu, mode.energy, box);
      for (MappingVariant v : {MappingVariant::A, MappingVariant::B}) {
        const BiSpinorField s = spinors_from_fields(normalized, v, weights);
        double upper = 0.0, lower = 0.0;
        for (std::size_t i = 0; i < box.size(); ++i) {
          upper += std::norm(s[0][i]) + std::norm(s[1][i]);
          lower += std::norm(s[2][i]) + std::norm(s[3][i]);
        }
        upper *= box.cell_volume();
        lower *= box.cell_volume();
        cert.upper_norm_error = std::max(cert.upper_norm_error, std::abs(upper - 1.0));
        cert.lower_norm_error = std::max(cert.lower_norm_error, std::abs(lower - 1.0));
      }
      cert.normalization_checked = true;
    }

    // Swap equivariance: spinors of swapped fields equal the spinors with
    // Phi and X exchanged. Exact at the mode's own weights, or at unit
    // weights with eps = mu = 1 when the medium is not usable.
    for (MappingVariant v : {MappingVariant::A, MappingVariant::B}) {
      const BiSpinorField direct = spinors_from_fields(sampled, v, weights);
      const BiSpinorField swapped = spinors_from_fields(duality_swap(sampled, eps, mu), v, weights);
      BiSpinorField exchanged = direct;
      std::swap(exchanged[0], exchanged[2]);
      std::swap(exchanged[1], exchanged[3]);
      cert.swap_error = std::max(cert.swap_error, max_pointwise_gap(swapped, exchanged));
    }
    report.modes.push_back(std::move(cert));
  }
  return report;
}

std::vector<SweepDraw> draw_parameters(std::uint64_t seed, std::size_t count, const SweepRanges& ranges) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SweepDraw> draws;
  draws.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Vec3 dir;
    do {
      dir = Vec3(normal(rng), normal(rng), normal(rng));
    } while (dir.norm() < 1e-6);
    const double kmag = ranges.max_k * (1.0 - unit(rng));  // (0, max_k]
    SweepDraw d;
    d.k = kmag * dir.normalized();
    d.mass_energy = ranges.max_mass * unit(rng);
    d.v0 = ranges.max_abs_potential * (2.0 * unit(rng) - 1.0);
    draws.push_back(d);
  }
  return draws;
}

}  // namespace rqm
