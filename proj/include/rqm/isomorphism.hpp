#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rqm/vector_qm.hpp"

namespace rqm {

/// Which column of (sigma.E, i sigma.H) feeds the bispinor.
///   A: (phi1, phi2, chi1, chi2) = (E_z, E_x + iE_y, iH_z, iH_x - H_y)
///   B: (phi1, phi2, chi1, chi2) = (E_x - iE_y, -E_z, iH_x + H_y, -iH_z)
enum class MappingVariant { A, B };

const char* to_string(MappingVariant v);

struct NormalizedMapWeights {
  double w_phi = 1.0;
  double w_chi = 1.0;

  static NormalizedMapWeights unit() { return {}; }
  /// w_phi = sqrt(eps / (8 pi hbar omega)), w_chi = sqrt(mu / (8 pi hbar omega)).
  /// Throws NonInvertibleMedium for eps <= 0 or mu <= 0 and InvalidArgument
  /// for omega <= 0.
  static NormalizedMapWeights from_medium(double epsilon, double mu, double omega);
};

/// 2x2 matrix at every grid point, entries (m11, m12, m21, m22).
using SpinMatrixField = MultiField<4>;

struct SpinorMatrixFields {
  SpinMatrixField phi;  ///< sigma . E
  SpinMatrixField chi;  ///< i sigma . H
};

SpinorMatrixFields spinor_matrix_from_fields(const TransverseFieldPair& fields);

/// Closed-form inverse of spinor_matrix_from_fields:
/// E_z = (M11 - M22)/2, E_x = (M12 + M21)/2, E_y = i (M12 - M21)/2, and the
/// same for H from M_X / i. Throws MalformedMatrix when a matrix is not
/// traceless to `tolerance` (relative to its largest entry, at least 1).
TransverseFieldPair fields_from_matrices(const SpinMatrixField& m_phi, const SpinMatrixField& m_chi,
                                         double tolerance = 1e-10);

/// Reassembles the matrix fields from the variant A and variant B bispinors
/// (unit weights) and inverts them. A single bispinor carries only two of
/// the three complex components of each field, so there is no one-column
/// overload.
TransverseFieldPair fields_from_columns(const BiSpinorField& column_a, const BiSpinorField& column_b,
                                        double tolerance = 1e-10);

/// Bispinor column of one point (or one plane-wave amplitude).
Eigen::Vector4cd spinor_column(const CVec3& e, const CVec3& h, MappingVariant variant,
                               const NormalizedMapWeights& weights = {});

BiSpinorField spinors_from_fields(const TransverseFieldPair& fields, MappingVariant variant,
                                  const NormalizedMapWeights& weights = {});

/// Residuals of the Pauli-contracted field equations
///   (E - V0 - mc^2)(sigma.E) = i c (sigma.p)(sigma.H)
///   (E - V0 + mc^2)(sigma.H) = -i c (sigma.p)(sigma.E)
/// with p applied spectrally, each as relative_gap of the two sides with the
/// residual_floor scale.
PairResidual pauli_maxwell_residual(const TransverseFieldPair& fields, const FourierGrid& grid, double mass_energy,
                                    double v0, double energy);
/// Same for a single plane-wave mode.
PairResidual pauli_maxwell_residual(const MaxwellMode& mode, double mass_energy, double v0, double energy);

/// E -> i sqrt(mu/eps) H, H -> -i sqrt(eps/mu) E. An involution.
TransverseFieldPair duality_swap(const TransverseFieldPair& fields, double epsilon, double mu);
std::pair<CVec3, CVec3> duality_swap(const CVec3& e, const CVec3& h, double epsilon, double mu);

/// Largest |a_i - b_i| over all components, divided by the largest |b_i|
/// (absolute when b vanishes).
double max_pointwise_gap(const BiSpinorField& a, const BiSpinorField& b);

struct ModeCertificate {
  Branch branch;
  double energy = 0.0;
  double dirac_residual_a = 0.0;
  double dirac_residual_b = 0.0;
  double spectral_error = 0.0;
  double maxwell_residual = 0.0;
  double pauli_residual = 0.0;
  double swap_error = 0.0;
  bool normalization_checked = false;
  double upper_norm_error = 0.0;
  double lower_norm_error = 0.0;
  std::string skip_reason;
};

struct CertificationTolerances {
  double dirac_residual = 1e-10;
  double spectral = 1e-12;
  double swap = 1e-13;
  double normalization = 1e-10;

  CertificationTolerances scaled(double s) const {
    return {dirac_residual * s, spectral * s, swap * s, normalization * s};
  }
};

struct IsomorphismReport {
  Vec3 k = Vec3::Zero();
  double mass_energy = 0.0;
  double v0 = 0.0;
  std::vector<ModeCertificate> modes;

  double max_dirac_residual() const;
  double max_spectral_error() const;
  double max_swap_error() const;
  double max_normalization_error() const;
  std::size_t skipped_normalizations() const;
  bool passed(const CertificationTolerances& tol = {}) const;
};

/// For every transverse Maxwell eigenmode at (k, m, V0): maps it to
/// bispinors with both variants and measures the Dirac eigen-residual, the
/// match with the Dirac spectrum, the Pauli-contracted residuals, the
/// duality-swap equivariance and, where eps, mu and E are positive, the
/// normalization bridge on a sampled periodic box. Requires |k| > 0.
IsomorphismReport certify_isomorphism(const Vec3& k, double mass_energy, double v0);

struct SweepRanges {
  double max_k = 4.0;
  double max_mass = 4.0;
  double max_abs_potential = 2.0;
};

struct SweepDraw {
  Vec3 k;
  double mass_energy;
  double v0;
};

/// Deterministic draws: direction uniform on the sphere, |k| uniform in
/// (0, max_k], m uniform in [0, max_mass], V0 uniform in [-max, max].
std::vector<SweepDraw> draw_parameters(std::uint64_t seed, std::size_t count, const SweepRanges& ranges = {});

}  // namespace rqm
