#include "rqm/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "rqm/dispersion.hpp"
#include "rqm/isomorphism.hpp"
#include "rqm/units.hpp"

namespace rqm::io {

namespace {

constexpr double kTiny = std::numeric_limits<double>::min();

std::string vec_text(const Vec3& v) {
  return "(" + format_double(v.x()) + ", " + format_double(v.y()) + ", " + format_double(v.z()) + ")";
}

/// Rethrows a numerical error with the parameters that produced it.
template <typename F>
auto with_context(const std::string& context, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw Error(std::string(e.what()) + " [" + context + "]");
  }
}

/// V0 for per-mode scenarios: 0 for kind zero, the configured value otherwise.
double uniform_potential(const PotentialConfig& p) { return p.kind == "zero" ? 0.0 : p.value; }

double spectral_scale(const std::array<double, 4>& s) {
  return std::max({std::abs(s.front()), std::abs(s.back()), kTiny});
}

/// Expected Dirac energies V0 + w, V0 + w, V0 - w, V0 - w.
std::array<double, 4> analytic_dirac(const Vec3& k, double m, double v0) {
  const double w = free_energy(hbar * k.norm() * c_light, m);
  return {v0 + w, v0 + w, v0 - w, v0 - w};
}

double max_relative_gap(const std::vector<double>& got, const std::vector<double>& want, double scale) {
  double worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i)
    worst = std::max(worst, std::abs(got[i] - want[i]) / std::max(std::abs(want[i]), scale));
  return worst;
}

/// Nearest lattice wave number along z; throws when it lies at or beyond Nyquist.
double snap_to_lattice(double p, const FourierGrid& grid) {
  const double dk = 2.0 * std::numbers::pi / grid.box_length();
  const long n = std::lround(p / dk);
  if (std::abs(n) >= grid.points() / 2)
    throw InvalidArgument("momentum " + format_double(p) + " is beyond the grid resolution");
  return n * dk;
}

Vec3 carrier(const Vec3& k, const FourierGrid& grid) { return grid.dims() == 1 ? Vec3(0.0, 0.0, k.z()) : k; }

double gaussian_weight(const Vec3& kk, const Vec3& k0, double width) {
  return std::exp(-0.5 * (kk - k0).squaredNorm() * width * width);
}

template <std::size_t N>
double mean_z(const MultiField<N>& f, const FourierGrid& grid) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double w = 0.0;
    for (const auto& c : f.comp) w += std::norm(c[i]);
    num += grid.position(i).z() * w;
    den += w;
  }
  return den > 0.0 ? num / den : 0.0;
}

double expectation(const BiSpinorField& psi, const FourierGrid& grid, double m, const PotentialSpec& pot) {
  return inner(psi, apply_dirac_hamiltonian(psi, grid, m, pot), grid).real() / norm_squared(psi, grid);
}

double expectation(const TransverseFieldPair& f, const FourierGrid& grid, double m, const PotentialSpec& pot) {
  const TransverseFieldPair g = apply_maxwell_generator(f, grid, m, pot);
  return (inner(f.e, g.e, grid) + inner(f.h, g.h, grid)).real() / norm_squared(f, grid);
}

// ---- scenarios -------------------------------------------------------------

void dispersion_table(const ScenarioConfig& c, RunReport& r, double s) {
  const double m = c.mass, v = uniform_potential(c.potential);
  Table t{"dispersion", {"p", "energy", "epsilon", "mu", "n_squared", "p_recovered"}, {}};
  double energy_err = 0.0, momentum_err = 0.0, identity_err = 0.0;
  for (double p : c.wave.momenta) {
    const std::string ctx = "p=" + format_double(p) + ", m=" + format_double(m) + ", V0=" + format_double(v);
    with_context(ctx, [&] {
      const double e = total_energy(p, m, v);
      const auto spec = dirac_spectrum(Vec3(0.0, 0.0, p / hbar), m, v);
      energy_err = std::max(energy_err, std::abs(e - spec[0]) / std::max(std::abs(e), spectral_scale(spec)));
      const EffectiveMedium med = effective_medium(e, v, m);
      const double p_back = minkowski_momentum(e, med);
      momentum_err = std::max(momentum_err, std::abs(p_back - p) / (p > 0.0 ? p : std::max(std::abs(e), 1.0)));
      const double pc = p * c_light;
      identity_err = std::max(identity_err, std::abs(med.n_squared * e * e - pc * pc) / (e * e));
      t.add_row({p, e, med.epsilon, med.mu, med.n_squared, p_back});
      return 0;
    });
  }
  r.tables.push_back(std::move(t));
  r.checks.push_back(Check::at_most("energy_vs_dirac_eigenvalue", energy_err, 1e-12 * s));
  r.checks.push_back(Check::at_most("momentum_round_trip", momentum_err, 1e-12 * s));
  r.checks.push_back(Check::at_most("medium_identity", identity_err, 1e-12 * s));
}

void dirac_spectrum_scenario(const ScenarioConfig& c, RunReport& r, double s) {
  const Vec3 k = c.wave.k;
  const double m = c.mass, v = uniform_potential(c.potential);
  const auto spec = dirac_spectrum(k, m, v);
  const auto expected = analytic_dirac(k, m, v);
  const double scale = spectral_scale(spec);
  const auto modes = dirac_eigenmodes(k, m, v);
  const Matrix4c h = dirac_hamiltonian_k(k, m, v);

  Table t{"modes",
          {"index", "branch", "energy", "eigensolve_energy", "expected_energy", "residual", "psi1_re", "psi1_im",
           "psi2_re", "psi2_im", "psi3_re", "psi3_im", "psi4_re", "psi4_im"},
          {}};
  double residual = 0.0;
  Eigen::Matrix4cd basis;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const auto& mode = modes[i];
    const double res = eigen_residual(h, mode.eigenvector, mode.energy);
    residual = std::max(residual, res);
    basis.col(static_cast<Eigen::Index>(i)) = mode.eigenvector;
    std::vector<Cell> row{static_cast<std::int64_t>(i), mode.branch.label(), mode.energy, spec[i], expected[i], res};
    for (int a = 0; a < 4; ++a) {
      row.push_back(mode.eigenvector[a].real());
      row.push_back(mode.eigenvector[a].imag());
    }
    t.add_row(std::move(row));
  }
  std::vector<double> got(spec.begin(), spec.end()), want(expected.begin(), expected.end()), modal;
  for (const auto& mode : modes) modal.push_back(mode.energy);
  r.tables.push_back(std::move(t));
  r.checks.push_back(Check::at_most("spectrum_relative_error", max_relative_gap(got, want, scale), 1e-12 * s));
  r.checks.push_back(Check::at_most("mode_energy_relative_error", max_relative_gap(modal, want, scale), 1e-12 * s));
  r.checks.push_back(Check::at_most("mode_residual", residual, 1e-12 * s));
  const double ortho = (basis.adjoint() * basis - Eigen::Matrix4cd::Identity()).norm();
  r.checks.push_back(Check::at_most("orthonormality", ortho, 1e-12 * s));
}

void maxwell_spectrum_scenario(const ScenarioConfig& c, RunReport& r, double s) {
  const Vec3 k = c.wave.k;
  const double m = c.mass, v = uniform_potential(c.potential);
  const GeneratorSpectrum gs = maxwell_spectrum(k, m, v);
  const auto ds = dirac_spectrum(k, m, v);
  const double scale = spectral_scale(ds);
  const std::vector<double> dirac(ds.begin(), ds.end());
  const std::vector<double> longitudinal_ref{v + m, v - m};

  Table t{"eigenvalues", {"sector", "index", "generator", "reference"}, {}};
  for (std::size_t i = 0; i < gs.transverse.size(); ++i)
    t.add_row({std::string("transverse"), static_cast<std::int64_t>(i), gs.transverse[i], dirac[i]});
  for (std::size_t i = 0; i < gs.longitudinal.size(); ++i)
    t.add_row({std::string("longitudinal"), static_cast<std::int64_t>(i), gs.longitudinal[i], longitudinal_ref[i]});
  r.tables.push_back(std::move(t));

  double mode_res = 0.0, medium_res = 0.0;
  for (const auto& mode : maxwell_eigenmodes(k, m, v)) {
    mode_res = std::max(mode_res, maxwell_mode_residual(mode, m, v, mode.energy).max());
    if (mode.energy != 0.0) medium_res = std::max(medium_res, medium_form_residual(mode, m, v).max());
  }
  r.checks.push_back(
      Check::at_most("transverse_vs_dirac", max_relative_gap(gs.transverse, dirac, scale), 1e-12 * s));
  r.checks.push_back(Check::at_most("longitudinal_vs_rest_energy",
                                    max_relative_gap(gs.longitudinal, longitudinal_ref, scale), 1e-12 * s));
  r.checks.push_back(Check::at_most("mode_residual", mode_res, 1e-12 * s));
  r.checks.push_back(Check::at_most("medium_form_residual", medium_res, 1e-12 * s));
}

void isomorphism_certify(const ScenarioConfig& c, RunReport& r, double s) {
  const CertificationTolerances tol = CertificationTolerances{}.scaled(s);
  Table t{"draws",
          {"draw", "kx", "ky", "kz", "mass", "v0", "spectrum_error", "identity_error", "dirac_residual",
           "spectral_error", "swap_error", "normalization_error", "normalization_skipped", "passed"},
          {}};
  double spectrum_err = 0.0, identity_err = 0.0, dirac_res = 0.0, swap = 0.0, normalization = 0.0;
  std::int64_t failures = 0;
  const auto draws = draw_parameters(c.seed, c.draws);
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const auto& d = draws[i];
    const std::string ctx = "draw=" + std::to_string(i) + ", k=" + vec_text(d.k) +
                            ", m=" + format_double(d.mass_energy) + ", V0=" + format_double(d.v0);
    with_context(ctx, [&] {
      const auto ds = dirac_spectrum(d.k, d.mass_energy, d.v0);
      const double scale = spectral_scale(ds);
      const std::vector<double> dirac(ds.begin(), ds.end());
      const auto exp = analytic_dirac(d.k, d.mass_energy, d.v0);
      const double se = max_relative_gap(dirac, {exp.begin(), exp.end()}, scale);
      const double ie = max_relative_gap(maxwell_spectrum(d.k, d.mass_energy, d.v0).transverse, dirac, scale);
      const IsomorphismReport rep = certify_isomorphism(d.k, d.mass_energy, d.v0);
      const bool ok = rep.passed(tol) && se <= 1e-12 * s && ie <= 1e-12 * s;
      failures += ok ? 0 : 1;
      spectrum_err = std::max(spectrum_err, se);
      identity_err = std::max(identity_err, ie);
      dirac_res = std::max(dirac_res, rep.max_dirac_residual());
      swap = std::max(swap, rep.max_swap_error());
      normalization = std::max(normalization, rep.max_normalization_error());
      t.add_row({static_cast<std::int64_t>(i), d.k.x(), d.k.y(), d.k.z(), d.mass_energy, d.v0, se, ie,
                 rep.max_dirac_residual(), rep.max_spectral_error(), rep.max_swap_error(),
                 rep.max_normalization_error(), static_cast<std::int64_t>(rep.skipped_normalizations()),
                 std::int64_t{ok ? 1 : 0}});
      return 0;
    });
  }
  r.tables.push_back(std::move(t));
  r.checks.push_back(Check::at_most("spectrum_law", spectrum_err, 1e-12 * s));
  r.checks.push_back(Check::at_most("maxwell_dirac_identity", identity_err, 1e-12 * s));
  r.checks.push_back(Check::at_most("mapped_dirac_residual", dirac_res, tol.dirac_residual));
  r.checks.push_back(Check::at_most("duality_swap", swap, tol.swap));
  r.checks.push_back(Check::at_most("normalization_bridge", normalization, tol.normalization));
  r.checks.push_back(Check::at_most("failed_draws", static_cast<double>(failures), 0.0));
}

void dirac_packet(const ScenarioConfig& c, RunReport& r, double s) {
  const FourierGrid grid = make_grid(c.grid);
  const PotentialSpec pot = make_potential(c.potential, grid);
  const double m = c.mass;
  const BiSpinorField psi0 =
      dirac_wave_packet(grid, m, carrier(c.wave.k, grid), carrier(c.wave.center, grid), c.wave.width);
  const double n0 = norm(psi0, grid);
  const double e0 = expectation(psi0, grid, m, pot);

  Table t{"timeseries", {"step", "time", "norm", "norm_drift", "energy", "energy_drift", "mean_z"}, {}};
  double norm_drift = 0.0, energy_drift = 0.0;
  const auto record = [&](std::size_t step, const BiSpinorField& psi) {
    const double n = norm(psi, grid);
    const double e = expectation(psi, grid, m, pot);
    const double nd = std::abs(n - n0) / n0;
    const double ed = std::abs(e - e0) / std::max(std::abs(e0), kTiny);
    norm_drift = std::max(norm_drift, nd);
    energy_drift = std::max(energy_drift, ed);
    t.add_row({static_cast<std::int64_t>(step), step * c.time.dt, n, nd, e, ed, mean_z(psi, grid)});
  };
  record(0, psi0);
  const Observation<BiSpinorField> obs{c.time.output_stride, record};
  const BiSpinorField psi = evolve_dirac(psi0, grid, pot, m, c.time.dt, c.time.steps, obs);
  if (!obs.due(c.time.steps) && c.time.steps > 0) record(c.time.steps, psi);
  r.tables.push_back(std::move(t));

  r.checks.push_back(Check::at_most("norm_drift", norm_drift, (pot.is_uniform() ? 1e-12 : 1e-8) * s));
  if (pot.is_uniform()) r.checks.push_back(Check::at_most("energy_drift", energy_drift, 1e-10 * s));
  r.checks.push_back(Check::at_most("finite_state", all_finite(psi) ? 0.0 : 1.0, 0.0));
}

void maxwell_packet(const ScenarioConfig& c, RunReport& r, double s) {
  const FourierGrid grid = make_grid(c.grid);
  const PotentialSpec pot = make_potential(c.potential, grid);
  const double m = c.mass;
  const TransverseFieldPair f0 = maxwell_wave_packet(grid, m, c.wave.k, c.wave.center, c.wave.width);
  const double n0 = norm(f0, grid);
  const double e0 = expectation(f0, grid, m, pot);

  Table t{"timeseries", {"step", "time", "norm", "norm_drift", "energy", "divergence", "mean_z"}, {}};
  double norm_drift = 0.0, divergence = max_relative_divergence(f0, grid);
  const auto record = [&](std::size_t step, const TransverseFieldPair& f) {
    const double n = norm(f, grid);
    const double nd = std::abs(n - n0) / n0;
    const double div = max_relative_divergence(f, grid);
    norm_drift = std::max(norm_drift, nd);
    divergence = std::max(divergence, div);
    Vec3Field all(grid.size());
    for (int a = 0; a < 3; ++a)
      for (std::size_t i = 0; i < grid.size(); ++i)
        all[a][i] = std::sqrt(std::norm(f.e[a][i]) + std::norm(f.h[a][i]));
    t.add_row({static_cast<std::int64_t>(step), step * c.time.dt, n, nd, expectation(f, grid, m, pot), div,
               mean_z(all, grid)});
  };
  record(0, f0);
  const Observation<TransverseFieldPair> obs{c.time.output_stride, record};
  const MaxwellEvolution ev = evolve_maxwell(f0, grid, pot, m, c.time.dt, c.time.steps, obs);
  if (!obs.due(c.time.steps) && c.time.steps > 0) record(c.time.steps, ev.state);
  divergence = std::max(divergence, ev.max_divergence);
  r.tables.push_back(std::move(t));

  Table proj{"projection", {"initial_energy", "steps", "total_discarded_norm_squared", "final_norm_drift"}, {}};
  proj.add_row({e0, static_cast<std::int64_t>(c.time.steps), ev.total_discarded(),
                std::abs(norm(ev.state, grid) - n0) / n0});
  r.tables.push_back(std::move(proj));

  if (pot.is_uniform()) r.checks.push_back(Check::at_most("norm_drift", norm_drift, 1e-12 * s));
  r.checks.push_back(Check::at_most("divergence", divergence, 1e-10 * s));
}

void nr_limit_scan(const ScenarioConfig& c, RunReport& r, double s) {
  const double m = c.mass, v = uniform_potential(c.potential);
  const double t_end = c.time.dt * static_cast<double>(c.time.steps);
  const double mass = m / (c_light * c_light);
  Table t{"scan",
          {"ratio", "k", "time", "nr_phase", "discrepancy", "expected_discrepancy", "relative_discrepancy",
           "relative_over_ratio_squared"},
          {}};
  std::vector<double> ratios, relative;
  double dispersion_err = 0.0;
  for (double ratio : c.scan_values) {
    const double k = ratio * m / (hbar * c_light);
    with_context("ratio=" + format_double(ratio) + ", m=" + format_double(m), [&] {
      const FourierGrid grid(1, c.grid.points, 2.0 * std::numbers::pi / k);
      const Vec3 kv = lattice_wave_vector(grid, 0, 0, 1);
      const PotentialSpec pot = PotentialSpec::constant(v);
      const auto modes = dirac_eigenmodes(kv, m, v);
      const Field wave = plane_wave(Complex(1.0), kv, grid);
      BiSpinorField psi(grid.size());
      for (int a = 0; a < 4; ++a)
        for (std::size_t i = 0; i < grid.size(); ++i) psi[a][i] = modes[0].eigenvector[a] * wave[i];

      const BiSpinorField dirac =
          gauge_to_kinetic(evolve_dirac(psi, grid, pot, m, c.time.dt, c.time.steps), t_end, m);
      Complex overlap{};
      for (int a = 0; a < 2; ++a) {
        const Field schr = evolve_schrodinger(psi[a], grid, pot, m, c.time.dt, c.time.steps);
        overlap += inner(schr, dirac[a], grid);
      }
      const double nr_phase = hbar * k * k * t_end / (2.0 * mass);
      const double discrepancy = std::abs(std::arg(overlap));
      const double expected =
          std::abs(free_energy(hbar * k * c_light, m) - m - (hbar * k) * (hbar * k) / (2.0 * mass)) * t_end / hbar;
      dispersion_err = std::max(dispersion_err, std::abs(discrepancy - expected) / expected);
      const double rel = discrepancy / nr_phase;
      ratios.push_back(ratio);
      relative.push_back(rel);
      t.add_row({ratio, k, t_end, nr_phase, discrepancy, expected, rel, rel / (ratio * ratio)});
      return 0;
    });
  }
  r.tables.push_back(std::move(t));
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    const double scaling = (ratios[i] / ratios[0]) * (ratios[i] / ratios[0]);
    r.checks.push_back(Check::near("discrepancy_scaling_" + std::to_string(i), relative[i] / relative[0], scaling,
                                   0.2 * s));
  }
  r.checks.push_back(Check::at_most("discrepancy_vs_dispersion", dispersion_err, 1e-6 * s));

  // Schrodinger-Maxwell against component-wise Schrodinger at V = 0.
  const double k0 = c.scan_values.front() * m / (hbar * c_light);
  const FourierGrid g3(3, std::min(c.grid.points, 16), 2.0 * std::numbers::pi / k0);
  const Vec3 kz = lattice_wave_vector(g3, 0, 0, 1), ky = lattice_wave_vector(g3, 0, 1, 0);
  TransverseFieldPair f(plane_wave(CVec3(1.0, 0.0, 0.0), kz, g3), plane_wave(CVec3(0.0, 1.0, 0.0), kz, g3));
  f.e += plane_wave(CVec3(0.0, 0.0, Complex(0.0, 0.5)), ky, g3);
  f.h += plane_wave(CVec3(0.5, 0.0, 0.0), ky, g3);
  const PotentialSpec zero = PotentialSpec::zero();
  const MaxwellEvolution sm = evolve_schrodinger_maxwell(f, g3, zero, m, c.time.dt, c.time.steps);
  double gap = 0.0;
  for (int a = 0; a < 3; ++a)
    for (const auto& [field, evolved] : {std::pair{&f.e, &sm.state.e}, std::pair{&f.h, &sm.state.h}}) {
      const Field ref = evolve_schrodinger((*field)[a], g3, zero, m, c.time.dt, c.time.steps);
      for (std::size_t i = 0; i < g3.size(); ++i) gap = std::max(gap, std::abs((*evolved)[a][i] - ref[i]));
    }
  r.checks.push_back(Check::at_most("schrodinger_maxwell_componentwise", gap, 1e-13 * s));
}

void levy_leblond_check(const ScenarioConfig& c, RunReport& r, double s) {
  const FourierGrid grid(1, c.grid.points, c.grid.box);
  const double m = c.mass, v = uniform_potential(c.potential);
  const double mass = m / (c_light * c_light);
  const PotentialSpec pot = PotentialSpec::constant(v);
  Table t{"pairs",
          {"p", "k", "classical_energy", "upper_residual", "lower_residual", "field_e_residual",
           "field_h_residual"},
          {}};
  double upper = 0.0, lower = 0.0, field = 0.0;
  for (double p : c.wave.momenta) {
    with_context("p=" + format_double(p) + ", m=" + format_double(m), [&] {
      const double k = snap_to_lattice(p / hbar, grid);
      const Vec3 kv(0.0, 0.0, k);
      const Field wave = plane_wave(Complex(1.0), kv, grid);
      SpinorField phi(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) {
        phi[0][i] = 0.6 * wave[i];
        phi[1][i] = Complex(0.0, 0.8) * wave[i];
      }
      const SpinorField chi = levy_leblond_lower(phi, grid, m);
      const double e_cl = (hbar * k) * (hbar * k) / (2.0 * mass) + v;
      const LevyLeblondResidual ll = levy_leblond_residual(phi, chi, grid, pot, m, e_cl);
      const TransverseFieldPair fields(plane_wave(CVec3(1.0, 0.0, 0.0), kv, grid),
                                       plane_wave(CVec3(0.0, 1.0, 0.0), kv, grid));
      const PairResidual fr = nr_reduction_residual(fields, grid, m, v, e_cl);
      upper = std::max(upper, ll.upper);
      lower = std::max(lower, ll.lower);
      field = std::max(field, fr.max());
      t.add_row({p, k, e_cl, ll.upper, ll.lower, fr.first, fr.second});
      return 0;
    });
  }
  r.tables.push_back(std::move(t));
  r.checks.push_back(Check::at_most("upper_residual", upper, 1e-12 * s));
  r.checks.push_back(Check::at_most("lower_residual", lower, 1e-12 * s));
  r.checks.push_back(Check::at_most("field_reduction_residual", field, 1e-12 * s));
}

void klein_gordon_check(const ScenarioConfig& c, RunReport& r, double s) {
  const FourierGrid grid(1, c.grid.points, c.grid.box);
  const double m = c.mass;
  Table t{"convergence", {"p", "k", "omega", "dt", "residual_dt", "residual_half_dt", "ratio"}, {}};
  std::vector<double> ratios;
  for (double p : c.wave.momenta) {
    with_context("p=" + format_double(p) + ", m=" + format_double(m), [&] {
      const double k = snap_to_lattice(p / hbar, grid);
      const double omega = free_energy(hbar * k * c_light, m) / hbar;
      const auto residual = [&](double dt) {
        std::array<Field, 3> samples;
        for (int j = 0; j < 3; ++j)
          samples[j] = plane_wave(std::polar(1.0, -omega * (j - 1) * dt), Vec3(0.0, 0.0, k), grid);
        return klein_gordon_residual(samples, grid, dt, m);
      };
      const double r1 = residual(c.time.dt), r2 = residual(0.5 * c.time.dt);
      ratios.push_back(r1 / r2);
      t.add_row({p, k, omega, c.time.dt, r1, r2, r1 / r2});
      return 0;
    });
  }
  r.tables.push_back(std::move(t));
  for (std::size_t i = 0; i < ratios.size(); ++i)
    r.checks.push_back(Check::near("halving_ratio_" + std::to_string(i), ratios[i], 4.0, 0.2 * s));
}

}  // namespace

FourierGrid make_grid(const GridConfig& g) { return FourierGrid(g.dims, g.points, g.box); }

PotentialSpec make_potential(const PotentialConfig& p, const FourierGrid& grid) {
  if (p.kind == "zero") return PotentialSpec::zero();
  if (p.kind == "constant") return PotentialSpec::constant(p.value);
  if (p.kind != "cosine") throw InvalidArgument("unknown potential kind '" + p.kind + "'");
  RealField v(grid.size());
  const double q = 2.0 * std::numbers::pi * p.mode / grid.box_length();
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = p.value + p.amplitude * std::cos(q * grid.position(i).z());
  return PotentialSpec::sampled(std::move(v));
}

BiSpinorField dirac_wave_packet(const FourierGrid& grid, double mass_energy, const Vec3& k0, const Vec3& center,
                                double width) {
  BiSpinorField hat(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 kk = grid.wave_vector(i);
    if (kk != grid.derivative_wave_vector(i)) continue;
    const Complex g = gaussian_weight(kk, k0, width) * std::polar(1.0, -kk.dot(center));
    const auto modes = dirac_eigenmodes(kk, mass_energy, 0.0);
    for (int a = 0; a < 4; ++a) hat[a][i] = g * modes[0].eigenvector[a];
  }
  grid.inverse(hat);
  const double n = norm(hat, grid);
  if (!(n > 0.0)) throw CannotNormalize("wave packet has no resolved modes");
  hat *= Complex(1.0 / n);
  return hat;
}

TransverseFieldPair maxwell_wave_packet(const FourierGrid& grid, double mass_energy, const Vec3& k0,
                                        const Vec3& center, double width) {
  TransverseFieldPair hat(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 kk = grid.wave_vector(i);
    if (kk.isZero() || kk != grid.derivative_wave_vector(i)) continue;
    const Complex g = gaussian_weight(kk, k0, width) * std::polar(1.0, -kk.dot(center));
    const MaxwellMode mode = maxwell_eigenmodes(kk, mass_energy, 0.0)[0];
    for (int a = 0; a < 3; ++a) {
      hat.e[a][i] = g * mode.e0[a];
      hat.h[a][i] = g * mode.h0[a];
    }
  }
  grid.inverse(hat.e);
  grid.inverse(hat.h);
  const double n = norm(hat, grid);
  if (!(n > 0.0)) throw CannotNormalize("wave packet has no resolved modes");
  hat.e *= Complex(1.0 / n);
  hat.h *= Complex(1.0 / n);
  return hat;
}

RunReport run_scenario(const ScenarioConfig& config) {
  check_config(config);
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.config = config;
  const double s = config.tolerance_scale;
  const std::string& name = config.scenario;
  try {
    if (name == "dispersion_table")
      dispersion_table(config, report, s);
    else if (name == "dirac_spectrum")
      dirac_spectrum_scenario(config, report, s);
    else if (name == "maxwell_spectrum")
      maxwell_spectrum_scenario(config, report, s);
    else if (name == "isomorphism_certify")
      isomorphism_certify(config, report, s);
    else if (name == "dirac_packet")
      dirac_packet(config, report, s);
    else if (name == "maxwell_packet")
      maxwell_packet(config, report, s);
    else if (name == "nr_limit_scan")
      nr_limit_scan(config, report, s);
    else if (name == "levy_leblond_check")
      levy_leblond_check(config, report, s);
    else
      klein_gordon_check(config, report, s);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    report.error = e.what();
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace rqm::io
