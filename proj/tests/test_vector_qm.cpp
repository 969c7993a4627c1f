#include <algorithm>

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "rqm/dispersion.hpp"
#include "rqm/error.hpp"
#include "rqm/spectral_ops.hpp"
#include "rqm/units.hpp"
#include "rqm/vector_qm.hpp"
#include "test_support.hpp"

using namespace rqm;
using testing::max_abs;
using testing::max_abs_diff;

namespace {

struct Draw {
  Vec3 k;
  double m, v0;
};

std::vector<Draw> draws(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uk(-2.3, 2.3), um(0.0, 4.0), uv(-2.0, 2.0);
  std::vector<Draw> out;
  while (static_cast<int>(out.size()) < count) {
    const Vec3 k(uk(rng), uk(rng), uk(rng));
    if (k.norm() == 0.0) continue;
    out.push_back({k, um(rng), uv(rng)});
  }
  return out;
}

TransverseFieldPair random_transverse(const FourierGrid& g, std::mt19937_64& rng) {
  return {transverse_project(testing::random_multi<3>(g.size(), rng), g),
          transverse_project(testing::random_multi<3>(g.size(), rng), g)};
}

double max_abs_diff(const TransverseFieldPair& a, const TransverseFieldPair& b) {
  return std::max(testing::max_abs_diff(a.e, b.e), testing::max_abs_diff(a.h, b.h));
}

double max_abs(const TransverseFieldPair& a) { return std::max(testing::max_abs(a.e), testing::max_abs(a.h)); }

Complex inner(const TransverseFieldPair& a, const TransverseFieldPair& b, const FourierGrid& g) {
  return rqm::inner(a.e, b.e, g) + rqm::inner(a.h, b.h, g);
}

/// Per-mode exp(-i G(k) t) through Eigen's matrix exponential, k the
/// derivative lattice vector of each Fourier sample.
TransverseFieldPair matrix_exp_oracle(const TransverseFieldPair& s, const FourierGrid& g, double m, double v0,
                                      double t) {
  TransverseFieldPair hat = s;
  g.forward(hat.e);
  g.forward(hat.h);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Matrix6c u = (Complex(0.0, -t) * maxwell_generator_k(g.derivative_wave_vector(i), m, v0)).exp();
    Vector6c v;
    v << hat.e[0][i], hat.e[1][i], hat.e[2][i], hat.h[0][i], hat.h[1][i], hat.h[2][i];
    v = u * v;
    for (int a = 0; a < 3; ++a) {
      hat.e[a][i] = v[a];
      hat.h[a][i] = v[a + 3];
    }
  }
  g.inverse(hat.e);
  g.inverse(hat.h);
  return hat;
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

PotentialSpec smooth_potential(const FourierGrid& g, double amp) {
  RealField v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 r = g.position(i);
    v[i] = amp * (std::cos(2.0 * std::numbers::pi * r.x() / g.box_length()) +
                  0.5 * std::sin(2.0 * std::numbers::pi * r.z() / g.box_length()));
  }
  return PotentialSpec::sampled(std::move(v));
}

}  // namespace

TEST_CASE("Riemann-Silberstein compose and decompose") {
  TransverseFieldPair f(1);
  f.e[0][0] = 1.0;
  RiemannSilbersteinField rs = rs_compose(f, 1.0, 1.0);
  CHECK(rs.psi[0][0] == Complex(1.0, 0.0));
  CHECK(rs.psi[1][0] == Complex(0.0, 0.0));

  TransverseFieldPair g(1);
  g.h[1][0] = 1.0;
  rs = rs_compose(g, 1.0, 4.0);
  CHECK(rs.psi[0][0] == Complex(0.0, 0.0));
  CHECK(rs.psi[1][0] == Complex(0.0, 2.0));
  CHECK(rs.epsilon_used == 1.0);
  CHECK(rs.mu_used == 4.0);

  const FourierGrid grid(3, 8, 5.0);
  std::mt19937_64 rng(3);
  for (double eps : {0.3, 1.0, 2.5}) {
    for (double mu : {0.7, 1.0, 4.0}) {
      const TransverseFieldPair s = random_transverse(grid, rng);
      const TransverseFieldPair back = rs_decompose(rs_compose(s, eps, mu));
      CHECK(max_abs_diff(back, s) <= 1e-13 * max_abs(s));
    }
  }

  // Real fields: the partner is the conjugate of psi.
  TransverseFieldPair real(1);
  real.e[2][0] = 0.4;
  real.h[0][0] = -1.3;
  rs = rs_compose(real, 2.0, 3.0);
  for (int a = 0; a < 3; ++a) CHECK(std::abs(rs.psi_partner[a][0] - std::conj(rs.psi[a][0])) == 0.0);

  CHECK_THROWS_AS(rs_compose(f, 0.0, 1.0), NonInvertibleMedium);
  CHECK_THROWS_AS(rs_compose(f, 1.0, -1.0), NonInvertibleMedium);
  rs.mu_used = -2.0;
  CHECK_THROWS_AS(rs_decompose(rs), NonInvertibleMedium);
}

TEST_CASE("generator examples") {
  const Matrix6c g0 = maxwell_generator_k(Vec3::Zero(), 1.5, 0.25);
  Vector6c diag;
  diag << 1.75, 1.75, 1.75, -1.25, -1.25, -1.25;
  CHECK((g0 - Matrix6c(diag.asDiagonal())).norm() == 0.0);

  const GeneratorSpectrum photon = maxwell_spectrum(Vec3(0.6, 0.0, 0.8), 0.0, 0.0);
  const std::vector<double> ph{1.0, 1.0, -1.0, -1.0};
  for (int i = 0; i < 4; ++i) CHECK(photon.transverse[i] == doctest::Approx(ph[i]).epsilon(1e-14));

  const GeneratorSpectrum massive = maxwell_spectrum(Vec3(0, 0, 1), 1.0, 0.0);
  const double r2 = std::sqrt(2.0);
  const std::vector<double> tr{r2, r2, -r2, -r2};
  for (int i = 0; i < 4; ++i) CHECK(massive.transverse[i] == doctest::Approx(tr[i]).epsilon(1e-14));
  CHECK(massive.longitudinal[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(massive.longitudinal[1] == doctest::Approx(-1.0).epsilon(1e-14));

  // E along k is the +mc^2 longitudinal mode, H along k the -mc^2 one.
  const Matrix6c g = maxwell_generator_k(Vec3(0, 0, 1), 1.0, 0.0);
  Vector6c e_long = Vector6c::Zero(), h_long = Vector6c::Zero();
  e_long[2] = 1.0;
  h_long[5] = 1.0;
  CHECK((g * e_long - e_long).norm() == 0.0);
  CHECK((g * h_long + h_long).norm() == 0.0);
}

TEST_CASE("generator spectrum against a dense eigensolve and the Dirac spectrum") {
  for (const auto& d : draws(41, 100)) {
    const Matrix6c g = maxwell_generator_k(d.k, d.m, d.v0);
    CHECK((g - g.adjoint()).norm() == 0.0);
    Eigen::SelfAdjointEigenSolver<Matrix6c> es(g, Eigen::EigenvaluesOnly);
    std::vector<double> dense(es.eigenvalues().data(), es.eigenvalues().data() + 6);
    dense = sorted_desc(dense);

    const GeneratorSpectrum spec = maxwell_spectrum(d.k, d.m, d.v0);
    std::vector<double> all = spec.transverse;
    all.insert(all.end(), spec.longitudinal.begin(), spec.longitudinal.end());
    all = sorted_desc(all);

    const double scale = std::max(std::abs(dense.front()), std::abs(dense.back()));
    for (int i = 0; i < 6; ++i) CHECK(std::abs(all[i] - dense[i]) <= 1e-12 * scale);

    CHECK(spec.longitudinal[0] == doctest::Approx(d.v0 + d.m).epsilon(1e-12).scale(scale));
    CHECK(spec.longitudinal[1] == doctest::Approx(d.v0 - d.m).epsilon(1e-12).scale(scale));

    const auto dirac = dirac_spectrum(d.k, d.m, d.v0);
    const double w = free_energy(d.k.norm(), d.m);
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(spec.transverse[i] - dirac[i]) <= 1e-12 * scale);
      CHECK(std::abs(spec.transverse[i] - (i < 2 ? d.v0 + w : d.v0 - w)) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("polarization basis") {
  CHECK_THROWS_AS(polarization_basis(Vec3::Zero()), UndefinedPolarization);
  const auto [u1, u2] = polarization_basis(Vec3(0, 0, 2));
  CHECK((u1 - Vec3(1, 0, 0)).norm() == 0.0);
  CHECK((u2 - Vec3(0, 1, 0)).norm() == 0.0);
  for (const auto& d : draws(5, 50)) {
    const auto [a, b] = polarization_basis(d.k);
    const Vec3 kh = d.k.normalized();
    CHECK(std::abs(a.norm() - 1.0) <= 1e-15);
    CHECK(std::abs(b.norm() - 1.0) <= 1e-15);
    CHECK(std::abs(a.dot(b)) <= 1e-15);
    CHECK(std::abs(a.dot(kh)) <= 1e-15);
    CHECK((kh.cross(a) - b).norm() <= 1e-15);
  }
}

TEST_CASE("Maxwell eigenmodes") {
  CHECK_THROWS_AS(maxwell_eigenmodes(Vec3::Zero(), 1.0, 0.0), UndefinedPolarization);

  const auto photon = maxwell_eigenmodes(Vec3(0, 0, 1), 0.0, 0.0);
  REQUIRE(photon.size() == 4);
  for (const auto& mode : photon) {
    const bool particle = mode.branch.charge == Charge::particle;
    CHECK(mode.energy == doctest::Approx(particle ? 1.0 : -1.0));
    if (particle) CHECK((mode.h0 - cross(CVec3(0, 0, 1), mode.e0)).norm() <= 1e-15);
  }

  for (const auto& mode : maxwell_eigenmodes(Vec3(0.0, 1.0, 0.0), 1.0, 0.0))
    CHECK(std::abs(std::abs(mode.energy) - std::sqrt(2.0)) <= 1e-15);

  for (const auto& d : draws(9, 100)) {
    const auto modes = maxwell_eigenmodes(d.k, d.m, d.v0);
    REQUIRE(modes.size() == 4);
    const Matrix6c g = maxwell_generator_k(d.k, d.m, d.v0);
    const double scale = std::max(std::abs(d.v0) + free_energy(d.k.norm(), d.m), 1.0);
    const double w = free_energy(d.k.norm(), d.m);
    Eigen::Matrix<Complex, 6, 4> basis;
    for (int i = 0; i < 4; ++i) {
      const MaxwellMode& mode = modes[i];
      basis.col(i) = mode.stacked();
      const double e_minus_v = mode.energy - d.v0;
      CHECK(std::abs(e_minus_v * e_minus_v - w * w) <= 1e-12 * w * w);
      CHECK(std::abs(mode.k.cast<Complex>().dot(mode.e0)) <= 1e-12 * d.k.norm());
      CHECK(std::abs(mode.k.cast<Complex>().dot(mode.h0)) <= 1e-12 * d.k.norm());
      CHECK(maxwell_mode_residual(mode, d.m, d.v0, mode.energy).max() <= 1e-12);
      // Independent check against the generator itself.
      CHECK((g * mode.stacked() - mode.energy * mode.stacked()).norm() <= 1e-12 * scale);
      const Vector6c v = mode.stacked();
      int first = 0;
      while (std::abs(v[first]) <= 1e-12) ++first;
      CHECK(v[first].imag() == 0.0);
      CHECK(v[first].real() > 0.0);
      if (mode.energy != 0.0) CHECK(medium_form_residual(mode, d.m, d.v0).max() <= 1e-12);
    }
    CHECK((basis.adjoint() * basis - Eigen::Matrix4cd::Identity()).norm() <= 1e-14);
    CHECK(modes[0].branch == Branch{Charge::particle, 1});
    CHECK(modes[3].branch == Branch{Charge::antiparticle, 2});
  }

  // The residual detects a wrong energy.
  const auto m1 = maxwell_eigenmodes(Vec3(0, 0, 1), 1.0, 0.0);
  CHECK(maxwell_mode_residual(m1[0], 1.0, 0.0, m1[0].energy + 0.5).max() > 0.1);
  MaxwellMode zero_energy = m1[0];
  zero_energy.energy = 0.0;
  CHECK_THROWS_AS(medium_form_residual(zero_energy, 1.0, 0.0), SingularEnergy);
}

TEST_CASE("grid generator acts as the mode energy on sampled eigenmodes") {
  const FourierGrid grid(3, 8, 2.0 * std::numbers::pi);
  const Vec3 k = lattice_wave_vector(grid, 1, -2, 1);
  for (const auto& mode : maxwell_eigenmodes(k, 0.8, 0.3)) {
    const TransverseFieldPair f = sample_mode(mode, grid, Complex(0.5, 0.2));
    CHECK(max_relative_divergence(f, grid) <= 1e-13);
    const TransverseFieldPair gf = apply_maxwell_generator(f, grid, 0.8, PotentialSpec::constant(0.3));
    TransverseFieldPair ef = f;
    ef.e *= mode.energy;
    ef.h *= mode.energy;
    CHECK(max_abs_diff(gf, ef) <= 1e-12 * max_abs(ef));
  }
  const FourierGrid line(1, 8, 1.0);
  CHECK_THROWS_AS(apply_maxwell_generator(TransverseFieldPair(8), line, 1.0, PotentialSpec::zero()),
                  UnsupportedDimension);
}

TEST_CASE("evolve_maxwell: eigenmode phase and zero steps") {
  const FourierGrid grid(3, 8, 4.0);
  const Vec3 k = lattice_wave_vector(grid, 2, 0, -1);
  const double m = 1.3, v0 = -0.4, dt = 0.05;
  const std::size_t steps = 40;
  for (const auto& mode : maxwell_eigenmodes(k, m, v0)) {
    const TransverseFieldPair f0 = sample_mode(mode, grid);
    const MaxwellEvolution ev = evolve_maxwell(f0, grid, PotentialSpec::constant(v0), m, dt, steps);
    const double t = dt * steps;
    const Complex overlap = inner(f0, ev.state, grid) / norm_squared(f0, grid);
    const Complex expected = std::polar(1.0, -mode.energy * t / hbar);
    CHECK(std::abs(overlap / expected - 1.0) <= 1e-10);
    CHECK(ev.discarded_norm_squared.empty());
  }

  std::mt19937_64 rng(12);
  const TransverseFieldPair s = random_transverse(grid, rng);
  const MaxwellEvolution none = evolve_maxwell(s, grid, PotentialSpec::constant(0.7), m, dt, 0);
  CHECK(max_abs_diff(none.state, s) == 0.0);
  const MaxwellEvolution none_sampled = evolve_maxwell(s, grid, smooth_potential(grid, 0.3), m, dt, 0);
  CHECK(max_abs_diff(none_sampled.state, s) == 0.0);
}

TEST_CASE("evolve_maxwell matches the per-mode matrix exponential") {
  const FourierGrid grid(3, 8, 3.0);
  std::mt19937_64 rng(77);
  // Includes longitudinal and Nyquist content; the propagator is defined on all of it.
  TransverseFieldPair s{testing::random_multi<3>(grid.size(), rng), testing::random_multi<3>(grid.size(), rng)};
  for (double m : {0.0, 0.9}) {
    const double v0 = 0.35, dt = 0.07;
    const std::size_t steps = 13;
    const MaxwellEvolution ev = evolve_maxwell(s, grid, PotentialSpec::constant(v0), m, dt, steps);
    const TransverseFieldPair oracle = matrix_exp_oracle(s, grid, m, v0, dt * steps);
    CHECK(max_abs_diff(ev.state, oracle) <= 1e-11 * max_abs(oracle));
  }
}

TEST_CASE("evolve_maxwell: unitarity and transversality") {
  const FourierGrid grid(3, 16, 6.0);
  std::mt19937_64 rng(8);
  const TransverseFieldPair s = random_transverse(grid, rng);
  const double n0 = norm(s, grid);

  std::size_t calls = 0;
  Observation<TransverseFieldPair> obs{25, [&](std::size_t step, const TransverseFieldPair& st) {
                                         CHECK(step % 25 == 0);
                                         CHECK(std::abs(norm(st, grid) / n0 - 1.0) <= 1e-12);
                                         ++calls;
                                       }};
  const MaxwellEvolution ev = evolve_maxwell(s, grid, PotentialSpec::constant(0.5), 1.0, 0.01, 200, obs);
  CHECK(calls == 8);
  CHECK(std::abs(norm(ev.state, grid) / n0 - 1.0) <= 1e-12);
  CHECK(ev.max_divergence <= 1e-10);
  CHECK(max_relative_divergence(ev.state, grid) <= 1e-10);
  CHECK(all_finite(ev.state.e));
}

TEST_CASE("evolve_maxwell with a sampled potential re-projects and accounts for the loss") {
  const FourierGrid grid(3, 16, 8.0);
  std::mt19937_64 rng(21);
  const TransverseFieldPair s = random_transverse(grid, rng);
  const double n0sq = norm_squared(s, grid);
  const std::size_t steps = 50;
  const MaxwellEvolution ev = evolve_maxwell(s, grid, smooth_potential(grid, 0.4), 1.0, 0.01, steps);
  REQUIRE(ev.discarded_norm_squared.size() == steps);
  CHECK(ev.total_discarded() > 0.0);
  for (double d : ev.discarded_norm_squared) CHECK(d >= 0.0);
  CHECK(ev.max_divergence <= 1e-10);
  // Phases and the kinetic step are unitary; only the projection removes norm.
  CHECK(std::abs(norm_squared(ev.state, grid) - (n0sq - ev.total_discarded())) <= 1e-12 * n0sq);

  const FourierGrid line(1, 16, 8.0);
  CHECK_THROWS_AS(evolve_maxwell(TransverseFieldPair(16), line, PotentialSpec::zero(), 1.0, 0.01, 1),
                  UnsupportedDimension);
  CHECK_THROWS_AS(evolve_maxwell(s, grid, PotentialSpec::zero(), 1.0, 0.0, 1), InvalidArgument);
  TransverseFieldPair bad = s;
  bad.e[0][3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(evolve_maxwell(bad, grid, PotentialSpec::zero(), 1.0, 0.01, 1), InvalidArgument);
}

TEST_CASE("vacuum photon packet moves rigidly at c") {
  const int n = 16;
  const FourierGrid grid(3, n, 16.0);
  const double k0 = 1.5, width = 2.0;
  TransverseFieldPair f(grid.size());
  // Only k along +z: every component has group velocity exactly c z_hat.
  for (int iz = 1; iz < n / 2; ++iz) {
    const Vec3 k = lattice_wave_vector(grid, 0, 0, iz);
    const double a = std::exp(-0.5 * std::pow((k.z() - k0) * width, 2));
    const TransverseFieldPair mode = sample_mode(maxwell_eigenmodes(k, 0.0, 0.0)[0], grid, a);
    f.e += mode.e;
    f.h += mode.h;
  }
  const int shift = 3;
  const double t = shift * grid.spacing();
  const MaxwellEvolution ev = evolve_maxwell(f, grid, PotentialSpec::zero(), 0.0, t / 6.0, 6);

  TransverseFieldPair moved(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto [ix, iy, iz] = grid.axis_indices(i);
    const std::size_t src = grid.flat_index(ix, iy, (iz - shift + n) % n);
    for (int a = 0; a < 3; ++a) {
      moved.e[a][i] = f.e[a][src];
      moved.h[a][i] = f.h[a][src];
    }
  }
  CHECK(max_abs_diff(ev.state, moved) <= 1e-12 * max_abs(f));

  const auto centroid = [&](const TransverseFieldPair& s) {
    // Circular mean, robust to the periodic wrap.
    Complex acc{};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double dens = 0.0;
      for (int a = 0; a < 3; ++a) dens += std::norm(s.e[a][i]) + std::norm(s.h[a][i]);
      acc += dens * std::polar(1.0, 2.0 * std::numbers::pi * grid.position(i).z() / grid.box_length());
    }
    return std::arg(acc) * grid.box_length() / (2.0 * std::numbers::pi);
  };
  CHECK(centroid(ev.state) - centroid(f) == doctest::Approx(c_light * t).epsilon(1e-10));
}

TEST_CASE("photon branch keeps H = k_hat x E at all times") {
  const FourierGrid grid(3, 8, 5.0);
  const Vec3 k = lattice_wave_vector(grid, 1, 1, 2);
  const CVec3 kh = k.normalized().cast<Complex>();
  for (const auto& mode : maxwell_eigenmodes(k, 0.0, 0.0)) {
    if (mode.branch.charge != Charge::particle) continue;
    double worst = 0.0;
    Observation<TransverseFieldPair> obs{1, [&](std::size_t, const TransverseFieldPair& s) {
                                           for (std::size_t i = 0; i < grid.size(); ++i) {
                                             const CVec3 e(s.e[0][i], s.e[1][i], s.e[2][i]);
                                             const CVec3 h(s.h[0][i], s.h[1][i], s.h[2][i]);
                                             worst = std::max(worst, (h - cross(kh, e)).norm());
                                           }
                                         }};
    evolve_maxwell(sample_mode(mode, grid), grid, PotentialSpec::zero(), 0.0, 0.1, 30, obs);
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("Schrodinger-Maxwell evolution") {
  const FourierGrid grid(3, 16, 7.0);
  std::mt19937_64 rng(30);
  const TransverseFieldPair s = random_transverse(grid, rng);
  const double m = 1.7, dt = 0.02;
  const std::size_t steps = 25;

  for (const PotentialSpec& pot : {PotentialSpec::zero(), PotentialSpec::constant(-0.6)}) {
    const MaxwellEvolution ev = evolve_schrodinger_maxwell(s, grid, pot, m, dt, steps);
    double gap = 0.0;
    for (int a = 0; a < 3; ++a) {
      gap = std::max(gap, max_abs_diff(ev.state.e[a], evolve_schrodinger(s.e[a], grid, pot, m, dt, steps)));
      gap = std::max(gap, max_abs_diff(ev.state.h[a], evolve_schrodinger(s.h[a], grid, pot, m, dt, steps)));
    }
    CHECK(gap <= 1e-13 * max_abs(s));
  }

  // Plane-wave envelope: each component picks up exp(-i hbar k^2 t / 2m).
  const Vec3 k = lattice_wave_vector(grid, 0, 1, 2);
  const TransverseFieldPair pw = sample_mode(maxwell_eigenmodes(k, m, 0.0)[1], grid);
  const MaxwellEvolution ev = evolve_schrodinger_maxwell(pw, grid, PotentialSpec::zero(), m, dt, steps);
  TransverseFieldPair expected = pw;
  const Complex ph = std::polar(1.0, -hbar * k.squaredNorm() * dt * steps / (2.0 * m));
  expected.e *= ph;
  expected.h *= ph;
  CHECK(max_abs_diff(ev.state, expected) <= 1e-12);

  const MaxwellEvolution sampled = evolve_schrodinger_maxwell(s, grid, smooth_potential(grid, 0.5), m, dt, steps);
  CHECK(sampled.max_divergence <= 1e-10);
  CHECK(sampled.discarded_norm_squared.size() == steps);

  CHECK_THROWS_AS(evolve_schrodinger_maxwell(s, grid, PotentialSpec::zero(), 0.0, dt, 1), InvalidArgument);
}

TEST_CASE("Schrodinger-Maxwell norm over 1000 steps") {
  const FourierGrid grid(3, 8, 6.0);
  std::mt19937_64 rng(31);
  const TransverseFieldPair s = random_transverse(grid, rng);
  const MaxwellEvolution ev = evolve_schrodinger_maxwell(s, grid, PotentialSpec::constant(0.2), 1.0, 0.01, 1000);
  CHECK(std::abs(norm(ev.state, grid) / norm(s, grid) - 1.0) <= 1e-10);
}

TEST_CASE("non-relativistic reduction residual") {
  const FourierGrid grid(3, 8, 2.0 * std::numbers::pi);
  const double m = 2.0;
  const Vec3 k = lattice_wave_vector(grid, 1, 2, 0);
  const TransverseFieldPair pw = sample_mode(maxwell_eigenmodes(k, m, 0.0)[0], grid);
  const double e_cl = k.squaredNorm() / (2.0 * m);
  const PairResidual good = nr_reduction_residual(pw, grid, m, 0.0, e_cl);
  CHECK(good.max() <= 1e-12);
  const PairResidual shifted = nr_reduction_residual(pw, grid, m, 0.8, e_cl + 0.8);
  CHECK(shifted.max() <= 1e-12);
  const PairResidual wrong = nr_reduction_residual(pw, grid, m, 0.0, 2.0 * e_cl + 1.0);
  CHECK(wrong.first > 0.5);
  CHECK(wrong.second > 0.5);
  const PairResidual zero = nr_reduction_residual(TransverseFieldPair(grid.size()), grid, m, 0.0, 1.0);
  CHECK(zero.first == 0.0);
  CHECK(zero.second == 0.0);
  CHECK_THROWS_AS(nr_reduction_residual(pw, grid, 0.0, 0.0, 1.0), InvalidArgument);
}

TEST_CASE("energy normalization") {
  const FourierGrid grid(3, 8, 3.0);
  CHECK(energy_normalization(Vec3Field(grid.size()), 2.0, grid) == 0.0);

  const double eps = 0.6;
  Vec3Field uniform(grid.size());
  const double amp = std::sqrt(gauss_factor / (eps * grid.volume()));
  for (std::size_t i = 0; i < grid.size(); ++i) uniform[1][i] = amp;
  CHECK(energy_normalization(uniform, eps, grid) == doctest::Approx(1.0).epsilon(1e-14));

  std::mt19937_64 rng(2);
  const Vec3Field f = testing::random_multi<3>(grid.size(), rng);
  const double base = energy_normalization(f, 1.4, grid);
  for (double alpha : {0.5, 3.0}) {
    Vec3Field g = f;
    g *= alpha;
    CHECK(energy_normalization(g, 1.4, grid) == doctest::Approx(alpha * alpha * base).epsilon(1e-14));
  }
}

TEST_CASE("normalize_to_energy") {
  const FourierGrid grid(3, 8, 2.0 * std::numbers::pi);
  const Vec3 k = lattice_wave_vector(grid, 1, 0, 1);
  const double m = 1.0, v0 = -0.3;
  for (const auto& mode : maxwell_eigenmodes(k, m, v0)) {
    if (mode.energy <= 0.0) continue;
    const EffectiveMedium med = effective_medium(mode.energy, v0, m);
    const TransverseFieldPair n1 = normalize_to_energy(sample_mode(mode, grid), med.epsilon, med.mu, mode.energy, grid);
    CHECK(energy_normalization(n1.e, med.epsilon, grid) == doctest::Approx(mode.energy).epsilon(1e-12));
    CHECK(energy_normalization(n1.h, med.mu, grid) == doctest::Approx(mode.energy).epsilon(1e-12));

    const TransverseFieldPair again = normalize_to_energy(n1, med.epsilon, med.mu, mode.energy, grid);
    CHECK(max_abs_diff(again, n1) <= 1e-13 * max_abs(n1));

    const TransverseFieldPair doubled = normalize_to_energy(n1, med.epsilon, med.mu, 2.0 * mode.energy, grid);
    TransverseFieldPair scaled = n1;
    scaled.e *= std::sqrt(2.0);
    scaled.h *= std::sqrt(2.0);
    CHECK(max_abs_diff(doubled, scaled) <= 1e-13 * max_abs(scaled));
  }

  const TransverseFieldPair zero(grid.size());
  CHECK_THROWS_AS(normalize_to_energy(zero, 1.0, 1.0, 1.0, grid), CannotNormalize);
  std::mt19937_64 rng(4);
  TransverseFieldPair half = random_transverse(grid, rng);
  half.h = Vec3Field(grid.size());
  CHECK_THROWS_AS(normalize_to_energy(half, 1.0, 1.0, 1.0, grid), CannotNormalize);
  CHECK_THROWS_AS(normalize_to_energy(random_transverse(grid, rng), -1.0, 1.0, 1.0, grid), NonInvertibleMedium);
}
