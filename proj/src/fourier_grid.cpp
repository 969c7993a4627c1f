#include "rqm/fourier_grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "rqm/error.hpp"

namespace rqm {

namespace {

// FFTW's planner is not re-entrant; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct FourierGrid::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  Plans(int dims, int n, std::size_t size) {
    Field scratch(size);
    auto* buf = as_fftw(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard lock(planner_mutex());
    if (dims == 1) {
      forward = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, flags);
      backward = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, flags);
    } else {
      forward = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_FORWARD, flags);
      backward = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_BACKWARD, flags);
    }
    if (forward == nullptr || backward == nullptr) throw Error("FFTW planning failed");
  }
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

FourierGrid::FourierGrid(int dims, int points, double box_length)
    : dims_(dims), points_(points), box_length_(box_length) {
  if (dims != 1 && dims != 3) throw InvalidArgument("grid dims must be 1 or 3, got " + std::to_string(dims));
  if (points <= 0 || points % 2 != 0)
    throw InvalidArgument("grid points per axis must be a positive even integer, got " + std::to_string(points));
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw InvalidArgument("grid box length must be positive and finite");
  size_ = dims == 1 ? static_cast<std::size_t>(points)
                    : static_cast<std::size_t>(points) * points * points;
  plans_ = std::make_shared<const Plans>(dims, points, size_);
}

double FourierGrid::cell_volume() const { return std::pow(spacing(), dims_); }

double FourierGrid::volume() const { return std::pow(box_length_, dims_); }

double FourierGrid::wavenumber(int index) const {
  const int n = index < points_ / 2 ? index : index - points_;
  return 2.0 * std::numbers::pi * n / box_length_;
}

double FourierGrid::max_wavenumber() const { return std::abs(wavenumber(points_ / 2)); }

std::array<int, 3> FourierGrid::axis_indices(std::size_t flat) const {
  if (dims_ == 1) return {0, 0, static_cast<int>(flat)};
  const auto n = static_cast<std::size_t>(points_);
  return {static_cast<int>(flat / (n * n)), static_cast<int>((flat / n) % n), static_cast<int>(flat % n)};
}

std::size_t FourierGrid::flat_index(int ix, int iy, int iz) const {
  if (dims_ == 1) return static_cast<std::size_t>(iz);
  const auto n = static_cast<std::size_t>(points_);
  return (static_cast<std::size_t>(ix) * n + static_cast<std::size_t>(iy)) * n + static_cast<std::size_t>(iz);
}

Vec3 FourierGrid::wave_vector(std::size_t flat) const {
  const auto idx = axis_indices(flat);
  if (dims_ == 1) return {0.0, 0.0, wavenumber(idx[2])};
  return {wavenumber(idx[0]), wavenumber(idx[1]), wavenumber(idx[2])};
}

Vec3 FourierGrid::derivative_wave_vector(std::size_t flat) const {
  const auto idx = axis_indices(flat);
  Vec3 k = Vec3::Zero();
  for (int a = 0; a < 3; ++a) {
    if (dims_ == 1 && a < 2) continue;
    if (!is_nyquist(idx[a])) k[a] = wavenumber(idx[a]);
  }
  return k;
}

Vec3 FourierGrid::position(std::size_t flat) const {
  const auto idx = axis_indices(flat);
  const double h = spacing();
  const double x0 = -0.5 * box_length_;
  if (dims_ == 1) return {0.0, 0.0, x0 + h * idx[2]};
  return {x0 + h * idx[0], x0 + h * idx[1], x0 + h * idx[2]};
}

void FourierGrid::forward(Field& f) const {
  if (f.size() != size_) throw InvalidArgument("field size does not match grid");
  fftw_execute_dft(plans_->forward, as_fftw(f.data()), as_fftw(f.data()));
}

void FourierGrid::inverse(Field& f) const {
  if (f.size() != size_) throw InvalidArgument("field size does not match grid");
  fftw_execute_dft(plans_->backward, as_fftw(f.data()), as_fftw(f.data()));
  const double scale = 1.0 / static_cast<double>(size_);
  for (auto& v : f) v *= scale;
}

bool all_finite(const Field& f) {
  for (const auto& v : f)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double norm_squared(const Field& f, const FourierGrid& grid) {
  double s = 0.0;
  for (const auto& v : f) s += std::norm(v);
  return s * grid.cell_volume();
}

double norm(const Field& f, const FourierGrid& grid) { return std::sqrt(norm_squared(f, grid)); }

Complex inner(const Field& a, const Field& b, const FourierGrid& grid) {
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s * grid.cell_volume();
}

double spectral_norm_squared(const Field& fhat, const FourierGrid& grid) {
  double s = 0.0;
  for (const auto& v : fhat) s += std::norm(v);
  return s * grid.cell_volume() / static_cast<double>(grid.size());
}

Field plane_wave(Complex amplitude, const Vec3& k, const FourierGrid& grid) {
  Field f(grid.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = amplitude * std::polar(1.0, k.dot(grid.position(i)));
  return f;
}

Vec3Field plane_wave(const CVec3& amplitude, const Vec3& k, const FourierGrid& grid) {
  Vec3Field f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex phase = std::polar(1.0, k.dot(grid.position(i)));
    for (int a = 0; a < 3; ++a) f[a][i] = amplitude[a] * phase;
  }
  return f;
}

Vec3 lattice_wave_vector(const FourierGrid& grid, int nx, int ny, int nz) {
  const double dk = 2.0 * std::numbers::pi / grid.box_length();
  if (grid.dims() == 1) return {0.0, 0.0, dk * nz};
  return {dk * nx, dk * ny, dk * nz};
}

}  // namespace rqm
