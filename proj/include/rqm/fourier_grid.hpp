#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>

#include "rqm/field.hpp"

namespace rqm {

/// Periodic 1D or 3D grid of `points` samples per axis over a cube of side
/// `box_length`, together with its dual wave-vector lattice k_n = 2*pi*n/L,
/// n in [-N/2, N/2). Storage is row-major (x slowest, z fastest) and the
/// wave numbers follow the FFT ordering. A 1D grid lies along z.
///
/// Grids are cheap to copy; copies share the transform plans.
class FourierGrid {
 public:
  FourierGrid(int dims, int points, double box_length);

  int dims() const { return dims_; }
  int points() const { return points_; }
  double box_length() const { return box_length_; }
  std::size_t size() const { return size_; }

  double spacing() const { return box_length_ / points_; }
  double cell_volume() const;
  double volume() const;

  /// Wave number of FFT index `index` along one axis.
  double wavenumber(int index) const;
  bool is_nyquist(int index) const { return index == points_ / 2; }
  /// Largest |k| component on the lattice.
  double max_wavenumber() const;

  /// Per-axis FFT indices of a flat index. Unused axes of a 1D grid are 0;
  /// the single axis of a 1D grid maps to z.
  std::array<int, 3> axis_indices(std::size_t flat) const;
  std::size_t flat_index(int ix, int iy, int iz) const;

  Vec3 wave_vector(std::size_t flat) const;
  /// Wave vector used by first-derivative operators: components sitting on
  /// the Nyquist index are zeroed.
  Vec3 derivative_wave_vector(std::size_t flat) const;
  /// Sample position; each axis spans [-L/2, L/2).
  Vec3 position(std::size_t flat) const;

  /// Unnormalized forward DFT.
  void forward(Field& f) const;
  /// Inverse DFT including the 1/N factor.
  void inverse(Field& f) const;
  Field forward_copy(Field f) const {
    forward(f);
    return f;
  }
  Field inverse_copy(Field f) const {
    inverse(f);
    return f;
  }

  template <std::size_t N>
  void forward(MultiField<N>& f) const {
    for (auto& c : f.comp) forward(c);
  }
  template <std::size_t N>
  void inverse(MultiField<N>& f) const {
    for (auto& c : f.comp) inverse(c);
  }

  bool operator==(const FourierGrid& o) const {
    return dims_ == o.dims_ && points_ == o.points_ && box_length_ == o.box_length_;
  }

 private:
  struct Plans;

  int dims_;
  int points_;
  double box_length_;
  std::size_t size_;
  std::shared_ptr<const Plans> plans_;
};

/// sum |f|^2 dV over the box.
double norm_squared(const Field& f, const FourierGrid& grid);
double norm(const Field& f, const FourierGrid& grid);
/// sum conj(a) b dV.
Complex inner(const Field& a, const Field& b, const FourierGrid& grid);

template <std::size_t N>
double norm_squared(const MultiField<N>& f, const FourierGrid& grid) {
  double s = 0.0;
  for (const auto& c : f.comp) s += norm_squared(c, grid);
  return s;
}

template <std::size_t N>
double norm(const MultiField<N>& f, const FourierGrid& grid) {
  return std::sqrt(norm_squared(f, grid));
}

template <std::size_t N>
Complex inner(const MultiField<N>& a, const MultiField<N>& b, const FourierGrid& grid) {
  Complex s{};
  for (std::size_t i = 0; i < N; ++i) s += inner(a.comp[i], b.comp[i], grid);
  return s;
}

/// Norm of a field held in Fourier space (unnormalized forward DFT), equal
/// to the position-space norm by Parseval.
double spectral_norm_squared(const Field& fhat, const FourierGrid& grid);

template <std::size_t N>
double spectral_norm_squared(const MultiField<N>& fhat, const FourierGrid& grid) {
  double s = 0.0;
  for (const auto& c : fhat.comp) s += spectral_norm_squared(c, grid);
  return s;
}

/// amplitude * exp(i k.r) sampled on the grid.
Field plane_wave(Complex amplitude, const Vec3& k, const FourierGrid& grid);
Vec3Field plane_wave(const CVec3& amplitude, const Vec3& k, const FourierGrid& grid);

/// Lattice wave vector closest to `n * 2pi/L` for integer mode numbers.
Vec3 lattice_wave_vector(const FourierGrid& grid, int nx, int ny, int nz);

}  // namespace rqm
