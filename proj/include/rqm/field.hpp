#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace rqm {

using Complex = std::complex<double>;
using Field = std::vector<Complex>;
using RealField = std::vector<double>;

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;

/// N complex scalar fields sampled on the same grid.
template <std::size_t N>
struct MultiField {
  std::array<Field, N> comp;

  MultiField() = default;
  explicit MultiField(std::size_t points) {
    for (auto& c : comp) c.assign(points, Complex{});
  }

  static constexpr std::size_t components() { return N; }
  std::size_t points() const { return comp[0].size(); }

  Field& operator[](std::size_t i) { return comp[i]; }
  const Field& operator[](std::size_t i) const { return comp[i]; }

  MultiField& operator*=(Complex s) {
    for (auto& c : comp)
      for (auto& v : c) v *= s;
    return *this;
  }
  friend MultiField operator*(Complex s, MultiField f) { return f *= s; }

  MultiField& operator+=(const MultiField& o) {
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < comp[i].size(); ++j) comp[i][j] += o.comp[i][j];
    return *this;
  }
  MultiField& operator-=(const MultiField& o) {
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < comp[i].size(); ++j) comp[i][j] -= o.comp[i][j];
    return *this;
  }
  friend MultiField operator+(MultiField a, const MultiField& b) { return a += b; }
  friend MultiField operator-(MultiField a, const MultiField& b) { return a -= b; }
};

/// Three complex components; raw storage for vector wave functions, E and H.
using Vec3Field = MultiField<3>;
/// (phi1, phi2, chi1, chi2): upper spinor Phi followed by lower spinor X.
using BiSpinorField = MultiField<4>;
/// Single two-component spinor field.
using SpinorField = MultiField<2>;
/// (phi, chi) of the spinless two-component system.
using ScalarPairField = MultiField<2>;

bool all_finite(const Field& f);

template <std::size_t N>
bool all_finite(const MultiField<N>& f) {
  for (const auto& c : f.comp)
    if (!all_finite(c)) return false;
  return true;
}

}  // namespace rqm
