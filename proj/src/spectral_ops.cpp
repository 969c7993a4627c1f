#include "rqm/spectral_ops.hpp"

#include "rqm/error.hpp"

namespace rqm {

namespace {

constexpr Complex I{0.0, 1.0};

void require_3d(const FourierGrid& grid) {
  if (grid.dims() != 3) throw UnsupportedDimension(grid.dims());
}

void project_mode(const Vec3& k, Complex& fx, Complex& fy, Complex& fz) {
  const double k2 = k.squaredNorm();
  if (k2 == 0.0) return;
  const Complex kf = (k.x() * fx + k.y() * fy + k.z() * fz) / k2;
  fx -= k.x() * kf;
  fy -= k.y() * kf;
  fz -= k.z() * kf;
}

}  // namespace

Vec3Field curl_spectral(const Vec3Field& f, const FourierGrid& grid) {
  require_3d(grid);
  Vec3Field fhat = f;
  grid.forward(fhat);
  Vec3Field out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 k = grid.derivative_wave_vector(i);
    const Complex ax = fhat[0][i], ay = fhat[1][i], az = fhat[2][i];
    out[0][i] = I * (k.y() * az - k.z() * ay);
    out[1][i] = I * (k.z() * ax - k.x() * az);
    out[2][i] = I * (k.x() * ay - k.y() * ax);
  }
  grid.inverse(out);
  return out;
}

Field divergence_spectral(const Vec3Field& f, const FourierGrid& grid) {
  require_3d(grid);
  Vec3Field fhat = f;
  grid.forward(fhat);
  Field out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 k = grid.derivative_wave_vector(i);
    out[i] = I * (k.x() * fhat[0][i] + k.y() * fhat[1][i] + k.z() * fhat[2][i]);
  }
  grid.inverse(out);
  return out;
}

double transverse_project_spectral(Vec3Field& fhat, const FourierGrid& grid) {
  double removed = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex bx = fhat[0][i], by = fhat[1][i], bz = fhat[2][i];
    project_mode(grid.derivative_wave_vector(i), fhat[0][i], fhat[1][i], fhat[2][i]);
    removed += std::norm(bx - fhat[0][i]) + std::norm(by - fhat[1][i]) + std::norm(bz - fhat[2][i]);
  }
  return removed * grid.cell_volume() / static_cast<double>(grid.size());
}

Vec3Field transverse_project(const Vec3Field& f, const FourierGrid& grid) {
  Vec3Field fhat = f;
  grid.forward(fhat);
  transverse_project_spectral(fhat, grid);
  grid.inverse(fhat);
  return fhat;
}

Field laplacian_spectral(const Field& f, const FourierGrid& grid) {
  Field fhat = grid.forward_copy(f);
  for (std::size_t i = 0; i < grid.size(); ++i) fhat[i] *= -grid.wave_vector(i).squaredNorm();
  grid.inverse(fhat);
  return fhat;
}

double relative_divergence(const Vec3Field& f, const FourierGrid& grid) {
  const double n = norm(f, grid);
  if (n == 0.0) return 0.0;
  return norm(divergence_spectral(f, grid), grid) / n;
}

}  // namespace rqm
