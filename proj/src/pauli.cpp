#include "rqm/pauli.hpp"

namespace rqm {

namespace {
constexpr Complex I{0.0, 1.0};
}

SpinMatrix2 sigma_x() {
  SpinMatrix2 s;
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}

SpinMatrix2 sigma_y() {
  SpinMatrix2 s;
  s << 0.0, -I, I, 0.0;
  return s;
}

SpinMatrix2 sigma_z() {
  SpinMatrix2 s;
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

SpinMatrix2 pauli_dot(const CVec3& v) {
  SpinMatrix2 s;
  s << v.z(), v.x() - I * v.y(), v.x() + I * v.y(), -v.z();
  return s;
}

SpinMatrix2 pauli_dot(const Vec3& v) { return pauli_dot(CVec3(v.cast<Complex>())); }

Eigen::Matrix3d cross_matrix(const Vec3& v) {
  Eigen::Matrix3d m;
  m << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return m;
}

CVec3 cross(const CVec3& a, const CVec3& b) {
  return {a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(), a.x() * b.y() - a.y() * b.x()};
}

}  // namespace rqm
