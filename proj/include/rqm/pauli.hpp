#pragma once

#include <Eigen/Dense>

#include "rqm/field.hpp"

namespace rqm {

using SpinMatrix2 = Eigen::Matrix2cd;

SpinMatrix2 sigma_x();
SpinMatrix2 sigma_y();
SpinMatrix2 sigma_z();

/// sigma . v = [[v_z, v_x - i v_y], [v_x + i v_y, -v_z]].
SpinMatrix2 pauli_dot(const CVec3& v);
SpinMatrix2 pauli_dot(const Vec3& v);

/// Matrix [v]_x with [v]_x w = v x w.
Eigen::Matrix3d cross_matrix(const Vec3& v);

/// Unconjugated a x b for complex vectors.
CVec3 cross(const CVec3& a, const CVec3& b);

}  // namespace rqm
