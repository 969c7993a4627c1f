#pragma once

#include "rqm/fourier_grid.hpp"

namespace rqm {

// Spectral differential operators on periodic grids. First-derivative
// operators use FourierGrid::derivative_wave_vector, so Nyquist components
// are dropped consistently by curl, divergence and the transverse projector.
// That keeps div(curl f) = 0 and div(project f) = 0 exact per mode.

/// i k x f(k), transformed back. Requires a 3D grid.
Vec3Field curl_spectral(const Vec3Field& f, const FourierGrid& grid);

/// i k . f(k), transformed back. Requires a 3D grid.
Field divergence_spectral(const Vec3Field& f, const FourierGrid& grid);

/// f(k) - k (k . f(k)) / |k|^2; modes with vanishing derivative wave vector
/// (k = 0 and pure Nyquist modes) pass through unchanged.
Vec3Field transverse_project(const Vec3Field& f, const FourierGrid& grid);

/// Projects a field already in Fourier space in place and returns the
/// squared norm that was removed (position-space normalization).
double transverse_project_spectral(Vec3Field& fhat, const FourierGrid& grid);

/// -|k|^2 f(k), transformed back. Works on 1D and 3D grids.
Field laplacian_spectral(const Field& f, const FourierGrid& grid);

/// ||div f|| / ||f||, 0 for a zero field.
double relative_divergence(const Vec3Field& f, const FourierGrid& grid);

}  // namespace rqm
