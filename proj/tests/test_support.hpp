#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "rqm/fourier_grid.hpp"

namespace testing {

using rqm::Complex;
using rqm::Field;

inline Field random_field(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  Field f(n);
  for (auto& v : f) v = {d(rng), d(rng)};
  return f;
}

template <std::size_t N>
rqm::MultiField<N> random_multi(std::size_t n, std::mt19937_64& rng) {
  rqm::MultiField<N> f(n);
  for (auto& c : f.comp) c = random_field(n, rng);
  return f;
}

inline double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

template <std::size_t N>
double max_abs_diff(const rqm::MultiField<N>& a, const rqm::MultiField<N>& b) {
  double m = 0.0;
  for (std::size_t c = 0; c < N; ++c) m = std::max(m, max_abs_diff(a[c], b[c]));
  return m;
}

inline double max_abs(const Field& a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

template <std::size_t N>
double max_abs(const rqm::MultiField<N>& a) {
  double m = 0.0;
  for (const auto& c : a.comp) m = std::max(m, max_abs(c));
  return m;
}

/// O(N^2) DFT with kernel exp(-i k.r) summed over sample positions, phased
/// so the result matches a transform indexed from the first sample.
inline Field naive_dft(const Field& f, const rqm::FourierGrid& g) {
  Field out(g.size());
  const rqm::Vec3 r0 = g.position(0);
  for (std::size_t q = 0; q < g.size(); ++q) {
    const rqm::Vec3 k = g.wave_vector(q);
    Complex s{};
    for (std::size_t j = 0; j < g.size(); ++j) s += f[j] * std::polar(1.0, -k.dot(g.position(j) - r0));
    out[q] = s;
  }
  return out;
}

}  // namespace testing
