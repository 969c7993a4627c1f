#pragma once

#include <stdexcept>
#include <string>

namespace rqm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  explicit UnsupportedDimension(int dims)
      : Error("operation requires a 3D grid, got dims = " + std::to_string(dims)), dims_(dims) {}
  int dims() const { return dims_; }

 private:
  int dims_;
};

/// E = 0 makes the effective permittivity and permeability undefined.
class SingularEnergy : public Error {
 public:
  SingularEnergy() : Error("effective medium undefined at E = 0") {}
};

/// n^2 < 0: classically forbidden region, no propagating momentum.
class EvanescentRegime : public Error {
 public:
  explicit EvanescentRegime(double n_squared)
      : Error("evanescent regime, n^2 = " + std::to_string(n_squared)), n_squared_(n_squared) {}
  double n_squared() const { return n_squared_; }

 private:
  double n_squared_;
};

class NonInvertibleMedium : public Error {
 public:
  NonInvertibleMedium(double epsilon, double mu)
      : Error("medium requires eps > 0 and mu > 0, got eps = " + std::to_string(epsilon) +
              ", mu = " + std::to_string(mu)),
        epsilon_(epsilon),
        mu_(mu) {}
  double epsilon() const { return epsilon_; }
  double mu() const { return mu_; }

 private:
  double epsilon_;
  double mu_;
};

class MalformedMatrix : public Error {
 public:
  using Error::Error;
};

class CannotNormalize : public Error {
 public:
  using Error::Error;
};

class UndefinedPolarization : public Error {
 public:
  UndefinedPolarization() : Error("transverse polarization undefined at k = 0") {}
};

}  // namespace rqm
