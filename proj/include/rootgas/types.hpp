#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace rootgas {

using Complex = std::complex<double>;

// One point per row. Plane points are stored as (re, im, 0).
using Points = Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>;
using Point3 = Eigen::Vector3d;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846264338327950288;

enum class Space { Plane, Sphere };

inline const char* to_string(Space s) { return s == Space::Plane ? "plane" : "sphere"; }

// Error hierarchy. Precondition violations use std::invalid_argument.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NorthPoleError : public Error {
 public:
  NorthPoleError() : Error("north pole has no finite preimage") {}
};

class DegenerateLeading : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class SingularGram : public Error {
 public:
  using Error::Error;
};

class SpaceMismatch : public Error {
 public:
  SpaceMismatch() : Error("measures live in different spaces") {}
  explicit SpaceMismatch(const std::string& what) : Error(what) {}
};

class AsymmetricSupport : public Error {
 public:
  using Error::Error;
};

class BadMixtureStructure : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace rootgas
