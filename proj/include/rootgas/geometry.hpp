#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Core>

#include "rootgas/types.hpp"

// Inverse stereographic projection onto the sphere of center (0,0,1/2) and
// radius 1/2, and the metric identities it satisfies.
namespace rootgas {

template <class Scalar>
using SphereVec = Eigen::Matrix<Scalar, 3, 1>;

template <class Scalar>
SphereVec<Scalar> north_pole() {
  return SphereVec<Scalar>(Scalar(0), Scalar(0), Scalar(1));
}

/// (Re z, Im z, |z|^2) / (1 + |z|^2), with the large-|z| branch rescaled so
/// nothing overflows.
template <class Scalar>
SphereVec<Scalar> project(const std::complex<Scalar>& z) {
  using std::abs;
  const Scalar r = abs(z);
  if (r <= Scalar(1)) {
    const Scalar d = Scalar(1) / (Scalar(1) + r * r);
    return SphereVec<Scalar>(z.real() * d, z.imag() * d, r * r * d);
  }
  const Scalar u = Scalar(1) / r;
  const Scalar q = Scalar(1) / (Scalar(1) + u * u);  // |z|^2 / (1+|z|^2)
  const Scalar s = u * q;                            // |z| / (1+|z|^2)
  return SphereVec<Scalar>(z.real() * u * s, z.imag() * u * s, q);
}

/// 1 - |x|^2 for a point on the sphere. Equals 1 - x3 there; near the north
/// pole it is recovered from the horizontal part, which keeps full relative
/// accuracy.
template <class Scalar>
Scalar sphere_complement(const SphereVec<Scalar>& x) {
  const Scalar h = x(0) * x(0) + x(1) * x(1);
  if (x(2) > Scalar(0.5)) return h / x(2);
  return Scalar(1) - x(2);
}

template <class Scalar>
std::complex<Scalar> unproject(const SphereVec<Scalar>& x) {
  if (x(0) == Scalar(0) && x(1) == Scalar(0) && x(2) == Scalar(1)) throw NorthPoleError();
  if (x(2) > Scalar(0.5)) {
    const Scalar h = x(0) * x(0) + x(1) * x(1);
    const Scalar f = x(2) / h;
    return {x(0) * f, x(1) * f};
  }
  const Scalar f = Scalar(1) / (Scalar(1) - x(2));
  return {x(0) * f, x(1) * f};
}

/// |x - y|^2 for two sphere points; the vertical gap uses the complements so
/// points near the north pole keep their relative separation.
template <class Scalar>
Scalar sphere_dist2(const SphereVec<Scalar>& x, const SphereVec<Scalar>& y) {
  const Scalar d1 = x(0) - y(0);
  const Scalar d2 = x(1) - y(1);
  Scalar d3;
  if (x(2) > Scalar(0.5) && y(2) > Scalar(0.5))
    d3 = sphere_complement(y) - sphere_complement(x);
  else
    d3 = x(2) - y(2);
  return d1 * d1 + d2 * d2 + d3 * d3;
}

/// Chordal distance |T(z) - T(w)| computed directly in the plane.
template <class Scalar>
Scalar chordal_distance(const std::complex<Scalar>& z, const std::complex<Scalar>& w) {
  using std::abs;
  using std::sqrt;
  return abs(z - w) / (sqrt(Scalar(1) + std::norm(z)) * sqrt(Scalar(1) + std::norm(w)));
}

/// |LHS - RHS| of |z-w|^2 = |Tz-Tw|^2 / ((1-|Tz|^2)(1-|Tw|^2)).
template <class Scalar>
Scalar chordal_identity_residual(const std::complex<Scalar>& z, const std::complex<Scalar>& w) {
  const auto x = project(z);
  const auto y = project(w);
  const Scalar lhs = std::norm(z - w);
  const Scalar rhs = sphere_dist2(x, y) / (sphere_complement(x) * sphere_complement(y));
  using std::abs;
  return abs(lhs - rhs);
}

/// |(1 - |Tz|^2) - 1/(1+|z|^2)|
template <class Scalar>
Scalar norm_identity_residual(const std::complex<Scalar>& z) {
  const auto x = project(z);
  using std::abs;
  return abs(sphere_complement(x) - Scalar(1) / (Scalar(1) + std::norm(z)));
}

/// Distance of x from the sphere surface, as |x - c|^2 - 1/4.
template <class Scalar>
Scalar sphere_defect(const SphereVec<Scalar>& x) {
  const Scalar dz = x(2) - Scalar(0.5);
  using std::abs;
  return abs(x(0) * x(0) + x(1) * x(1) + dz * dz - Scalar(0.25));
}

/// Image of conj(z): reflection across the x2 = 0 plane.
template <class Scalar>
SphereVec<Scalar> mirror(const SphereVec<Scalar>& x) {
  return SphereVec<Scalar>(x(0), -x(1), x(2));
}

inline bool is_north_pole(const Point3& x) { return x(0) == 0.0 && x(1) == 0.0 && x(2) == 1.0; }

/// log(1 + |z|^2) without overflow for huge |z|.
inline double log1p_norm(Complex z) {
  const double r = std::abs(z);
  if (r > 1e150) return 2.0 * std::log(r);
  return std::log1p(r * r);
}

}  // namespace rootgas
