#pragma once

#include <cstdint>
#include <vector>

#include "rootgas/ensembles.hpp"

// Reference computations that share no code path with the quantities they
// check.
namespace rootgas::oracle {

/// 2 ∫_0^∞ r^{2k+1} / (1+r^2)^{n+2} dr by adaptive Gauss–Kronrod.
double elliptic_moment(int k, int n);

/// sum_k |a_k|^2
double coefficient_norm2(const std::vector<Complex>& a);

/// Fraction of quadratics a0 + a1 x + a2 x^2 with a_i ~ N(0, 1/2) whose
/// discriminant is negative.
double complex_root_fraction(long draws, std::uint64_t seed);

/// (|prod z_i|, sum |z_i|) over `count` direct root samples.
struct RootStatistics {
  std::vector<double> abs_product;
  std::vector<double> abs_sum;
};
RootStatistics direct_root_statistics(const ModelSpec& spec, long count, std::uint64_t seed);
RootStatistics root_statistics(const std::vector<std::vector<Complex>>& configurations);

/// Log energy of the uniform measure on the unit circle (0) and on the
/// radius-1/2 sphere (1/2), the latter from ∫_0^1 2s log(2s) ds.
double circle_log_energy();
double sphere_log_energy();

}  // namespace rootgas::oracle
