#pragma once

#include <string>
#include <vector>

#include "rootgas/ensembles.hpp"

namespace rootgas {

/// 1 / ((n+1) binom(n, k)): squared norm of X^k for the degree-n weighted
/// Fubini–Study inner product.
double elliptic_inner_product(int k, int n);

/// log Z_n for the complex root density exp(-n^2 H) / Z_n:
/// Z_n = pi^n |det C|^2 / n!.
double log_z_complex(const ModelSpec& spec);

/// log Z_{n,k}, k = 0..n/2, for the real mixture with respect to
/// Lebesgue measure on R^{n-2k} x (upper half-plane)^k.
struct MixtureConstants {
  int n = 0;
  std::vector<double> log_z;
  double control = 0.0;  // max_k |log Z_{n,k}| / n^2
};

MixtureConstants mixture_constants(const ModelSpec& spec);
double log_z_real(const ModelSpec& spec, int k);

struct DensityValue {
  double log_density = 0.0;      // normalized when the constant is known
  double log_unnormalized = 0.0; // -beta H (complex) or -(beta/2) H (real)
  int k = -1;                    // number of conjugate pairs, real case only
};

/// Density of the ordered complex roots; normalized at beta = n^2.
DensityValue complex_root_logdensity(const std::vector<Complex>& z, const ModelSpec& spec);

/// Layout: n - 2k real particles first, then k pairs (w, conj(w)).
/// Throws BadMixtureStructure when the layout is violated (tolerance 1e-10).
DensityValue real_mixture_logdensity(const std::vector<Complex>& z, int k, const ModelSpec& spec);

/// Rearranges roots of a real polynomial into the mixture layout by greedy
/// nearest-conjugate matching; real roots get Im = 0, pairs are made exactly
/// conjugate with the representative in the upper half-plane.
std::vector<Complex> mixture_layout(const std::vector<Complex>& roots, int& k, double tol = 1e-10);

enum class BMKind { Circle, Elliptic };

struct BernsteinMarkov {
  double sup = 0.0;    // grid sup of |P| (circle) or |P|^2 / (1+|z|^2)^N (elliptic)
  double norm = 0.0;   // ||P|| (circle) or ||P||^2 (elliptic)
  double ratio = 0.0;
  double bound = 0.0;  // sqrt(N+1) or N+1
  bool pass = false;
};

/// Grid sup on 16 (N+1) points: the unit circle, or a Fibonacci sphere
/// pulled back to the plane plus the point at infinity.
BernsteinMarkov bernstein_markov_check(const std::vector<Complex>& coefficients, BMKind kind);

}  // namespace rootgas
