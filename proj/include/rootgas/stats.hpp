#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rootgas {

struct KSResult {
  double statistic = 0.0;
  double p_value = 1.0;
  bool permutation = false;
};

/// Two-sample Kolmogorov–Smirnov. Asymptotic p-value with the usual
/// small-sample correction; a seeded permutation test when the effective
/// sample size is below 10.
KSResult ks_two_sample(std::vector<double> a, std::vector<double> b, std::uint64_t seed = 7);

struct TwoSampleEntry {
  std::string name;
  KSResult ks;
};

/// One KS test per named statistic; a[i] and b[i] are the samples of
/// statistic i.
std::vector<TwoSampleEntry> two_sample_validate(const std::vector<std::vector<double>>& a,
                                                const std::vector<std::vector<double>>& b,
                                                const std::vector<std::string>& names);

/// Integrated autocorrelation time tau = 1 + 2 sum rho_k, Sokal's adaptive
/// window (smallest W with W >= c tau).
double integrated_autocorrelation(const std::vector<double>& x, double c = 5.0);

/// Potential scale reduction over equal-length chains.
double gelman_rubin(const std::vector<std::vector<double>>& chains);

double median(std::vector<double> x);
double mean(const std::vector<double>& x);

}  // namespace rootgas
