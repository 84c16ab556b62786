#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rootgas/ensembles.hpp"
#include "rootgas/rng.hpp"

namespace rootgas {

/// Chain state. Real case layout: n - 2k exactly real particles, then k pairs
/// (w, conj(w)) with Im w > 0. Complex case: k = -1.
struct GasState {
  std::vector<Complex> particles;
  int k = -1;
  double hamiltonian = 0.0;
  std::uint64_t rng_draws = 0;
};

/// Incrementally updated log of the confinement integral.
class Confinement {
 public:
  virtual ~Confinement() = default;
  virtual void reset(const std::vector<Complex>& z) = 0;
  virtual double value() const = 0;
  /// log confinement after replacing `removed` by `added`; kept pending.
  virtual double trial(const std::vector<Complex>& removed, const std::vector<Complex>& added) = 0;
  virtual void commit() = 0;

  static std::unique_ptr<Confinement> make(const ModelSpec& spec);
};

enum class MoveKind { Particle = 0, Real = 1, Pair = 2, Birth = 3, Death = 4 };
inline constexpr int kMoveKinds = 5;
const char* to_string(MoveKind m);

/// Everything needed to audit one proposal: targets, proposal densities,
/// Jacobian and acceptance, all in log form.
struct MoveRecord {
  MoveKind kind = MoveKind::Particle;
  bool valid = false;  // false when the move type is unavailable (no-op)
  std::vector<Complex> proposed;
  int proposed_k = -1;
  double proposed_h = 0.0;
  double log_target_x = 0.0;
  double log_target_y = 0.0;
  double log_q_forward = 0.0;
  double log_q_reverse = 0.0;
  double log_jacobian = 0.0;
  double log_alpha = 0.0;
  double pair_sum = 0.0;  // sum_{i<j} log|y_i - y_j|
  // coordinates of the reverse move, for audit
  int reverse_index = -1;
  double reverse_xi = 0.0;
  std::uint64_t serial = 0;
};

/// log of the Metropolis acceptance min(1, exp(-beta * delta_h)).
double metropolis_log_acceptance(double beta, double delta_h);

struct ChainConfig {
  long steps = 100000;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  std::vector<Complex> init;  // optional starting configuration (mixture layout in the real case)
  int init_k = 0;
  long record_every = 0;      // 0: one sweep (n steps)
  long check_every = 1000;
  double target_accept = 0.3;
};

struct ChainDiagnostics {
  std::array<long, kMoveKinds> proposed{};
  std::array<long, kMoveKinds> accepted{};
  std::array<double, kMoveKinds> scale{};
  std::vector<long> k_histogram;  // real case, recorded states after burn-in
  double iat = 1.0;               // in recorded-state units
  long thin = 1;
  long burn_in = 0;
  long recorded = 0;
  long record_every = 1;          // steps between recorded states
  double max_drift = 0.0;         // |cached H - recomputed H|

  double acceptance(MoveKind m) const;
  double effective_samples() const { return static_cast<double>(recorded) / iat; }
};

struct ChainResult {
  std::vector<GasState> samples;  // thinned
  std::vector<double> h_trace;    // every recorded state after burn-in
  std::vector<int> k_trace;
  ChainDiagnostics diagnostics;
};

/// Metropolis / reversible-jump gas. One object drives one chain.
class GasChain {
 public:
  GasChain(const ModelSpec& spec, bool real_case, const std::vector<Complex>& init, int init_k, std::uint64_t seed,
           std::uint64_t stream = 0);

  const GasState& state() const { return state_; }
  const ModelSpec& spec() const { return spec_; }
  bool real_case() const { return real_; }
  double log_target() const;
  double scale(MoveKind m) const { return scale_[static_cast<int>(m)]; }
  void set_scale(MoveKind m, double s) { scale_[static_cast<int>(m)] = s; }

  // Deterministic proposals from explicit random inputs.
  MoveRecord propose_particle(int i, Complex z_new);
  MoveRecord propose_real(int i, double x_new);
  MoveRecord propose_pair(int p, Complex w_new);
  MoveRecord propose_birth(int i, int j, double xi);
  MoveRecord propose_death(int p, double eta);

  /// Draws a move type and its random inputs.
  MoveRecord propose();
  void accept(const MoveRecord& m);
  /// One Metropolis step; returns whether the proposal was accepted.
  bool step();

  /// Recomputes H from scratch, resets caches and returns the drift.
  double resync();

  Rng& rng() { return rng_; }

 private:
  MoveRecord finish(MoveRecord m, const std::vector<int>& removed_idx, const std::vector<Complex>& added);
  double target_of(int k, double h) const;
  double energy_delta(const std::vector<int>& removed_idx, const std::vector<Complex>& added) const;

  ModelSpec spec_;
  bool real_;
  GasState state_;
  double log_pair_sum_ = 0.0;  // sum_{i<j} log|z_i - z_j|
  std::unique_ptr<Confinement> conf_;
  Rng rng_;
  std::array<double, kMoveKinds> scale_{};
  std::vector<double> log_mix_weight_;  // log(r! k! / Z_{n,k})
  std::uint64_t serial_ = 0;
};

inline constexpr double kDimensionMoveProb = 0.2;  // split evenly between birth and death

/// Complex Gibbs gas exp(-beta H); burn-in steps/5, thinning by the
/// integrated autocorrelation of H.
ChainResult mcmc_complex(const ModelSpec& spec, const ChainConfig& cfg);
/// Real mixture gas sum_k exp(-(beta/2) H) / Z_{n,k} over l_{n,k}.
ChainResult mcmc_real_mixture(const ModelSpec& spec, const ChainConfig& cfg);

}  // namespace rootgas
