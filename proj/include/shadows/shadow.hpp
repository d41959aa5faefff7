// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef SHADOWS_SHADOW_HPP_
#define SHADOWS_SHADOW_HPP_

#include <optional>
#include <string>
#include <vector>

#include "shadows/ensemble.hpp"
#include "shadows/observable.hpp"

namespace shadows {

/// One protocol round: the drawn unitary and the measured bitstring. The
/// snapshot state sigma = U^dag |b><b| U is realized on demand, never stored.
struct Snapshot {
  UnitaryDraw draw;
  std::uint32_t outcome = 0;
};

struct SnapshotSet {
  EnsembleSpec spec;
  std::uint64_t seed = 0;
  std::string noise_tag;  // empty = noiseless collection
  std::vector<Snapshot> snapshots;
};

enum class WProvenance { Exact, MonteCarlo, Analytic };

/// Shadow-channel coefficients W[a] = E_b E_U |Tr(sigma P_a)|^2 with E_b the
/// uniform average over outcomes, so the table never depends on a state.
/// W[0] = 1 always; noiseless tables stay in [0, 1]. Noisy two-factor
/// variants may leave that interval and are only constrained at the
/// identity label.
struct WTable {
  int n = 1;
  RealFunctionOnVn values;
  std::vector<double> stderrs;  // per-entry standard errors (Monte Carlo only)
  WProvenance provenance = WProvenance::Exact;
  std::uint64_t samples = 0;
  std::string note;

  bool has_stderr() const { return !stderrs.empty(); }
  /// Checks W[0] == 1 and, for `bounded` tables, entries in [0, 1].
  void validate(bool bounded, double tol = 1e-8) const;
};

/// Diagonal reconstruction map: P_a -> inverse_coeffs[a] P_a.
struct ReconstructionMap {
  int n = 1;
  RealFunctionOnVn inverse_coeffs;
};

struct Strategy {
  enum Kind { Mean, MedianOfMeans } kind = Mean;
  int batches = 0;  // MedianOfMeans only

  static Strategy mean() { return Strategy{Mean, 0}; }
  static Strategy median_of_means(int k) { return Strategy{MedianOfMeans, k}; }
  std::string name() const;
};

struct EstimateReport {
  double value = 0.0;
  double stderr_value = 0.0;
  std::uint64_t shots_used = 0;
  std::string strategy;
};

/// Runs `shots` rounds of the protocol on rho: U ~ P(U), then a computational
/// basis measurement of (noise applied to) U rho U^dag. One RNG substream per
/// shot; the result is byte-identical for a fixed seed at any thread count.
SnapshotSet collect_snapshots(const DensityMatrix& rho, const EnsembleSpec& spec, std::uint64_t shots,
                              std::uint64_t seed, const std::optional<QuantumChannel>& noise = {},
                              const std::string& noise_tag = "", int threads = 1);

/// sigma = U^dag |b><b| U as a dense rank-1 projector.
DensityMatrix realize_snapshot(const Snapshot& s, int dense_limit = kDefaultDenseLimit);
/// The snapshot ket U^dag |b>.
CVec snapshot_ket(const Snapshot& s, int dense_limit = kDefaultDenseLimit);

/// Exact W over all (U, b) pairs of an enumerable ensemble.
WTable compute_W_exact(const EnsembleSpec& spec, int dense_limit = kDefaultDenseLimit);

enum class BMode { ExactAverage, Sampled };

/// Monte-Carlo W with per-entry standard errors. ExactAverage sums all 2^n
/// outcomes per sampled unitary; Sampled draws one uniform outcome instead.
WTable estimate_W_monte_carlo(const EnsembleSpec& spec, std::uint64_t unitary_samples, std::uint64_t seed,
                              BMode b_mode = BMode::ExactAverage, int threads = 1,
                              int dense_limit = kDefaultDenseLimit);

/// Noisy-shadow coefficients W[a] = E_b E_U Tr(sigma P_a) Tr(U^dag Lambda^dag[|b><b|] U P_a).
WTable compute_W_noisy(const EnsembleSpec& spec, const QuantumChannel& noise,
                       int dense_limit = kDefaultDenseLimit);

/// Norm-side coefficients W^u[a] = E_U E_b |Tr(P_a sigma)|^2 Tr(|b><b| Lambda[I]);
/// equals compute_W_exact when Lambda is unital.
WTable compute_W_u(const EnsembleSpec& spec, const QuantumChannel& noise,
                   int dense_limit = kDefaultDenseLimit);

/// Closed-form reference tables.
WTable analytic_w_pauli_group(int n);     // 1 on Z-type labels, 0 elsewhere
WTable analytic_w_local_clifford(int n);  // 3^{-|supp(a)|}
WTable analytic_w_global_clifford(int n); // 1/(2^n + 1) off the identity

/// Inverts the diagonal shadow channel. For Monte-Carlo tables the floor is
/// raised to max(floor, 3 * stderr[a]) per entry, so statistically-zero
/// coefficients fail loudly instead of producing huge variance.
ReconstructionMap invert_W(const WTable& w, double floor = 1e-12);

/// Single-snapshot estimator o = Tr(O M^{-1}[sigma]).
double snapshot_estimate(const Snapshot& s, const ReconstructionMap& recon, const PauliObservable& obs,
                         int dense_limit = kDefaultDenseLimit);

EstimateReport estimate_observable(const SnapshotSet& set, const ReconstructionMap& recon,
                                   const PauliObservable& obs, const Strategy& strategy = Strategy::mean(),
                                   int dense_limit = kDefaultDenseLimit);

/// Pauli coefficients Tr((1/m) sum_i M^{-1}[sigma_i] P_a) of the averaged
/// shadow; entry a matches estimate_observable with O = P_a bit for bit.
RealFunctionOnVn average_shadow_coefficients(const SnapshotSet& set, const ReconstructionMap& recon,
                                             int dense_limit = kDefaultDenseLimit);

/// (1/m) sum_i M^{-1}[sigma_i]; Hermitian with trace exactly 1.
DensityMatrix average_shadow_estimate(const SnapshotSet& set, const ReconstructionMap& recon,
                                      int dense_limit = kDefaultDenseLimit);

/// Full-enumeration reconstruction sum_{U,b} P(U) P(b|U) M^{-1}[sigma_{U,b}]
/// (with P_Lambda(b|U) when noise is given); equals rho when the table
/// matches the protocol. No sampling is involved.
DensityMatrix enumerate_reconstruction(const EnsembleSpec& spec, const DensityMatrix& rho,
                                       const ReconstructionMap& recon,
                                       const std::optional<QuantumChannel>& noise = {},
                                       int dense_limit = kDefaultDenseLimit);

}  // namespace shadows

#endif  // SHADOWS_SHADOW_HPP_
