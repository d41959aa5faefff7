// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef SHADOWS_ANALYSIS_HPP_
#define SHADOWS_ANALYSIS_HPP_

#include <cstdint>
#include <vector>

#include "shadows/shadow.hpp"

namespace shadows {

/// E[A] = E_U E_b Tr(sigma_A^2), the ensemble-averaged Renyi-2 purity of the
/// snapshot states on subset A (uniform average over outcomes). Indexed by
/// subset bit mask; E[0] = 1.
struct EntanglementFeatureTable {
  int n = 1;
  std::vector<double> values;  // size 2^n
};

/// Support-resolved coefficients: w_sum[S] = sum over labels with support
/// exactly S; w_bar[S] = w_sum[S] / 3^{|S|}, the mean over those labels.
struct SupportWTable {
  int n = 1;
  std::vector<double> w_sum;  // size 2^n
  std::vector<double> w_bar;
};

/// Coefficients of the erasure representation M^{-1} = sum_S r_S D^S with
/// D the single-qubit erasure channel sigma -> Tr(sigma) I/2.
struct RCoefficients {
  int n = 1;
  std::vector<double> values;  // size 2^n, indexed by erased-subset mask
};

struct FlatnessReport {
  bool pass = false;
  double max_spread = 0.0;
};

enum class AveragingMode { Exact, MonteCarlo };

/// ||P_a||^2 = 1/W[a].
double shadow_norm_pauli(const WTable& w, const PauliLabel& a, double floor = 1e-12);

/// Monte-Carlo estimate of the squared shadow norm E o^2 under the protocol
/// distribution P(U, b) for the given input state (optionally with
/// pre-measurement noise; pass the matching noisy reconstruction).
EstimateReport empirical_shadow_norm(const EnsembleSpec& spec, const ReconstructionMap& recon,
                                     const PauliObservable& obs, const DensityMatrix& rho,
                                     std::uint64_t samples, std::uint64_t seed,
                                     const std::optional<QuantumChannel>& noise = {}, int threads = 1,
                                     int dense_limit = kDefaultDenseLimit);

/// Pauli-group averaged norm 4^{-n} sum_a W[a]^{-1} W_O[a]. Terms with
/// W_O[a] = 0 are skipped; a zero W under a live W_O throws NonInvertible.
double average_shadow_norm(const WTable& w, const PauliObservable& obs, double floor = 1e-12);

/// ceil(ln(N/delta) / eps^2 * max_sq_norm), constant-1 convention. The
/// traceless projection of each observable is the caller's responsibility.
std::uint64_t sample_complexity_bound(double max_sq_norm, std::uint64_t n_observables, double eps,
                                      double delta);

EntanglementFeatureTable entanglement_features(const EnsembleSpec& spec, AveragingMode mode,
                                               std::uint64_t samples = 0, std::uint64_t seed = 1,
                                               int dense_limit = kDefaultDenseLimit);

SupportWTable w_support_sums(const WTable& w);

/// W[S] = (-1)^{|S|} sum_{A subset S} (-2)^{|A|} E[A], indexed by mask.
std::vector<double> w_from_entanglement_features(const EntanglementFeatureTable& ef);

/// Locally-scrambled diagnostic: max over supports S of the spread of
/// {W[a] : supp(a) = S}; passes iff <= tol.
FlatnessReport flatness_check(const WTable& w, double tol);

/// r_S = sum_{A subset S} (-1)^{|S|-|A|} w_bar[A^c]^{-1}.
RCoefficients r_coefficients(const SupportWTable& sw, double floor = 1e-12);

/// r_S = (-1)^{n+|S|} sum_{A subset S} 3^{|A^c|} [sum_{B subset A^c} (-2)^{|B|} E[B]]^{-1}.
RCoefficients r_from_entanglement_features(const EntanglementFeatureTable& ef, double floor = 1e-12);

/// sum_S r_S D^S[sigma].
DensityMatrix apply_rs_map(const RCoefficients& rc, const DensityMatrix& sigma,
                           int dense_limit = kDefaultDenseLimit);

/// Locally-scrambled average norm 4^{-n} sum_S w_bar[S]^{-1} W_O[S].
double avg_shadow_norm_locally_scrambled(const SupportWTable& sw, const PauliObservable& obs,
                                         double floor = 1e-12);

/// ||P_a||^2 under noise: W_noisy[a]^{-2} W_u[a].
double noisy_shadow_norm_pauli(const WTable& w_noisy, const WTable& w_u, const PauliLabel& a,
                               double floor = 1e-12);

/// 4^{-n} sum_a W_noisy[a]^{-2} W_u[a] W_O[a].
double noisy_average_shadow_norm(const WTable& w_noisy, const WTable& w_u, const PauliObservable& obs,
                                 double floor = 1e-12);

}  // namespace shadows

#endif  // SHADOWS_ANALYSIS_HPP_
