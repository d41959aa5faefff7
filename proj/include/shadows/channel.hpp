// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef SHADOWS_CHANNEL_HPP_
#define SHADOWS_CHANNEL_HPP_

#include <string>
#include <vector>

#include "shadows/shadow.hpp"

namespace shadows {

/// One round of the channel protocol: prepare |b_in>, rotate into the input
/// frame, apply the unknown channel, rotate by the output draw, measure.
///
/// Convention: draw_in records the unitary U_i of the input-leg snapshot
/// sigma_i = U_i^T |b_in><b_in| U_i^*; the collector prepares U_i^dag |b_in>,
/// which makes sigma_i exactly the transpose of the prepared state and the
/// identity P(b_out | b_in, U_i, U_o) = 2^n Tr(sigma_io J(T)) hold per draw.
struct ChannelSnapshot {
  std::uint32_t b_in = 0;
  UnitaryDraw draw_in;
  UnitaryDraw draw_out;
  std::uint32_t b_out = 0;
};

struct ChannelSnapshotSet {
  EnsembleSpec spec_in;
  EnsembleSpec spec_out;
  std::uint64_t seed = 0;
  std::string channel_tag;
  std::vector<ChannelSnapshot> snapshots;
};

struct ChannelWTable {
  WTable w_in;
  WTable w_out;
};

struct ChannelReconstruction {
  ReconstructionMap in_map;
  ReconstructionMap out_map;
};

/// Estimated Pauli-channel eigenvalues lambda_b with T[P_b] = lambda_b P_b.
struct PauliChannelSpectrum {
  int n = 1;
  RealFunctionOnVn lambdas;
  std::vector<double> stderrs;
};

ChannelSnapshotSet collect_channel_snapshots(const QuantumChannel& channel, const EnsembleSpec& spec_in,
                                             const EnsembleSpec& spec_out, std::uint64_t shots,
                                             std::uint64_t seed, const std::string& channel_tag = "",
                                             int threads = 1, int dense_limit = kDefaultDenseLimit);

/// sigma_io = sigma_i (x) sigma_o on 2n qubits, input leg on the low qubits.
DensityMatrix realize_channel_snapshot(const ChannelSnapshot& cs, int dense_limit = kDefaultDenseLimit);

/// Direct simulation of P(b_out | b_in, U_i, U_o) under the channel.
double channel_outcome_probability(const QuantumChannel& channel, const ChannelSnapshot& cs,
                                   int dense_limit = kDefaultDenseLimit);

/// Product reconstruction M^{-1}_{i,o} = M_i^{-1} (x) M_o^{-1}; the pair
/// coefficient for (a_i, a_o) is in_map[a_i] * out_map[a_o].
ChannelReconstruction channel_reconstruction(const ChannelWTable& cw, double floor = 1e-12);

/// Estimates Tr(T[rho] O). The identity component of O contributes its exact
/// value o_0 Tr(rho) (the channel is trace preserving), so O = I reports
/// value 1 with zero spread.
EstimateReport estimate_channel_observable(const ChannelSnapshotSet& set, const ChannelWTable& cw,
                                           const DensityMatrix& rho, const PauliObservable& obs,
                                           const Strategy& strategy = Strategy::mean(),
                                           double floor = 1e-12, int dense_limit = kDefaultDenseLimit);

/// Per-label estimates of lambda_b from the observable P_b^T (x) P_b (the
/// transpose sign keeps the target equal to the factor-free eigenvalue with
/// lambda_0 = 1). Labels outside `labels` are left at zero with zero stderr.
PauliChannelSpectrum estimate_pauli_eigenvalues(const ChannelSnapshotSet& set, const ChannelWTable& cw,
                                                const std::vector<PauliLabel>& labels,
                                                const Strategy& strategy = Strategy::mean(),
                                                double floor = 1e-12,
                                                int dense_limit = kDefaultDenseLimit);

/// Closed-form squared norm ||rho^T (x) P_a||^2 =
/// W_out[a]^{-1} (1/2^{2n}) sum_{a_i} W_in[a_i]^{-1} W_rho[a_i].
double channel_shadow_norm(const ChannelWTable& cw, const DensityMatrix& rho, const PauliLabel& a,
                           double floor = 1e-12);

/// Monte-Carlo mean of Tr(M^{-1}[rho^T (x) P_a] sigma_io)^2 under the
/// protocol; the sampled counterpart of channel_shadow_norm.
EstimateReport empirical_channel_norm(const QuantumChannel& channel, const EnsembleSpec& spec_in,
                                      const EnsembleSpec& spec_out, const ChannelWTable& cw,
                                      const DensityMatrix& rho, const PauliLabel& a,
                                      std::uint64_t samples, std::uint64_t seed, double floor = 1e-12,
                                      int threads = 1, int dense_limit = kDefaultDenseLimit);

/// ceil(ln(2^n/delta)/eps^2 * max_b W_out[b]^{-1} W_in[b]^{-1}); with
/// exclude_identity the max is taken over b != 0.
std::uint64_t pauli_channel_sample_bound(const ChannelWTable& cw, double eps, double delta,
                                         bool exclude_identity = false, double floor = 1e-12);

/// Exact expectation sum P(b_in, U_i, U_o, b_out) M^{-1}[sigma_io] over the
/// full enumeration of both ensembles; equals J(T) when the tables match.
DensityMatrix choi_reconstruction_exact(const QuantumChannel& channel, const EnsembleSpec& spec_in,
                                        const EnsembleSpec& spec_out, const ChannelWTable& cw,
                                        double floor = 1e-12, int dense_limit = kDefaultDenseLimit);

}  // namespace shadows

#endif  // SHADOWS_CHANNEL_HPP_
