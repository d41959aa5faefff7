// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "shadows/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shadows/parallel.hpp"

namespace shadows {

namespace {

// Input-leg snapshot ket: sigma_i = U^T |b><b| U^* = |phi><phi| with
// phi = U^T |b>, i.e. the (unconjugated) row b of U.
CVec input_snapshot_ket(const Mat& u, std::uint32_t b) {
  CVec phi(u.dim);
  for (std::size_t j = 0; j < u.dim; ++j) phi[j] = u(b, j);
  return phi;
}

CVec output_snapshot_ket(const Mat& u, std::uint32_t b) {
  CVec phi(u.dim);
  for (std::size_t j = 0; j < u.dim; ++j) phi[j] = std::conj(u(b, j));
  return phi;
}

// The state the collector prepares: U^dag |b_in> = conj(input snapshot ket).
CVec prepared_ket(const Mat& u, std::uint32_t b) {
  CVec psi(u.dim);
  for (std::size_t j = 0; j < u.dim; ++j) psi[j] = std::conj(u(b, j));
  return psi;
}

std::vector<PauliLabel> all_labels(int n) {
  std::vector<PauliLabel> labels;
  labels.reserve(std::size_t(1) << (2 * n));
  for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << (2 * n)); ++idx)
    labels.push_back(PauliLabel::from_index(n, idx));
  return labels;
}

EstimateReport aggregate_values(const std::vector<double>& values, const Strategy& strategy) {
  // Shares semantics with estimate_observable's aggregation.
  const std::size_t m = values.size();
  EstimateReport rep;
  rep.shots_used = m;
  rep.strategy = strategy.name();
  if (strategy.kind == Strategy::Mean) {
    double sum = 0.0;
    for (double v : values) sum += v;
    rep.value = sum / static_cast<double>(m);
    double ss = 0.0;
    for (double v : values) ss += (v - rep.value) * (v - rep.value);
    rep.stderr_value = m > 1 ? std::sqrt(ss / (static_cast<double>(m) * (static_cast<double>(m) - 1.0))) : 0.0;
    return rep;
  }
  const int k = strategy.batches;
  if (k < 1 || static_cast<std::uint64_t>(k) > m)
    throw std::invalid_argument("median_of_means: batch count must be in [1, shots]");
  std::vector<double> means;
  means.reserve(static_cast<std::size_t>(k));
  const std::size_t base = m / static_cast<std::size_t>(k);
  const std::size_t rem = m % static_cast<std::size_t>(k);
  std::size_t pos = 0;
  for (int i = 0; i < k; ++i) {
    const std::size_t len = base + (static_cast<std::size_t>(i) < rem ? 1 : 0);
    double sum = 0.0;
    for (std::size_t j = 0; j < len; ++j) sum += values[pos + j];
    means.push_back(sum / static_cast<double>(len));
    pos += len;
  }
  std::vector<double> sorted = means;
  std::sort(sorted.begin(), sorted.end());
  rep.value = (k % 2 == 1)
                  ? sorted[static_cast<std::size_t>(k / 2)]
                  : 0.5 * (sorted[static_cast<std::size_t>(k / 2 - 1)] + sorted[static_cast<std::size_t>(k / 2)]);
  double mean = 0.0;
  for (double v : means) mean += v;
  mean /= static_cast<double>(k);
  double ss = 0.0;
  for (double v : means) ss += (v - mean) * (v - mean);
  rep.stderr_value = k > 1 ? std::sqrt(ss / (static_cast<double>(k) * (static_cast<double>(k) - 1.0))) : 0.0;
  return rep;
}

}  // namespace

ChannelSnapshotSet collect_channel_snapshots(const QuantumChannel& channel, const EnsembleSpec& spec_in,
                                             const EnsembleSpec& spec_out, std::uint64_t shots,
                                             std::uint64_t seed, const std::string& channel_tag,
                                             int threads, int dense_limit) {
  if (spec_in.n != spec_out.n || channel.n != spec_in.n)
    throw std::invalid_argument("collect_channel_snapshots: size mismatch");
  if (shots < 1) throw std::invalid_argument("collect_channel_snapshots: shots must be >= 1");
  const int n = spec_in.n;
  const std::size_t dim = std::size_t(1) << n;
  ChannelSnapshotSet set;
  set.spec_in = spec_in;
  set.spec_out = spec_out;
  set.seed = seed;
  set.channel_tag = channel_tag;
  set.snapshots.resize(shots);
  parallel_shots(shots, threads, [&](std::uint64_t k) {
    Rng rng = Rng::substream(seed, k);
    ChannelSnapshot cs;
    cs.b_in = static_cast<std::uint32_t>(rng.below(dim));
    cs.draw_in = sample(spec_in, rng);
    cs.draw_out = sample(spec_out, rng);
    const Mat ui = realize(cs.draw_in, dense_limit).m;
    const Mat uo = realize(cs.draw_out, dense_limit).m;
    const Mat input = outer(prepared_ket(ui, cs.b_in));
    const Mat evolved = mul(uo, mul(apply_channel_mat(input, channel, false), dagger(uo)));
    std::vector<double> probs(dim);
    for (std::size_t b = 0; b < dim; ++b) probs[b] = std::max(0.0, evolved(b, b).real());
    const double r = rng.uniform();
    double acc = 0.0;
    std::uint32_t outcome = static_cast<std::uint32_t>(dim - 1);
    for (std::size_t b = 0; b < dim; ++b) {
      acc += probs[b];
      if (r < acc) {
        outcome = static_cast<std::uint32_t>(b);
        break;
      }
    }
    cs.b_out = outcome;
    set.snapshots[k] = std::move(cs);
  });
  return set;
}

DensityMatrix realize_channel_snapshot(const ChannelSnapshot& cs, int dense_limit) {
  const int n = cs.draw_in.n;
  if (2 * n > dense_limit) throw DenseLimitError("realize_channel_snapshot: 2n exceeds dense limit");
  const Mat ui = realize(cs.draw_in, dense_limit).m;
  const Mat uo = realize(cs.draw_out, dense_limit).m;
  const Mat sigma_i = outer(input_snapshot_ket(ui, cs.b_in));
  const Mat sigma_o = outer(output_snapshot_ket(uo, cs.b_out));
  DensityMatrix out;
  out.n = 2 * n;
  out.m = kron(sigma_o, sigma_i);  // input leg on the low qubits
  return out;
}

double channel_outcome_probability(const QuantumChannel& channel, const ChannelSnapshot& cs,
                                   int dense_limit) {
  const Mat ui = realize(cs.draw_in, dense_limit).m;
  const Mat uo = realize(cs.draw_out, dense_limit).m;
  const Mat input = outer(prepared_ket(ui, cs.b_in));
  const Mat evolved = mul(uo, mul(apply_channel_mat(input, channel, false), dagger(uo)));
  return evolved(cs.b_out, cs.b_out).real();
}

ChannelReconstruction channel_reconstruction(const ChannelWTable& cw, double floor) {
  ChannelReconstruction rec;
  rec.in_map = invert_W(cw.w_in, floor);
  rec.out_map = invert_W(cw.w_out, floor);
  return rec;
}

EstimateReport estimate_channel_observable(const ChannelSnapshotSet& set, const ChannelWTable& cw,
                                           const DensityMatrix& rho, const PauliObservable& obs,
                                           const Strategy& strategy, double floor, int dense_limit) {
  if (set.snapshots.empty()) throw std::invalid_argument("estimate_channel_observable: empty snapshot set");
  const int n = set.spec_in.n;
  if (rho.n != n || obs.n != n || cw.w_in.n != n || cw.w_out.n != n)
    throw std::invalid_argument("estimate_channel_observable: size mismatch");
  const ChannelReconstruction rec = channel_reconstruction(cw, floor);
  const double dim = static_cast<double>(std::size_t(1) << n);

  // rho^T expansion coefficients: Tr(rho^T P_a)/2^n = (-1)^{#Y(a)} Tr(rho P_a)/2^n.
  const auto labels = all_labels(n);
  std::vector<std::pair<PauliLabel, double>> rho_terms;
  for (const auto& a : labels) {
    double c = pauli_expectation(rho, a) / dim;
    if (a.y_count() & 1) c = -c;
    if (c != 0.0) rho_terms.emplace_back(a, c * rec.in_map.inverse_coeffs[a.index()]);
  }
  // Identity component of O is reproduced exactly through trace preservation.
  const double exact_part = obs.identity_coefficient() * pauli_expectation(rho, PauliLabel::identity(n));
  std::vector<std::pair<PauliLabel, double>> out_terms;
  for (const auto& [a, coeff] : obs.terms)
    if (!a.is_identity()) out_terms.emplace_back(a, coeff * rec.out_map.inverse_coeffs[a.index()]);

  std::vector<double> values;
  values.reserve(set.snapshots.size());
  for (const auto& cs : set.snapshots) {
    if (out_terms.empty()) {
      values.push_back(exact_part);
      continue;
    }
    const Mat ui = realize(cs.draw_in, dense_limit).m;
    const Mat uo = realize(cs.draw_out, dense_limit).m;
    const CVec phi_i = input_snapshot_ket(ui, cs.b_in);
    const CVec phi_o = output_snapshot_ket(uo, cs.b_out);
    double s_in = 0.0;
    for (const auto& [a, c] : rho_terms)
      s_in += c * (a.is_identity() ? 1.0 : pauli_ket_expectation(a, phi_i).real());
    double s_out = 0.0;
    for (const auto& [a, c] : out_terms) s_out += c * pauli_ket_expectation(a, phi_o).real();
    values.push_back(exact_part + dim * s_in * s_out);
  }
  return aggregate_values(values, strategy);
}

PauliChannelSpectrum estimate_pauli_eigenvalues(const ChannelSnapshotSet& set, const ChannelWTable& cw,
                                                const std::vector<PauliLabel>& labels,
                                                const Strategy& strategy, double floor,
                                                int dense_limit) {
  if (set.snapshots.empty()) throw std::invalid_argument("estimate_pauli_eigenvalues: empty snapshot set");
  const int n = set.spec_in.n;
  const ChannelReconstruction rec = channel_reconstruction(cw, floor);
  PauliChannelSpectrum spec;
  spec.n = n;
  spec.lambdas = RealFunctionOnVn(n, 0.0);
  spec.stderrs.assign(spec.lambdas.size(), 0.0);

  std::vector<CVec> kets_in, kets_out;
  kets_in.reserve(set.snapshots.size());
  kets_out.reserve(set.snapshots.size());
  for (const auto& cs : set.snapshots) {
    kets_in.push_back(input_snapshot_ket(realize(cs.draw_in, dense_limit).m, cs.b_in));
    kets_out.push_back(output_snapshot_ket(realize(cs.draw_out, dense_limit).m, cs.b_out));
  }

  std::vector<double> values(set.snapshots.size());
  for (const auto& b : labels) {
    if (b.n != n) throw std::invalid_argument("estimate_pauli_eigenvalues: label size mismatch");
    const double inv = rec.in_map.inverse_coeffs[b.index()] * rec.out_map.inverse_coeffs[b.index()];
    const double sign = (b.y_count() & 1) ? -1.0 : 1.0;  // observable P_b^T (x) P_b
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (b.is_identity()) {
        values[k] = 1.0;
        continue;
      }
      const double ti = pauli_ket_expectation(b, kets_in[k]).real();
      const double to = pauli_ket_expectation(b, kets_out[k]).real();
      values[k] = sign * inv * ti * to;
    }
    const EstimateReport rep = aggregate_values(values, strategy);
    spec.lambdas[b.index()] = rep.value;
    spec.stderrs[b.index()] = rep.stderr_value;
  }
  return spec;
}

double channel_shadow_norm(const ChannelWTable& cw, const DensityMatrix& rho, const PauliLabel& a,
                           double floor) {
  const int n = cw.w_in.n;
  if (rho.n != n || a.n != n) throw std::invalid_argument("channel_shadow_norm: size mismatch");
  const double w_out = cw.w_out.values.at_label(a);
  if (w_out <= floor)
    throw NonInvertibleError("channel_shadow_norm: output coefficient at floor", n, {a.index()});
  double acc = 0.0;
  for (std::uint64_t idx = 0; idx < cw.w_in.values.size(); ++idx) {
    const PauliLabel ai = PauliLabel::from_index(n, idx);
    const double t = pauli_expectation(rho, ai);
    const double w_rho = t * t;
    if (w_rho == 0.0) continue;
    if (cw.w_in.values[idx] <= floor)
      throw NonInvertibleError("channel_shadow_norm: input coefficient at floor", n, {idx});
    acc += w_rho / cw.w_in.values[idx];
  }
  const double dim2 = static_cast<double>(std::size_t(1) << (2 * n));
  return acc / (dim2 * w_out);
}

EstimateReport empirical_channel_norm(const QuantumChannel& channel, const EnsembleSpec& spec_in,
                                      const EnsembleSpec& spec_out, const ChannelWTable& cw,
                                      const DensityMatrix& rho, const PauliLabel& a,
                                      std::uint64_t samples, std::uint64_t seed, double floor,
                                      int threads, int dense_limit) {
  const int n = spec_in.n;
  const ChannelReconstruction rec = channel_reconstruction(cw, floor);
  const double dim = static_cast<double>(std::size_t(1) << n);
  const auto labels = all_labels(n);
  std::vector<std::pair<PauliLabel, double>> rho_terms;
  for (const auto& c : labels) {
    double t = pauli_expectation(rho, c) / dim;
    if (c.y_count() & 1) t = -t;
    if (t != 0.0) rho_terms.emplace_back(c, t * rec.in_map.inverse_coeffs[c.index()]);
  }
  const double inv_out = rec.out_map.inverse_coeffs[a.index()];

  const std::uint64_t nblocks = block_count(samples);
  std::vector<double> block_sum(nblocks, 0.0), block_sumsq(nblocks, 0.0);
  const std::size_t d = std::size_t(1) << n;
  parallel_blocks(samples, threads, [&](std::uint64_t blk, std::uint64_t begin, std::uint64_t end) {
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t k = begin; k < end; ++k) {
      Rng rng = Rng::substream(seed, k);
      ChannelSnapshot cs;
      cs.b_in = static_cast<std::uint32_t>(rng.below(d));
      cs.draw_in = sample(spec_in, rng);
      cs.draw_out = sample(spec_out, rng);
      const Mat ui = realize(cs.draw_in, dense_limit).m;
      const Mat uo = realize(cs.draw_out, dense_limit).m;
      const Mat input = outer(prepared_ket(ui, cs.b_in));
      const Mat evolved = mul(uo, mul(apply_channel_mat(input, channel, false), dagger(uo)));
      const double r = rng.uniform();
      double acc = 0.0;
      std::uint32_t outcome = static_cast<std::uint32_t>(d - 1);
      for (std::size_t b = 0; b < d; ++b) {
        acc += std::max(0.0, evolved(b, b).real());
        if (r < acc) {
          outcome = static_cast<std::uint32_t>(b);
          break;
        }
      }
      const CVec phi_i = input_snapshot_ket(ui, cs.b_in);
      const CVec phi_o = output_snapshot_ket(uo, outcome);
      double s_in = 0.0;
      for (const auto& [c, w] : rho_terms)
        s_in += w * (c.is_identity() ? 1.0 : pauli_ket_expectation(c, phi_i).real());
      const double t_out = a.is_identity() ? 1.0 : pauli_ket_expectation(a, phi_o).real();
      const double o = s_in * inv_out * t_out;
      sum += o * o;
      sumsq += o * o * o * o;
    }
    block_sum[blk] = sum;
    block_sumsq[blk] = sumsq;
  });
  double sum = 0.0, sumsq = 0.0;
  for (std::uint64_t b = 0; b < nblocks; ++b) {
    sum += block_sum[b];
    sumsq += block_sumsq[b];
  }
  const double m = static_cast<double>(samples);
  EstimateReport rep;
  rep.value = sum / m;
  rep.shots_used = samples;
  rep.strategy = "mean";
  if (samples > 1) {
    const double var = std::max(0.0, (sumsq - m * rep.value * rep.value) / (m - 1.0));
    rep.stderr_value = std::sqrt(var / m);
  }
  return rep;
}

std::uint64_t pauli_channel_sample_bound(const ChannelWTable& cw, double eps, double delta,
                                         bool exclude_identity, double floor) {
  if (eps <= 0.0 || eps >= 1.0 || delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("pauli_channel_sample_bound: eps and delta must lie in (0, 1)");
  const int n = cw.w_in.n;
  double max_prod = 0.0;
  for (std::uint64_t idx = exclude_identity ? 1 : 0; idx < cw.w_in.values.size(); ++idx) {
    if (cw.w_in.values[idx] <= floor || cw.w_out.values[idx] <= floor)
      throw NonInvertibleError("pauli_channel_sample_bound: coefficient at floor", n, {idx});
    max_prod = std::max(max_prod, 1.0 / (cw.w_in.values[idx] * cw.w_out.values[idx]));
  }
  const double log_term = static_cast<double>(n) * std::log(2.0) + std::log(1.0 / delta);
  return static_cast<std::uint64_t>(std::ceil(log_term / (eps * eps) * max_prod - 1e-9));
}

DensityMatrix choi_reconstruction_exact(const QuantumChannel& channel, const EnsembleSpec& spec_in,
                                        const EnsembleSpec& spec_out, const ChannelWTable& cw,
                                        double floor, int dense_limit) {
  const int n = spec_in.n;
  if (spec_out.n != n || channel.n != n)
    throw std::invalid_argument("choi_reconstruction_exact: size mismatch");
  if (2 * n > dense_limit) throw DenseLimitError("choi_reconstruction_exact: 2n exceeds dense limit");
  const ChannelReconstruction rec = channel_reconstruction(cw, floor);
  const auto elems_in = enumerate_ensemble(spec_in);
  const auto elems_out = enumerate_ensemble(spec_out);
  const auto labels = all_labels(n);
  const std::size_t dim = std::size_t(1) << n;
  const std::size_t nlabels = labels.size();

  // Accumulate Pauli-pair coefficients of E[M^{-1}[sigma_io]].
  std::vector<double> coeff(nlabels * nlabels, 0.0);
  std::vector<double> t_in(nlabels), t_out(nlabels);
  for (const auto& [draw_in, p_in] : elems_in) {
    const Mat ui = realize(draw_in, dense_limit).m;
    for (std::uint32_t b_in = 0; b_in < dim; ++b_in) {
      const Mat input = outer(prepared_ket(ui, b_in));
      const Mat pushed = apply_channel_mat(input, channel, false);
      const CVec phi_i = input_snapshot_ket(ui, b_in);
      for (std::size_t ai = 0; ai < nlabels; ++ai)
        t_in[ai] = labels[ai].is_identity() ? 1.0 : pauli_ket_expectation(labels[ai], phi_i).real();
      for (const auto& [draw_out, p_out] : elems_out) {
        const Mat uo = realize(draw_out, dense_limit).m;
        const Mat evolved = mul(uo, mul(pushed, dagger(uo)));
        for (std::uint32_t b_out = 0; b_out < dim; ++b_out) {
          const double born = evolved(b_out, b_out).real();
          if (born == 0.0) continue;
          const double weight = p_in * p_out * born / static_cast<double>(dim);
          const CVec phi_o = output_snapshot_ket(uo, b_out);
          for (std::size_t ao = 0; ao < nlabels; ++ao)
            t_out[ao] = labels[ao].is_identity() ? 1.0 : pauli_ket_expectation(labels[ao], phi_o).real();
          for (std::size_t ai = 0; ai < nlabels; ++ai) {
            const double w_i = weight * rec.in_map.inverse_coeffs[ai] * t_in[ai];
            if (w_i == 0.0) continue;
            for (std::size_t ao = 0; ao < nlabels; ++ao)
              coeff[ai * nlabels + ao] += w_i * rec.out_map.inverse_coeffs[ao] * t_out[ao];
          }
        }
      }
    }
  }

  const std::size_t dim2 = dim * dim;
  Mat acc(dim2);
  const double norm = 1.0 / static_cast<double>(dim2);
  for (std::size_t ai = 0; ai < nlabels; ++ai) {
    const Mat pi = pauli_matrix(labels[ai]);
    for (std::size_t ao = 0; ao < nlabels; ++ao) {
      const double c = coeff[ai * nlabels + ao] * norm;
      if (c == 0.0) continue;
      const Mat pair = kron(pauli_matrix(labels[ao]), pi);
      for (std::size_t i = 0; i < acc.a.size(); ++i) acc.a[i] += c * pair.a[i];
    }
  }
  DensityMatrix out;
  out.n = 2 * n;
  out.m = std::move(acc);
  return out;
}

}  // namespace shadows
