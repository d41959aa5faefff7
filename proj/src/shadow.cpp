// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "shadows/shadow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shadows/parallel.hpp"

namespace shadows {

namespace {

std::vector<PauliLabel> all_labels(int n) {
  std::vector<PauliLabel> labels;
  labels.reserve(std::size_t(1) << (2 * n));
  for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << (2 * n)); ++idx)
    labels.push_back(PauliLabel::from_index(n, idx));
  return labels;
}

CVec unitary_dagger_ket(const Mat& u, std::uint32_t b) {
  CVec phi(u.dim);
  for (std::size_t j = 0; j < u.dim; ++j) phi[j] = std::conj(u(b, j));
  return phi;
}

// Mean and standard error of per-sample tables accumulated as block sums.
void finalize_mc_table(WTable& w, const std::vector<std::vector<double>>& block_sum,
                       const std::vector<std::vector<double>>& block_sumsq, std::uint64_t m) {
  const std::size_t labels = w.values.size();
  std::vector<double> sum(labels, 0.0), sumsq(labels, 0.0);
  for (std::size_t b = 0; b < block_sum.size(); ++b)
    for (std::size_t i = 0; i < labels; ++i) {
      sum[i] += block_sum[b][i];
      sumsq[i] += block_sumsq[b][i];
    }
  w.stderrs.assign(labels, 0.0);
  const double dm = static_cast<double>(m);
  for (std::size_t i = 0; i < labels; ++i) {
    const double mean = sum[i] / dm;
    w.values[i] = mean;
    if (m > 1) {
      const double var = std::max(0.0, (sumsq[i] - dm * mean * mean) / (dm - 1.0));
      w.stderrs[i] = std::sqrt(var / dm);
    }
  }
}

}  // namespace

void WTable::validate(bool bounded, double tol) const {
  if (values.v.size() != (std::size_t(1) << (2 * n))) throw std::invalid_argument("WTable: bad table size");
  if (std::abs(values[0] - 1.0) > tol) throw std::invalid_argument("WTable: W[identity] != 1");
  if (bounded) {
    for (double v : values.v)
      if (v < -tol || v > 1.0 + tol) throw std::invalid_argument("WTable: entry outside [0, 1]");
  }
}

std::string Strategy::name() const {
  if (kind == Mean) return "mean";
  return "median_of_means:" + std::to_string(batches);
}

SnapshotSet collect_snapshots(const DensityMatrix& rho, const EnsembleSpec& spec, std::uint64_t shots,
                              std::uint64_t seed, const std::optional<QuantumChannel>& noise,
                              const std::string& noise_tag, int threads) {
  if (rho.n != spec.n) throw std::invalid_argument("collect_snapshots: state/ensemble size mismatch");
  if (noise && noise->n != spec.n) throw std::invalid_argument("collect_snapshots: noise size mismatch");
  if (shots < 1) throw std::invalid_argument("collect_snapshots: shots must be >= 1");
  SnapshotSet set;
  set.spec = spec;
  set.seed = seed;
  set.noise_tag = noise_tag;
  set.snapshots.resize(shots);
  parallel_shots(shots, threads, [&](std::uint64_t k) {
    Rng rng = Rng::substream(seed, k);
    Snapshot snap;
    snap.draw = sample(spec, rng);
    const UnitaryMatrix u = realize(snap.draw);
    DensityMatrix rotated = apply_unitary(rho, u);
    if (noise) rotated = apply_channel(rotated, *noise);
    snap.outcome = measure(rotated, rng);
    set.snapshots[k] = std::move(snap);
  });
  return set;
}

CVec snapshot_ket(const Snapshot& s, int dense_limit) {
  const UnitaryMatrix u = realize(s.draw, dense_limit);
  return unitary_dagger_ket(u.m, s.outcome);
}

DensityMatrix realize_snapshot(const Snapshot& s, int dense_limit) {
  DensityMatrix rho;
  rho.n = s.draw.n;
  rho.m = outer(snapshot_ket(s, dense_limit));
  return rho;
}

WTable compute_W_exact(const EnsembleSpec& spec, int dense_limit) {
  const auto elems = enumerate_ensemble(spec);
  const int n = spec.n;
  if (n > dense_limit) throw DenseLimitError("compute_W_exact: n exceeds dense limit");
  const auto labels = all_labels(n);
  const std::size_t dim = std::size_t(1) << n;
  WTable w;
  w.n = n;
  w.values = RealFunctionOnVn(n, 0.0);
  for (const auto& [draw, p] : elems) {
    const Mat u = realize(draw, dense_limit).m;
    const double weight = p / static_cast<double>(dim);
    for (std::uint32_t b = 0; b < dim; ++b) {
      const CVec phi = unitary_dagger_ket(u, b);
      for (std::size_t idx = 0; idx < labels.size(); ++idx) {
        const double t = pauli_ket_expectation(labels[idx], phi).real();
        w.values[idx] += weight * t * t;
      }
    }
  }
  w.values[0] = 1.0;  // Tr sigma = 1 identically; keep the identity entry exact
  w.provenance = WProvenance::Exact;
  w.validate(true);
  return w;
}

WTable estimate_W_monte_carlo(const EnsembleSpec& spec, std::uint64_t unitary_samples, std::uint64_t seed,
                              BMode b_mode, int threads, int dense_limit) {
  if (unitary_samples < 1) throw std::invalid_argument("estimate_W_monte_carlo: need at least one sample");
  const int n = spec.n;
  if (n > dense_limit) throw DenseLimitError("estimate_W_monte_carlo: n exceeds dense limit");
  const auto labels = all_labels(n);
  const std::size_t nlabels = labels.size();
  const std::size_t dim = std::size_t(1) << n;
  const std::uint64_t nblocks = block_count(unitary_samples);
  std::vector<std::vector<double>> block_sum(nblocks, std::vector<double>(nlabels, 0.0));
  std::vector<std::vector<double>> block_sumsq(nblocks, std::vector<double>(nlabels, 0.0));
  parallel_blocks(unitary_samples, threads, [&](std::uint64_t blk, std::uint64_t begin, std::uint64_t end) {
    auto& sum = block_sum[blk];
    auto& sumsq = block_sumsq[blk];
    std::vector<double> val(nlabels);
    for (std::uint64_t k = begin; k < end; ++k) {
      Rng rng = Rng::substream(seed, k);
      const UnitaryDraw draw = sample(spec, rng);
      const Mat u = realize(draw, dense_limit).m;
      if (b_mode == BMode::ExactAverage) {
        std::fill(val.begin(), val.end(), 0.0);
        for (std::uint32_t b = 0; b < dim; ++b) {
          const CVec phi = unitary_dagger_ket(u, b);
          for (std::size_t idx = 0; idx < nlabels; ++idx) {
            const double t = pauli_ket_expectation(labels[idx], phi).real();
            val[idx] += t * t;
          }
        }
        const double norm = 1.0 / static_cast<double>(dim);
        for (auto& v : val) v *= norm;
      } else {
        const std::uint32_t b = static_cast<std::uint32_t>(rng.below(dim));
        const CVec phi = unitary_dagger_ket(u, b);
        for (std::size_t idx = 0; idx < nlabels; ++idx) {
          const double t = pauli_ket_expectation(labels[idx], phi).real();
          val[idx] = t * t;
        }
      }
      for (std::size_t idx = 0; idx < nlabels; ++idx) {
        sum[idx] += val[idx];
        sumsq[idx] += val[idx] * val[idx];
      }
    }
  });
  WTable w;
  w.n = n;
  w.values = RealFunctionOnVn(n, 0.0);
  finalize_mc_table(w, block_sum, block_sumsq, unitary_samples);
  w.values[0] = 1.0;  // |Tr sigma|^2 = 1 for every sample in either b-mode
  w.stderrs[0] = 0.0;
  w.provenance = WProvenance::MonteCarlo;
  w.samples = unitary_samples;
  w.validate(true, 1e-6);
  return w;
}

WTable compute_W_noisy(const EnsembleSpec& spec, const QuantumChannel& noise, int dense_limit) {
  const auto elems = enumerate_ensemble(spec);
  const int n = spec.n;
  if (n != noise.n) throw std::invalid_argument("compute_W_noisy: noise size mismatch");
  if (n > dense_limit) throw DenseLimitError("compute_W_noisy: n exceeds dense limit");
  const auto labels = all_labels(n);
  const std::size_t dim = std::size_t(1) << n;
  // Q_b = Lambda^dag[|b><b|], so the second trace is Tr(Q_b U P_a U^dag).
  std::vector<Mat> q(dim);
  for (std::uint32_t b = 0; b < dim; ++b) {
    CVec e(dim, cplx(0.0, 0.0));
    e[b] = 1.0;
    q[b] = apply_channel_mat(outer(e), noise, /*adjoint=*/true);
  }
  WTable w;
  w.n = n;
  w.values = RealFunctionOnVn(n, 0.0);
  for (const auto& [draw, p] : elems) {
    const Mat u = realize(draw, dense_limit).m;
    const Mat udag = dagger(u);
    const double weight = p / static_cast<double>(dim);
    for (std::size_t idx = 0; idx < labels.size(); ++idx) {
      const Mat a = mul(u, mul(pauli_matrix(labels[idx]), udag));
      for (std::uint32_t b = 0; b < dim; ++b) {
        const double t1 = a(b, b).real();
        if (t1 == 0.0) continue;
        cplx t2 = 0.0;
        for (std::size_t r = 0; r < dim; ++r)
          for (std::size_t c = 0; c < dim; ++c) t2 += q[b](r, c) * a(c, r);
        w.values[idx] += weight * t1 * t2.real();
      }
    }
  }
  w.values[0] = 1.0;  // trace preservation pins the identity entry
  w.provenance = WProvenance::Exact;
  w.note = "noisy";
  w.validate(false);
  return w;
}

WTable compute_W_u(const EnsembleSpec& spec, const QuantumChannel& noise, int dense_limit) {
  const auto elems = enumerate_ensemble(spec);
  const int n = spec.n;
  if (n != noise.n) throw std::invalid_argument("compute_W_u: noise size mismatch");
  if (n > dense_limit) throw DenseLimitError("compute_W_u: n exceeds dense limit");
  const auto labels = all_labels(n);
  const std::size_t dim = std::size_t(1) << n;
  const Mat lambda_id = apply_channel_mat(Mat::identity(dim), noise, false);
  WTable w;
  w.n = n;
  w.values = RealFunctionOnVn(n, 0.0);
  for (const auto& [draw, p] : elems) {
    const Mat u = realize(draw, dense_limit).m;
    const double weight = p / static_cast<double>(dim);
    for (std::uint32_t b = 0; b < dim; ++b) {
      const CVec phi = unitary_dagger_ket(u, b);
      const double cb = lambda_id(b, b).real();
      for (std::size_t idx = 0; idx < labels.size(); ++idx) {
        const double t = pauli_ket_expectation(labels[idx], phi).real();
        w.values[idx] += weight * t * t * cb;
      }
    }
  }
  w.values[0] = 1.0;  // E_b Tr(|b><b| Lambda[I]) = 1 for trace-preserving noise
  w.provenance = WProvenance::Exact;
  w.note = "norm-side";
  w.validate(false);
  return w;
}

WTable analytic_w_pauli_group(int n) {
  WTable w;
  w.n = n;
  w.values = RealFunctionOnVn(n, 0.0);
  for (std::uint64_t idx = 0; idx < w.values.size(); ++idx) {
    const PauliLabel a = PauliLabel::from_index(n, idx);
    w.values[idx] = (a.x == 0) ? 1.0 : 0.0;
  }
  w.provenance = WProvenance::Analytic;
  w.note = "pauli-group";
  return w;
}

WTable analytic_w_local_clifford(int n) {
  WTable w;
  w.n = n;
  w.values = RealFunctionOnVn(n, 0.0);
  for (std::uint64_t idx = 0; idx < w.values.size(); ++idx)
    w.values[idx] = std::pow(3.0, -PauliLabel::from_index(n, idx).weight());
  w.provenance = WProvenance::Analytic;
  w.note = "local-clifford";
  return w;
}

WTable analytic_w_global_clifford(int n) {
  WTable w;
  w.n = n;
  w.values = RealFunctionOnVn(n, 1.0 / (static_cast<double>(std::size_t(1) << n) + 1.0));
  w.values[0] = 1.0;
  w.provenance = WProvenance::Analytic;
  w.note = "global-clifford";
  return w;
}

ReconstructionMap invert_W(const WTable& w, double floor) {
  ReconstructionMap r;
  r.n = w.n;
  r.inverse_coeffs = RealFunctionOnVn(w.n, 0.0);
  std::vector<std::uint64_t> offenders;
  for (std::uint64_t idx = 0; idx < w.values.size(); ++idx) {
    double eff_floor = floor;
    if (w.has_stderr()) eff_floor = std::max(eff_floor, 3.0 * w.stderrs[idx]);
    if (w.values[idx] <= eff_floor) {
      offenders.push_back(idx);
      continue;
    }
    r.inverse_coeffs[idx] = 1.0 / w.values[idx];
  }
  if (!offenders.empty()) {
    std::string msg = "shadow channel not invertible; offending labels:";
    for (std::uint64_t idx : offenders) msg += " " + PauliLabel::from_index(w.n, idx).to_string();
    throw NonInvertibleError(msg, w.n, std::move(offenders));
  }
  return r;
}

namespace {

// Per-snapshot estimator value given the precomputed snapshot ket. The
// identity label contributes exactly 1 (Tr sigma = 1 identically), which
// keeps O = I estimates and the trace of averaged shadows exact.
double estimate_from_ket(const CVec& psi, const ReconstructionMap& recon, const PauliObservable& obs) {
  double acc = 0.0;
  for (const auto& [label, coeff] : obs.terms) {
    const double t = label.is_identity() ? 1.0 : pauli_ket_expectation(label, psi).real();
    acc += coeff * recon.inverse_coeffs[label.index()] * t;
  }
  return acc;
}

EstimateReport aggregate(const std::vector<double>& values, const Strategy& strategy) {
  const std::size_t m = values.size();
  EstimateReport rep;
  rep.shots_used = m;
  rep.strategy = strategy.name();
  if (strategy.kind == Strategy::Mean) {
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(m);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    rep.value = mean;
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
  rep.value = (k % 2 == 1) ? sorted[static_cast<std::size_t>(k / 2)]
                           : 0.5 * (sorted[static_cast<std::size_t>(k / 2 - 1)] + sorted[static_cast<std::size_t>(k / 2)]);
  double mean_of_means = 0.0;
  for (double v : means) mean_of_means += v;
  mean_of_means /= static_cast<double>(k);
  double ss = 0.0;
  for (double v : means) ss += (v - mean_of_means) * (v - mean_of_means);
  rep.stderr_value = k > 1 ? std::sqrt(ss / (static_cast<double>(k) * (static_cast<double>(k) - 1.0))) : 0.0;
  return rep;
}

}  // namespace

double snapshot_estimate(const Snapshot& s, const ReconstructionMap& recon, const PauliObservable& obs,
                         int dense_limit) {
  if (s.draw.n != recon.n || obs.n != recon.n)
    throw std::invalid_argument("snapshot_estimate: size mismatch");
  return estimate_from_ket(snapshot_ket(s, dense_limit), recon, obs);
}

EstimateReport estimate_observable(const SnapshotSet& set, const ReconstructionMap& recon,
                                   const PauliObservable& obs, const Strategy& strategy, int dense_limit) {
  if (set.snapshots.empty()) throw std::invalid_argument("estimate_observable: empty snapshot set");
  if (set.spec.n != recon.n || obs.n != recon.n)
    throw std::invalid_argument("estimate_observable: size mismatch");
  std::vector<double> values;
  values.reserve(set.snapshots.size());
  for (const auto& s : set.snapshots)
    values.push_back(estimate_from_ket(snapshot_ket(s, dense_limit), recon, obs));
  return aggregate(values, strategy);
}

RealFunctionOnVn average_shadow_coefficients(const SnapshotSet& set, const ReconstructionMap& recon,
                                             int dense_limit) {
  if (set.snapshots.empty()) throw std::invalid_argument("average_shadow_estimate: empty snapshot set");
  const int n = set.spec.n;
  if (n > dense_limit) throw DenseLimitError("average_shadow_estimate: n exceeds dense limit");
  const auto labels = all_labels(n);
  std::vector<CVec> kets;
  kets.reserve(set.snapshots.size());
  for (const auto& s : set.snapshots) kets.push_back(snapshot_ket(s, dense_limit));
  const double m = static_cast<double>(kets.size());
  // Same accumulation order as estimate_observable on O = P_a, so the two
  // paths agree bit for bit; the identity coefficient is exactly 1.
  RealFunctionOnVn coeff(n, 0.0);
  for (std::size_t idx = 0; idx < labels.size(); ++idx) {
    const PauliObservable obs = PauliObservable::single(labels[idx]);
    double sum = 0.0;
    for (const auto& ket : kets) sum += estimate_from_ket(ket, recon, obs);
    coeff[idx] = sum / m;
  }
  return coeff;
}

DensityMatrix average_shadow_estimate(const SnapshotSet& set, const ReconstructionMap& recon,
                                      int dense_limit) {
  const RealFunctionOnVn coeff = average_shadow_coefficients(set, recon, dense_limit);
  const int n = set.spec.n;
  const std::size_t dim = std::size_t(1) << n;
  Mat acc(dim);
  const double norm = 1.0 / static_cast<double>(dim);
  for (std::size_t idx = 0; idx < coeff.size(); ++idx) {
    const Mat p = pauli_matrix(PauliLabel::from_index(n, idx));
    const double c = coeff[idx] * norm;
    for (std::size_t i = 0; i < acc.a.size(); ++i) acc.a[i] += c * p.a[i];
  }
  DensityMatrix rho;
  rho.n = n;
  rho.m = std::move(acc);
  return rho;
}

DensityMatrix enumerate_reconstruction(const EnsembleSpec& spec, const DensityMatrix& rho,
                                       const ReconstructionMap& recon,
                                       const std::optional<QuantumChannel>& noise, int dense_limit) {
  if (rho.n != spec.n || recon.n != spec.n)
    throw std::invalid_argument("enumerate_reconstruction: size mismatch");
  const auto elems = enumerate_ensemble(spec);
  const int n = spec.n;
  if (n > dense_limit) throw DenseLimitError("enumerate_reconstruction: n exceeds dense limit");
  const auto labels = all_labels(n);
  const std::size_t dim = std::size_t(1) << n;
  std::vector<double> coeff(labels.size(), 0.0);
  for (const auto& [draw, p] : elems) {
    const Mat u = realize(draw, dense_limit).m;
    Mat evolved = mul(u, mul(rho.m, dagger(u)));
    if (noise) evolved = apply_channel_mat(evolved, *noise, false);
    for (std::uint32_t b = 0; b < dim; ++b) {
      const double born = evolved(b, b).real();
      if (born == 0.0) continue;
      const CVec phi = unitary_dagger_ket(u, b);
      const double weight = p * born;
      for (std::size_t idx = 0; idx < labels.size(); ++idx) {
        const double t = labels[idx].is_identity() ? 1.0 : pauli_ket_expectation(labels[idx], phi).real();
        coeff[idx] += weight * recon.inverse_coeffs[idx] * t;
      }
    }
  }
  Mat acc(dim);
  const double norm = 1.0 / static_cast<double>(dim);
  for (std::size_t idx = 0; idx < labels.size(); ++idx) {
    const Mat pm = pauli_matrix(labels[idx]);
    const double c = coeff[idx] * norm;
    for (std::size_t i = 0; i < acc.a.size(); ++i) acc.a[i] += c * pm.a[i];
  }
  DensityMatrix out;
  out.n = n;
  out.m = std::move(acc);
  return out;
}

}  // namespace shadows
