// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "shadows/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "shadows/parallel.hpp"

namespace shadows {

namespace {

double pow3(int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v *= 3.0;
  return v;
}

std::uint32_t full_mask(int n) { return (1u << n) - 1u; }

void purity_table_for_ket(const CVec& phi, int n, std::vector<double>& out) {
  const DensityMatrix rho{n, outer(phi)};
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    out[mask] = renyi2_purity(rho, SupportSet(n, mask));
}

}  // namespace

double shadow_norm_pauli(const WTable& w, const PauliLabel& a, double floor) {
  if (a.n != w.n) throw std::invalid_argument("shadow_norm_pauli: size mismatch");
  const double val = w.values.at_label(a);
  if (val <= floor)
    throw NonInvertibleError("shadow norm undefined: W[" + a.to_string() + "] at floor", w.n, {a.index()});
  return 1.0 / val;
}

EstimateReport empirical_shadow_norm(const EnsembleSpec& spec, const ReconstructionMap& recon,
                                     const PauliObservable& obs, const DensityMatrix& rho,
                                     std::uint64_t samples, std::uint64_t seed,
                                     const std::optional<QuantumChannel>& noise, int threads,
                                     int dense_limit) {
  if (spec.n != recon.n || obs.n != recon.n || rho.n != recon.n)
    throw std::invalid_argument("empirical_shadow_norm: size mismatch");
  if (samples < 1) throw std::invalid_argument("empirical_shadow_norm: need at least one sample");
  const std::uint64_t nblocks = block_count(samples);
  std::vector<double> block_sum(nblocks, 0.0), block_sumsq(nblocks, 0.0);
  parallel_blocks(samples, threads, [&](std::uint64_t blk, std::uint64_t begin, std::uint64_t end) {
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t k = begin; k < end; ++k) {
      Rng rng = Rng::substream(seed, k);
      const UnitaryDraw draw = sample(spec, rng);
      const UnitaryMatrix u = realize(draw, dense_limit);
      DensityMatrix rotated = apply_unitary(rho, u);
      if (noise) rotated = apply_channel(rotated, *noise);
      const std::uint32_t b = measure(rotated, rng);
      const Snapshot snap{draw, b};
      const double o = snapshot_estimate(snap, recon, obs, dense_limit);
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

double average_shadow_norm(const WTable& w, const PauliObservable& obs, double floor) {
  if (obs.n != w.n) throw std::invalid_argument("average_shadow_norm: size mismatch");
  const RealFunctionOnVn wo = obs.squared_coefficients();
  double acc = 0.0;
  for (std::uint64_t idx = 0; idx < wo.size(); ++idx) {
    if (wo[idx] == 0.0) continue;  // 0 * inf convention: skip dead terms
    if (w.values[idx] <= floor)
      throw NonInvertibleError("average_shadow_norm: W at floor under live W_O", w.n, {idx});
    acc += wo[idx] / w.values[idx];
  }
  return acc / static_cast<double>(std::size_t(1) << (2 * w.n));
}

std::uint64_t sample_complexity_bound(double max_sq_norm, std::uint64_t n_observables, double eps,
                                      double delta) {
  if (eps <= 0.0 || eps >= 1.0 || delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("sample_complexity_bound: eps and delta must lie in (0, 1)");
  if (n_observables < 1) throw std::invalid_argument("sample_complexity_bound: need at least one observable");
  if (max_sq_norm < 0.0) throw std::invalid_argument("sample_complexity_bound: negative norm");
  const double v = std::log(static_cast<double>(n_observables) / delta) / (eps * eps) * max_sq_norm;
  // The nudge keeps mathematically integral values from rounding up a unit.
  return static_cast<std::uint64_t>(std::ceil(v - 1e-9));
}

EntanglementFeatureTable entanglement_features(const EnsembleSpec& spec, AveragingMode mode,
                                               std::uint64_t samples, std::uint64_t seed,
                                               int dense_limit) {
  const int n = spec.n;
  if (n > dense_limit) throw DenseLimitError("entanglement_features: n exceeds dense limit");
  const std::size_t dim = std::size_t(1) << n;
  const std::size_t nmasks = std::size_t(1) << n;
  EntanglementFeatureTable ef;
  ef.n = n;
  ef.values.assign(nmasks, 0.0);
  std::vector<double> purity(nmasks);
  if (mode == AveragingMode::Exact) {
    const auto elems = enumerate_ensemble(spec);
    for (const auto& [draw, p] : elems) {
      const Mat u = realize(draw, dense_limit).m;
      const double weight = p / static_cast<double>(dim);
      for (std::uint32_t b = 0; b < dim; ++b) {
        CVec phi(dim);
        for (std::size_t j = 0; j < dim; ++j) phi[j] = std::conj(u(b, j));
        purity_table_for_ket(phi, n, purity);
        for (std::size_t mask = 0; mask < nmasks; ++mask) ef.values[mask] += weight * purity[mask];
      }
    }
    return ef;
  }
  if (samples < 1) throw std::invalid_argument("entanglement_features: need at least one sample");
  for (std::uint64_t k = 0; k < samples; ++k) {
    Rng rng = Rng::substream(seed, k);
    const Mat u = realize(sample(spec, rng), dense_limit).m;
    const double weight = 1.0 / (static_cast<double>(samples) * static_cast<double>(dim));
    for (std::uint32_t b = 0; b < dim; ++b) {
      CVec phi(dim);
      for (std::size_t j = 0; j < dim; ++j) phi[j] = std::conj(u(b, j));
      purity_table_for_ket(phi, n, purity);
      for (std::size_t mask = 0; mask < nmasks; ++mask) ef.values[mask] += weight * purity[mask];
    }
  }
  return ef;
}

SupportWTable w_support_sums(const WTable& w) {
  SupportWTable sw;
  sw.n = w.n;
  sw.w_sum.assign(std::size_t(1) << w.n, 0.0);
  sw.w_bar.assign(std::size_t(1) << w.n, 0.0);
  for (std::uint64_t idx = 0; idx < w.values.size(); ++idx)
    sw.w_sum[PauliLabel::from_index(w.n, idx).support_mask()] += w.values[idx];
  for (std::size_t mask = 0; mask < sw.w_sum.size(); ++mask)
    sw.w_bar[mask] = sw.w_sum[mask] / pow3(__builtin_popcount(static_cast<std::uint32_t>(mask)));
  return sw;
}

std::vector<double> w_from_entanglement_features(const EntanglementFeatureTable& ef) {
  const std::size_t nmasks = std::size_t(1) << ef.n;
  if (ef.values.size() != nmasks) throw std::invalid_argument("entanglement feature table incomplete");
  std::vector<double> w(nmasks, 0.0);
  for (std::uint32_t s = 0; s < nmasks; ++s) {
    double acc = 0.0;
    std::uint32_t sub = s;
    for (;;) {
      const int asize = __builtin_popcount(sub);
      double term = ef.values[sub];
      for (int i = 0; i < asize; ++i) term *= -2.0;
      acc += term;
      if (sub == 0) break;
      sub = (sub - 1) & s;
    }
    w[s] = (__builtin_popcount(s) & 1) ? -acc : acc;
  }
  return w;
}

FlatnessReport flatness_check(const WTable& w, double tol) {
  std::vector<double> lo(std::size_t(1) << w.n, 1e300), hi(std::size_t(1) << w.n, -1e300);
  for (std::uint64_t idx = 0; idx < w.values.size(); ++idx) {
    const std::uint32_t mask = PauliLabel::from_index(w.n, idx).support_mask();
    lo[mask] = std::min(lo[mask], w.values[idx]);
    hi[mask] = std::max(hi[mask], w.values[idx]);
  }
  FlatnessReport rep;
  for (std::size_t mask = 0; mask < lo.size(); ++mask)
    if (hi[mask] > -1e300) rep.max_spread = std::max(rep.max_spread, hi[mask] - lo[mask]);
  rep.pass = rep.max_spread <= tol;
  return rep;
}

RCoefficients r_coefficients(const SupportWTable& sw, double floor) {
  const std::size_t nmasks = std::size_t(1) << sw.n;
  if (sw.w_bar.size() != nmasks) throw std::invalid_argument("r_coefficients: malformed table");
  for (std::size_t mask = 0; mask < nmasks; ++mask)
    if (sw.w_bar[mask] <= floor)
      throw NonInvertibleError("r_coefficients: support coefficient at floor", sw.n,
                               {static_cast<std::uint64_t>(mask)});
  const std::uint32_t full = full_mask(sw.n);
  RCoefficients rc;
  rc.n = sw.n;
  rc.values.assign(nmasks, 0.0);
  for (std::uint32_t s = 0; s < nmasks; ++s) {
    rc.values[s] = subset_moebius_sum(
        [&](std::uint32_t a) { return 1.0 / sw.w_bar[(~a) & full]; }, SupportSet(sw.n, s), true);
  }
  return rc;
}

RCoefficients r_from_entanglement_features(const EntanglementFeatureTable& ef, double floor) {
  const std::size_t nmasks = std::size_t(1) << ef.n;
  if (ef.values.size() != nmasks) throw std::invalid_argument("entanglement feature table incomplete");
  const std::uint32_t full = full_mask(ef.n);
  // Inner sums over complements, shared across the outer subsets.
  std::vector<double> inner(nmasks, 0.0);
  for (std::uint32_t m = 0; m < nmasks; ++m) {
    double acc = 0.0;
    std::uint32_t sub = m;
    for (;;) {
      double term = ef.values[sub];
      for (int i = 0; i < __builtin_popcount(sub); ++i) term *= -2.0;
      acc += term;
      if (sub == 0) break;
      sub = (sub - 1) & m;
    }
    if (std::abs(acc) <= floor)
      throw NonInvertibleError("r_from_entanglement_features: inner sum at floor", ef.n,
                               {static_cast<std::uint64_t>(m)});
    inner[m] = acc;
  }
  RCoefficients rc;
  rc.n = ef.n;
  rc.values.assign(nmasks, 0.0);
  for (std::uint32_t s = 0; s < nmasks; ++s) {
    double acc = 0.0;
    std::uint32_t sub = s;
    for (;;) {
      const std::uint32_t comp = (~sub) & full;
      acc += pow3(__builtin_popcount(comp)) / inner[comp];
      if (sub == 0) break;
      sub = (sub - 1) & s;
    }
    const int sign = (ef.n + __builtin_popcount(s)) & 1;
    rc.values[s] = sign ? -acc : acc;
  }
  return rc;
}

DensityMatrix apply_rs_map(const RCoefficients& rc, const DensityMatrix& sigma, int dense_limit) {
  if (rc.n != sigma.n) throw std::invalid_argument("apply_rs_map: size mismatch");
  if (rc.n > dense_limit) throw DenseLimitError("apply_rs_map: n exceeds dense limit");
  const int n = rc.n;
  const std::size_t dim = std::size_t(1) << n;
  const std::uint32_t full = full_mask(n);
  Mat acc(dim);
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    const double r = rc.values[s];
    if (r == 0.0) continue;
    const std::uint32_t keep = full & ~s;
    const Mat reduced = partial_trace(sigma.m, n, s);
    const double erased_norm = 1.0 / static_cast<double>(std::size_t(1) << __builtin_popcount(s));
    // D^S[sigma](i, j) = reduced(i_keep, j_keep) delta(i_S, j_S) / 2^{|S|}.
    for (std::size_t i = 0; i < dim; ++i) {
      const std::uint64_t ik = extract_bits(i, keep);
      const std::uint64_t is = i & s;
      for (std::size_t j = 0; j < dim; ++j) {
        if ((j & s) != is) continue;
        acc(i, j) += r * erased_norm * reduced(ik, extract_bits(j, keep));
      }
    }
  }
  DensityMatrix out;
  out.n = n;
  out.m = std::move(acc);
  return out;
}

double avg_shadow_norm_locally_scrambled(const SupportWTable& sw, const PauliObservable& obs,
                                         double floor) {
  if (obs.n != sw.n) throw std::invalid_argument("avg_shadow_norm_locally_scrambled: size mismatch");
  const RealFunctionOnVn wo = obs.squared_coefficients();
  std::vector<double> wo_support(std::size_t(1) << sw.n, 0.0);
  for (std::uint64_t idx = 0; idx < wo.size(); ++idx)
    wo_support[PauliLabel::from_index(sw.n, idx).support_mask()] += wo[idx];
  double acc = 0.0;
  for (std::size_t mask = 0; mask < wo_support.size(); ++mask) {
    if (wo_support[mask] == 0.0) continue;
    if (sw.w_bar[mask] <= floor)
      throw NonInvertibleError("avg_shadow_norm_locally_scrambled: support coefficient at floor", sw.n,
                               {static_cast<std::uint64_t>(mask)});
    acc += wo_support[mask] / sw.w_bar[mask];
  }
  return acc / static_cast<double>(std::size_t(1) << (2 * sw.n));
}

double noisy_shadow_norm_pauli(const WTable& w_noisy, const WTable& w_u, const PauliLabel& a,
                               double floor) {
  if (w_noisy.n != w_u.n || a.n != w_noisy.n)
    throw std::invalid_argument("noisy_shadow_norm_pauli: size mismatch");
  const double wn = w_noisy.values.at_label(a);
  if (wn <= floor)
    throw NonInvertibleError("noisy_shadow_norm_pauli: coefficient at floor", w_noisy.n, {a.index()});
  return w_u.values.at_label(a) / (wn * wn);
}

double noisy_average_shadow_norm(const WTable& w_noisy, const WTable& w_u, const PauliObservable& obs,
                                 double floor) {
  if (w_noisy.n != w_u.n || obs.n != w_noisy.n)
    throw std::invalid_argument("noisy_average_shadow_norm: size mismatch");
  const RealFunctionOnVn wo = obs.squared_coefficients();
  double acc = 0.0;
  for (std::uint64_t idx = 0; idx < wo.size(); ++idx) {
    if (wo[idx] == 0.0) continue;
    const double wn = w_noisy.values[idx];
    if (wn <= floor)
      throw NonInvertibleError("noisy_average_shadow_norm: coefficient at floor under live W_O",
                               w_noisy.n, {idx});
    acc += w_u.values[idx] * wo[idx] / (wn * wn);
  }
  return acc / static_cast<double>(std::size_t(1) << (2 * w_noisy.n));
}

}  // namespace shadows
