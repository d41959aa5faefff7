// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include <cmath>
#include <doctest.h>

#include "shadows/analysis.hpp"

using namespace shadows;

namespace {

const EnsembleSpec kLc1 = EnsembleSpec::local_clifford(1);
const EnsembleSpec kLc2 = EnsembleSpec::local_clifford(2);

}  // namespace

TEST_CASE("single-pauli shadow norms") {
  const WTable w1 = compute_W_exact(kLc1);
  CHECK(shadow_norm_pauli(w1, PauliLabel::from_string("X")) == doctest::Approx(3.0));
  CHECK(shadow_norm_pauli(w1, PauliLabel::identity(1)) == doctest::Approx(1.0));

  const WTable wg = compute_W_exact(EnsembleSpec::global_clifford(2));
  CHECK(shadow_norm_pauli(wg, PauliLabel::from_string("XY")) == doctest::Approx(5.0));

  const WTable wp = compute_W_exact(EnsembleSpec::pauli_group(1));
  CHECK_THROWS_AS(shadow_norm_pauli(wp, PauliLabel::from_string("X")), NonInvertibleError);
}

TEST_CASE("average shadow norm formula") {
  const WTable w = compute_W_exact(kLc2);
  CHECK(average_shadow_norm(w, PauliObservable::from_string("ZI + IZ")) == doctest::Approx(6.0));
  CHECK(average_shadow_norm(w, PauliObservable::from_string("XY")) == doctest::Approx(9.0));
  CHECK(average_shadow_norm(w, PauliObservable::from_string("II")) == doctest::Approx(1.0));
  // Dead observable coefficients skip un-invertible labels.
  const WTable wp = compute_W_exact(EnsembleSpec::pauli_group(1));
  CHECK(average_shadow_norm(wp, PauliObservable::from_string("Z")) == doctest::Approx(1.0));
  CHECK_THROWS_AS(average_shadow_norm(wp, PauliObservable::from_string("X")), NonInvertibleError);
}

TEST_CASE("sample complexity bound arithmetic") {
  CHECK(sample_complexity_bound(3.0, 1, 0.1, std::exp(-1.0)) == 300);
  const auto s1 = sample_complexity_bound(9.0, 3, 0.1, 0.05);
  CHECK(s1 == static_cast<std::uint64_t>(std::ceil(std::log(60.0) * 900.0 - 1e-9)));
  CHECK(sample_complexity_bound(9.0, 6, 0.1, 0.05) > s1);
  CHECK_THROWS_AS(sample_complexity_bound(1.0, 1, 0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(sample_complexity_bound(1.0, 1, 0.5, 1.5), std::invalid_argument);
}

TEST_CASE("entanglement features") {
  // Pauli-group snapshots are computational product states: E[A] = 1.
  const EntanglementFeatureTable efp = entanglement_features(EnsembleSpec::pauli_group(2), AveragingMode::Exact);
  for (double v : efp.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  const EntanglementFeatureTable ef = entanglement_features(EnsembleSpec::global_clifford(2), AveragingMode::Exact);
  CHECK(ef.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  // 36 product and 24 maximally-entangled stabilizer states: mean single-site
  // purity (36 + 24/2) / 60 = 4/5.
  CHECK(ef.values[0b01] == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(ef.values[0b10] == doctest::Approx(0.8).epsilon(1e-10));

  // Monte-Carlo mode approaches the exact local-Clifford table.
  const EntanglementFeatureTable mc = entanglement_features(kLc2, AveragingMode::MonteCarlo, 4000, 5);
  const EntanglementFeatureTable exact = entanglement_features(kLc2, AveragingMode::Exact);
  for (std::size_t m = 0; m < exact.values.size(); ++m)
    CHECK(std::abs(mc.values[m] - exact.values[m]) <= 0.05);
}

TEST_CASE("support sums and the 3^|S| relation") {
  const SupportWTable sw = w_support_sums(compute_W_exact(kLc2));
  CHECK(sw.w_sum[0] == doctest::Approx(1.0));
  CHECK(sw.w_sum[0b01] == doctest::Approx(1.0));  // 3 labels of weight one at 1/3
  CHECK(sw.w_bar[0b01] == doctest::Approx(1.0 / 3.0));
  CHECK(sw.w_sum[0b11] == doctest::Approx(1.0));
  for (std::size_t m = 0; m < sw.w_sum.size(); ++m)
    CHECK(sw.w_sum[m] == doctest::Approx(sw.w_bar[m] * std::pow(3.0, __builtin_popcount(unsigned(m)))));

  const SupportWTable swp = w_support_sums(compute_W_exact(EnsembleSpec::pauli_group(1)));
  CHECK(swp.w_sum[1] == doctest::Approx(1.0));  // only Z contributes
}

TEST_CASE("entanglement features reproduce support sums") {
  for (const auto& spec : {EnsembleSpec::pauli_group(1), kLc1, kLc2, EnsembleSpec::global_clifford(2)}) {
    const auto from_ef = w_from_entanglement_features(entanglement_features(spec, AveragingMode::Exact));
    const SupportWTable sw = w_support_sums(compute_W_exact(spec));
    for (std::size_t m = 0; m < from_ef.size(); ++m)
      CHECK(from_ef[m] == doctest::Approx(sw.w_sum[m]).epsilon(1e-10));
  }
  // The all-ones feature table (Pauli-group case) gives W[S] = 1.
  EntanglementFeatureTable ones;
  ones.n = 2;
  ones.values.assign(4, 1.0);
  for (double v : w_from_entanglement_features(ones)) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("flatness across supports") {
  CHECK(flatness_check(compute_W_exact(kLc2), 1e-10).pass);
  CHECK(flatness_check(compute_W_exact(EnsembleSpec::global_clifford(2)), 1e-10).pass);
  const FlatnessReport bad = flatness_check(compute_W_exact(EnsembleSpec::pauli_group(1)), 1e-10);
  CHECK(!bad.pass);
  CHECK(bad.max_spread == doctest::Approx(1.0));
}

TEST_CASE("erasure-representation coefficients") {
  const SupportWTable sw = w_support_sums(compute_W_exact(kLc2));
  const RCoefficients rc = r_coefficients(sw);
  for (std::uint32_t s = 0; s < 4; ++s) {
    const int k = __builtin_popcount(s);
    CHECK(rc.values[s] == doctest::Approx(std::pow(3.0, 2 - k) * std::pow(-2.0, k)).epsilon(1e-10));
  }

  const SupportWTable sw1 = w_support_sums(compute_W_exact(kLc1));
  CHECK(r_coefficients(sw1).values[0] == doctest::Approx(3.0));

  SupportWTable dead = sw;
  dead.w_bar[1] = 0.0;
  CHECK_THROWS_AS(r_coefficients(dead), NonInvertibleError);
}

TEST_CASE("erasure map reproduces the diagonal reconstruction") {
  for (const auto& spec : {kLc1, kLc2, EnsembleSpec::global_clifford(2)}) {
    const WTable w = compute_W_exact(spec);
    const SupportWTable sw = w_support_sums(w);
    const RCoefficients rc = r_coefficients(sw);
    for (std::uint64_t idx = 0; idx < w.values.size(); ++idx) {
      const PauliLabel a = PauliLabel::from_index(spec.n, idx);
      const DensityMatrix mapped = apply_rs_map(rc, DensityMatrix{spec.n, pauli_matrix(a)});
      const Mat expect = scale(pauli_matrix(a), 1.0 / sw.w_bar[a.support_mask()]);
      CHECK(max_abs_diff(mapped.m, expect) <= 1e-10);
    }
    // The maximally mixed state is a fixed point: sum_S r_S = 1 telescopes.
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(spec.n);
    CHECK(max_abs_diff(apply_rs_map(rc, mixed).m, mixed.m) <= 1e-10);
  }
}

TEST_CASE("r coefficients from entanglement features") {
  for (const auto& spec : {EnsembleSpec::pauli_group(1), kLc1, kLc2}) {
    const RCoefficients via_ef =
        r_from_entanglement_features(entanglement_features(spec, AveragingMode::Exact));
    const RCoefficients via_w = r_coefficients(w_support_sums(compute_W_exact(spec)));
    for (std::size_t s = 0; s < via_ef.values.size(); ++s)
      CHECK(via_ef.values[s] == doctest::Approx(via_w.values[s]).epsilon(1e-10));
  }
  // E == 1, n=1, S = {}: the closed form gives 3.
  EntanglementFeatureTable ones;
  ones.n = 1;
  ones.values.assign(2, 1.0);
  CHECK(r_from_entanglement_features(ones).values[0] == doctest::Approx(3.0));
}

TEST_CASE("locally scrambled average norm") {
  const WTable w = compute_W_exact(kLc2);
  const SupportWTable sw = w_support_sums(w);
  CHECK(avg_shadow_norm_locally_scrambled(sw, PauliObservable::from_string("ZI")) == doctest::Approx(3.0));
  CHECK(avg_shadow_norm_locally_scrambled(sw, PauliObservable::from_string("YX")) == doctest::Approx(9.0));
  CHECK(avg_shadow_norm_locally_scrambled(sw, PauliObservable::from_string("II")) == doctest::Approx(1.0));
  const auto obs = PauliObservable::from_string("0.5*ZI + 2*XY - IZ");
  CHECK(avg_shadow_norm_locally_scrambled(sw, obs) == doctest::Approx(average_shadow_norm(w, obs)).epsilon(1e-10));
}

TEST_CASE("noisy shadow norms") {
  const WTable w = compute_W_exact(kLc1);
  const PauliLabel z = PauliLabel::from_string("Z");
  {
    const QuantumChannel noise = depolarizing_channel(0.5, 1);
    const WTable wn = compute_W_noisy(kLc1, noise);
    const WTable wu = compute_W_u(kLc1, noise);
    CHECK(noisy_shadow_norm_pauli(wn, wu, z) == doctest::Approx(12.0).epsilon(1e-10));
  }
  {
    const QuantumChannel noise = QuantumChannel::identity(1);
    const WTable wn = compute_W_noisy(kLc1, noise);
    const WTable wu = compute_W_u(kLc1, noise);
    CHECK(noisy_shadow_norm_pauli(wn, wu, z) == doctest::Approx(shadow_norm_pauli(w, z)).epsilon(1e-10));
  }
  {
    // Non-unital noise; values frozen from a direct 48-term enumeration.
    // Amplitude damping at gamma = 0.4 flattens to W_noisy = 0.2 while the
    // norm-side table stays at the noiseless 1/3 (Tr Lambda[I] = 2 and the
    // squared coefficients are outcome independent for this ensemble).
    const QuantumChannel noise = amplitude_damping_channel(0.4, 0, 1);
    const WTable wn = compute_W_noisy(kLc1, noise);
    const WTable wu = compute_W_u(kLc1, noise);
    for (std::size_t i = 1; i < 4; ++i) {
      CHECK(wn.values[i] == doctest::Approx(0.2).epsilon(1e-10));
      CHECK(wu.values[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    }
    CHECK(noisy_shadow_norm_pauli(wn, wu, z) == doctest::Approx(25.0 / 3.0).epsilon(1e-10));
    // The squared-estimator mean reproduces the ratio, for a pure input too.
    const DensityMatrix rho = DensityMatrix::from_pure(PureState::basis(1, 0));
    const EstimateReport rep = empirical_shadow_norm(kLc1, invert_W(wn), PauliObservable::single(z), rho,
                                                     50000, 83, noise);
    CHECK(std::abs(rep.value - 25.0 / 3.0) <= 5.0 * rep.stderr_value);
  }
}

TEST_CASE("noisy average norm matches the single-pauli norm term by term") {
  const QuantumChannel noise = depolarizing_channel(0.3, 2);
  const WTable wn = compute_W_noisy(kLc2, noise);
  const WTable wu = compute_W_u(kLc2, noise);
  const PauliLabel zi = PauliLabel::from_string("ZI");
  CHECK(noisy_average_shadow_norm(wn, wu, PauliObservable::single(zi)) ==
        doctest::Approx(noisy_shadow_norm_pauli(wn, wu, zi)).epsilon(1e-10));
  CHECK(noisy_average_shadow_norm(wn, wu, PauliObservable::from_string("ZI + IX")) ==
        doctest::Approx(6.0 / 0.49).epsilon(1e-10));
  // Identity noise reduces to the noiseless averaged norm.
  const QuantumChannel id = QuantumChannel::identity(2);
  const WTable wn0 = compute_W_noisy(kLc2, id);
  const WTable wu0 = compute_W_u(kLc2, id);
  const auto obs = PauliObservable::from_string("ZI + IZ");
  CHECK(noisy_average_shadow_norm(wn0, wu0, obs) ==
        doctest::Approx(average_shadow_norm(compute_W_exact(kLc2), obs)).epsilon(1e-10));
}

TEST_CASE("empirical norms match closed forms (small sample smoke)") {
  const ReconstructionMap recon = invert_W(compute_W_exact(kLc1));
  const DensityMatrix rho = DensityMatrix::from_pure(PureState::basis(1, 0));
  const EstimateReport rep =
      empirical_shadow_norm(kLc1, recon, PauliObservable::from_string("Z"), rho, 20000, 77);
  CHECK(std::abs(rep.value - 3.0) <= 5.0 * rep.stderr_value);
  const EstimateReport one =
      empirical_shadow_norm(kLc1, recon, PauliObservable::from_string("I"), rho, 100, 78);
  CHECK(one.value == 1.0);
}

TEST_CASE("observable parser and projection") {
  const auto obs = PauliObservable::from_string("0.5*ZI + 1.5*XX");
  CHECK(obs.n == 2);
  CHECK(obs.coefficient(PauliLabel::from_string("ZI")) == 0.5);
  CHECK(obs.coefficient(PauliLabel::from_string("XX")) == 1.5);

  const auto merged = PauliObservable::from_string("Z + Z - 0.5*Z");
  CHECK(merged.terms.size() == 1);
  CHECK(merged.coefficient(PauliLabel::from_string("Z")) == doctest::Approx(1.5));

  const auto neg = PauliObservable::from_string("-2*Y + 1e-1*X");
  CHECK(neg.coefficient(PauliLabel::from_string("Y")) == doctest::Approx(-2.0));
  CHECK(neg.coefficient(PauliLabel::from_string("X")) == doctest::Approx(0.1));

  CHECK_THROWS_AS(PauliObservable::from_string("Z + XX"), std::invalid_argument);
  CHECK_THROWS_AS(PauliObservable::from_string("2 Z"), std::invalid_argument);
  CHECK_THROWS_AS(PauliObservable::from_string(""), std::invalid_argument);

  const Mat dense = obs.dense();
  const auto back = PauliObservable::from_dense(dense, 2);
  CHECK(back.coefficient(PauliLabel::from_string("ZI")) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(back.coefficient(PauliLabel::from_string("XX")) == doctest::Approx(1.5).epsilon(1e-12));

  Mat nonherm(2);
  nonherm(0, 1) = 1.0;
  CHECK_THROWS_AS(PauliObservable::from_dense(nonherm, 1), std::invalid_argument);

  CHECK(obs.traceless().coefficient(PauliLabel::identity(2)) == 0.0);
  const auto with_id = PauliObservable::from_string("2*II + ZI");
  CHECK(with_id.identity_coefficient() == 2.0);
  CHECK(with_id.traceless().terms.size() == 1);
}
