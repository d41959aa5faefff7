// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include <cmath>
#include <doctest.h>

#include "shadows/shadow.hpp"

using namespace shadows;

namespace {

DensityMatrix ket0(int n) { return DensityMatrix::from_pure(PureState::basis(n, 0)); }

}  // namespace

TEST_CASE("exact W tables match enumeration oracles") {
  // Pauli group, n=1: the 8-term enumeration gives (1, 1, 0, 0) in IZXY order.
  const WTable wp = compute_W_exact(EnsembleSpec::pauli_group(1));
  CHECK(wp.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(wp.values[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(wp.values[2]) <= 1e-12);
  CHECK(std::abs(wp.values[3]) <= 1e-12);

  for (int n = 1; n <= 2; ++n) {
    const WTable wl = compute_W_exact(EnsembleSpec::local_clifford(n));
    for (std::uint64_t idx = 0; idx < wl.values.size(); ++idx) {
      const double expect = std::pow(3.0, -PauliLabel::from_index(n, idx).weight());
      CHECK(wl.values[idx] == doctest::Approx(expect).epsilon(1e-10));
    }
    const WTable wg = compute_W_exact(EnsembleSpec::global_clifford(n));
    for (std::uint64_t idx = 1; idx < wg.values.size(); ++idx)
      CHECK(wg.values[idx] == doctest::Approx(1.0 / ((1 << n) + 1.0)).epsilon(1e-10));
    CHECK(wg.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("monte carlo W agrees with exact tables") {
  const EnsembleSpec spec = EnsembleSpec::local_clifford(1);
  const WTable exact = compute_W_exact(spec);
  const WTable mc = estimate_W_monte_carlo(spec, 20000, 123);
  CHECK(mc.values[0] == 1.0);  // Tr sigma = 1 identically in exact-average mode
  CHECK(mc.stderrs[0] == 0.0);
  for (std::size_t i = 1; i < mc.values.size(); ++i)
    CHECK(std::abs(mc.values[i] - exact.values[i]) <= 5.0 * mc.stderrs[i] + 1e-9);

  // Sampled-b mode is unbiased too, with larger error bars.
  const WTable mcs = estimate_W_monte_carlo(spec, 20000, 456, BMode::Sampled);
  for (std::size_t i = 1; i < mcs.values.size(); ++i)
    CHECK(std::abs(mcs.values[i] - exact.values[i]) <= 5.0 * mcs.stderrs[i] + 1e-9);

  // Haar single-qubit scrambling gives 1/3 on every non-identity label.
  const WTable haar = estimate_W_monte_carlo(EnsembleSpec::locally_scrambled_haar(1), 20000, 789);
  for (std::size_t i = 1; i < 4; ++i)
    CHECK(std::abs(haar.values[i] - 1.0 / 3.0) <= 5.0 * haar.stderrs[i]);
}

TEST_CASE("noisy W tables") {
  const EnsembleSpec spec = EnsembleSpec::local_clifford(2);
  const WTable base = compute_W_exact(spec);

  const WTable ident = compute_W_noisy(spec, QuantumChannel::identity(2));
  for (std::size_t i = 0; i < base.values.size(); ++i)
    CHECK(ident.values[i] == doctest::Approx(base.values[i]).epsilon(1e-12));

  const WTable dep = compute_W_noisy(spec, depolarizing_channel(0.3, 2));
  for (std::size_t i = 1; i < base.values.size(); ++i)
    CHECK(dep.values[i] == doctest::Approx(0.7 * base.values[i]).epsilon(1e-10));
  CHECK(dep.values[0] == doctest::Approx(1.0).epsilon(1e-10));

  // Bit flip p = 0.2 on the only qubit of a Pauli-group shadow: W[Z] = 0.6.
  const WTable flip = compute_W_noisy(EnsembleSpec::pauli_group(1), bit_flip_channel(0.2, 0, 1));
  CHECK(flip.values[PauliLabel::from_string("Z").index()] == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("norm-side W^u table") {
  const EnsembleSpec spec = EnsembleSpec::local_clifford(1);
  const WTable base = compute_W_exact(spec);
  // Unital noise: W^u equals the noiseless table.
  const WTable wu_dep = compute_W_u(spec, depolarizing_channel(0.6, 1));
  for (std::size_t i = 0; i < base.values.size(); ++i)
    CHECK(wu_dep.values[i] == doctest::Approx(base.values[i]).epsilon(1e-12));

  const WTable wu_id = compute_W_u(spec, QuantumChannel::identity(1));
  for (std::size_t i = 0; i < base.values.size(); ++i)
    CHECK(wu_id.values[i] == doctest::Approx(base.values[i]).epsilon(1e-12));

  // Amplitude damping on the Pauli group: diag(Lambda[I]) = (1+g, 1-g) gives
  // W^u = (1, 1, 0, 0) by direct 8-term enumeration.
  const WTable wu_ad = compute_W_u(EnsembleSpec::pauli_group(1), amplitude_damping_channel(0.4, 0, 1));
  CHECK(wu_ad.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(wu_ad.values[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(wu_ad.values[2]) <= 1e-12);
  CHECK(std::abs(wu_ad.values[3]) <= 1e-12);
}

TEST_CASE("inversion and its floor") {
  const WTable wl = compute_W_exact(EnsembleSpec::local_clifford(2));
  const ReconstructionMap recon = invert_W(wl);
  for (std::uint64_t idx = 0; idx < wl.values.size(); ++idx) {
    const double expect = std::pow(3.0, PauliLabel::from_index(2, idx).weight());
    CHECK(recon.inverse_coeffs[idx] == doctest::Approx(expect).epsilon(1e-10));
    CHECK(recon.inverse_coeffs[idx] >= 1.0 - 1e-9);
  }
  CHECK(recon.inverse_coeffs[0] == doctest::Approx(1.0));

  try {
    invert_W(compute_W_exact(EnsembleSpec::pauli_group(2)));
    FAIL("expected NonInvertibleError");
  } catch (const NonInvertibleError& e) {
    // Exactly the labels with an X or Y component are offenders.
    CHECK(e.label_indices.size() == 16 - 4);
    for (std::uint64_t idx : e.label_indices) CHECK(PauliLabel::from_index(2, idx).x != 0);
  }

  // A statistically-zero Monte Carlo entry is rejected, not inverted.
  WTable mc = estimate_W_monte_carlo(EnsembleSpec::pauli_group(1), 2000, 99);
  CHECK_THROWS_AS(invert_W(mc), NonInvertibleError);
}

TEST_CASE("snapshot realization") {
  // draw = I, b = 0 gives |0><0|.
  UnitaryDraw id{EnsembleKind::PauliGroup, 1, {Gate{"pauli", {0}, {0.0}}}};
  const DensityMatrix s0 = realize_snapshot(Snapshot{id, 0});
  CHECK(max_abs_diff(s0.m, ket0(1).m) == 0.0);

  // A Hadamard draw with outcome 0 gives |+><+|.
  const double s = 1.0 / std::sqrt(2.0);
  UnitaryDraw had{EnsembleKind::LocallyScrambledHaar, 1, {Gate{"u1", {0}, {s, 0, s, 0, s, 0, -s, 0}}}};
  const DensityMatrix plus = realize_snapshot(Snapshot{had, 0});
  Mat expect(2);
  expect(0, 0) = expect(0, 1) = expect(1, 0) = expect(1, 1) = 0.5;
  CHECK(max_abs_diff(plus.m, expect) <= 1e-14);
  CHECK(trace(plus.m).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("snapshot collection basics") {
  const EnsembleSpec spec = EnsembleSpec::pauli_group(1);
  const SnapshotSet set = collect_snapshots(ket0(1), spec, 2000, 7);
  CHECK(set.snapshots.size() == 2000);
  // Pauli rotations of |0><0| keep Z-basis outcomes deterministic: drawing I
  // or Z leaves |0>, drawing X or Y flips it.
  for (const auto& snap : set.snapshots) {
    const double code = snap.draw.gates[0].params[0];
    if (code == 0.0 || code == 1.0) CHECK(snap.outcome == 0);
    if (code == 2.0 || code == 3.0) CHECK(snap.outcome == 1);
  }

  // Identical seeds give identical sets.
  const SnapshotSet again = collect_snapshots(ket0(1), spec, 2000, 7);
  for (std::size_t i = 0; i < set.snapshots.size(); ++i) {
    CHECK(set.snapshots[i].draw == again.snapshots[i].draw);
    CHECK(set.snapshots[i].outcome == again.snapshots[i].outcome);
  }

  // Maximally mixed input: outcome bits are fair coins.
  const SnapshotSet mixed = collect_snapshots(DensityMatrix::maximally_mixed(2),
                                              EnsembleSpec::local_clifford(2), 100000, 11);
  int ones0 = 0, ones1 = 0;
  for (const auto& snap : mixed.snapshots) {
    ones0 += snap.outcome & 1;
    ones1 += (snap.outcome >> 1) & 1;
  }
  const double sigma = std::sqrt(100000.0 * 0.25);
  CHECK(std::abs(ones0 - 50000.0) <= 5.0 * sigma);
  CHECK(std::abs(ones1 - 50000.0) <= 5.0 * sigma);
}

TEST_CASE("single-snapshot estimates") {
  const EnsembleSpec spec = EnsembleSpec::local_clifford(1);
  const ReconstructionMap recon = invert_W(compute_W_exact(spec));

  UnitaryDraw id_draw{EnsembleKind::LocalClifford, 1, {Gate{"c1", {0}, {0.0}}}};
  REQUIRE(max_abs_diff(realize(id_draw).m, Mat::identity(2)) <= 1e-12);
  const Snapshot snap{id_draw, 0};

  CHECK(snapshot_estimate(snap, recon, PauliObservable::from_string("I")) == 1.0);
  CHECK(snapshot_estimate(snap, recon, PauliObservable::from_string("Z")) == doctest::Approx(3.0));
  CHECK(snapshot_estimate(snap, recon, PauliObservable::from_string("X")) == doctest::Approx(0.0));
  CHECK_THROWS_AS(snapshot_estimate(snap, recon, PauliObservable::from_string("XX")), std::invalid_argument);
}

TEST_CASE("observable estimation over snapshot sets") {
  const EnsembleSpec spec = EnsembleSpec::local_clifford(1);
  const ReconstructionMap recon = invert_W(compute_W_exact(spec));
  const SnapshotSet set = collect_snapshots(ket0(1), spec, 100000, 13);

  const EstimateReport z = estimate_observable(set, recon, PauliObservable::from_string("Z"));
  CHECK(std::abs(z.value - 1.0) <= 5.0 * z.stderr_value);

  const EstimateReport one = estimate_observable(set, recon, PauliObservable::from_string("I"));
  CHECK(one.value == 1.0);
  CHECK(one.stderr_value == 0.0);

  const SnapshotSet mixed = collect_snapshots(DensityMatrix::maximally_mixed(1), spec, 50000, 17);
  const EstimateReport x = estimate_observable(mixed, recon, PauliObservable::from_string("X"));
  CHECK(std::abs(x.value) <= 5.0 * x.stderr_value);

  // Median of means: valid batch counts only.
  CHECK_THROWS_AS(estimate_observable(set, recon, PauliObservable::from_string("Z"),
                                      Strategy::median_of_means(100001)),
                  std::invalid_argument);
  const EstimateReport mom =
      estimate_observable(set, recon, PauliObservable::from_string("Z"), Strategy::median_of_means(9));
  CHECK(std::abs(mom.value - 1.0) <= 0.1);

  SnapshotSet empty;
  empty.spec = spec;
  CHECK_THROWS_AS(estimate_observable(empty, recon, PauliObservable::from_string("Z")),
                  std::invalid_argument);
}

TEST_CASE("averaged shadows") {
  const EnsembleSpec spec = EnsembleSpec::local_clifford(1);
  const ReconstructionMap recon = invert_W(compute_W_exact(spec));

  const SnapshotSet one = collect_snapshots(ket0(1), spec, 1, 3);
  const DensityMatrix single = average_shadow_estimate(one, recon);
  CHECK(trace(single.m).real() == 1.0);  // exact: coefficients carry W[0] = 1
  CHECK(is_hermitian(single.m, 0.0));

  const SnapshotSet set = collect_snapshots(ket0(1), spec, 20000, 29);
  const RealFunctionOnVn coeffs = average_shadow_coefficients(set, recon);
  for (std::uint64_t idx = 0; idx < 4; ++idx) {
    const EstimateReport rep =
        estimate_observable(set, recon, PauliObservable::single(PauliLabel::from_index(1, idx)));
    CHECK(coeffs[idx] == rep.value);  // bit-exact shared path
  }
  const DensityMatrix avg = average_shadow_estimate(set, recon);
  // Entrywise close to |0><0| within a few predicted standard errors.
  const EstimateReport z = estimate_observable(set, recon, PauliObservable::from_string("Z"));
  CHECK(max_abs_diff(avg.m, ket0(1).m) <= 5.0 * z.stderr_value + 1e-3);
}

TEST_CASE("noisy collection with the matching noisy table is unbiased") {
  const EnsembleSpec spec = EnsembleSpec::local_clifford(1);
  const QuantumChannel noise = depolarizing_channel(0.3, 1);
  const ReconstructionMap recon = invert_W(compute_W_noisy(spec, noise));
  const SnapshotSet set =
      collect_snapshots(ket0(1), spec, 100000, 37, noise, "depolarizing:p=0.3");
  CHECK(set.noise_tag == "depolarizing:p=0.3");
  const EstimateReport z = estimate_observable(set, recon, PauliObservable::from_string("Z"));
  CHECK(std::abs(z.value - 1.0) <= 5.0 * z.stderr_value);
  // The noiseless table would be biased low by the depolarizing factor.
  const ReconstructionMap plain = invert_W(compute_W_exact(spec));
  const EstimateReport biased = estimate_observable(set, plain, PauliObservable::from_string("Z"));
  CHECK(std::abs(biased.value - 0.7) <= 5.0 * biased.stderr_value);
}

TEST_CASE("exact unbiasedness by full enumeration") {
  Rng rng(41);
  for (const auto& spec : {EnsembleSpec::local_clifford(1), EnsembleSpec::local_clifford(2)}) {
    const ReconstructionMap recon = invert_W(compute_W_exact(spec));
    for (int rep = 0; rep < 5; ++rep) {
      const DensityMatrix rho(spec.n, ginibre_density(std::size_t(1) << spec.n, rng));
      const DensityMatrix back = enumerate_reconstruction(spec, rho, recon);
      CHECK(max_abs_diff(back.m, rho.m) <= 1e-10);
    }
  }
}

TEST_CASE("W table file invariants") {
  const WTable w = compute_W_exact(EnsembleSpec::local_clifford(1));
  CHECK_NOTHROW(w.validate(true));
  WTable broken = w;
  broken.values[0] = 0.5;
  CHECK_THROWS_AS(broken.validate(true), std::invalid_argument);
}
