// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include <cmath>
#include <doctest.h>
#include <map>

#include "shadows/ensemble.hpp"
#include "shadows/errors.hpp"

using namespace shadows;

TEST_CASE("clifford closure orders") {
  CHECK(clifford1_table().size() == 24);
  CHECK(clifford2_table().size() == 11520);
  for (const auto& u : clifford1_table()) CHECK(is_unitary(u, 1e-10));
}

TEST_CASE("enumeration sizes and probabilities") {
  const auto pauli2 = enumerate_ensemble(EnsembleSpec::pauli_group(2));
  CHECK(pauli2.size() == 16);
  for (const auto& [d, p] : pauli2) CHECK(p == doctest::Approx(1.0 / 16.0));

  CHECK(enumerate_ensemble(EnsembleSpec::local_clifford(1)).size() == 24);
  CHECK(enumerate_ensemble(EnsembleSpec::local_clifford(2)).size() == 576);
  CHECK(enumerate_ensemble(EnsembleSpec::global_clifford(1)).size() == 24);
  CHECK(enumerate_ensemble(EnsembleSpec::global_clifford(2)).size() == 11520);

  double total = 0.0;
  for (const auto& [d, p] : enumerate_ensemble(EnsembleSpec::local_clifford(2))) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(enumerate_ensemble(EnsembleSpec::locally_scrambled_haar(1)), NotEnumerableError);
  CHECK_THROWS_AS(enumerate_ensemble(EnsembleSpec::random_local_circuit(2, 2)), NotEnumerableError);
  CHECK(!EnsembleSpec::locally_scrambled_haar(2).enumerable());
}

TEST_CASE("realize basics") {
  // Identity Pauli draw realizes to the identity.
  UnitaryDraw id{EnsembleKind::PauliGroup, 2, {Gate{"pauli", {0}, {0.0}}, Gate{"pauli", {1}, {0.0}}}};
  CHECK(max_abs_diff(realize(id).m, Mat::identity(4)) == 0.0);

  // A u1 gate carrying Hadamard entries realizes to the standard Hadamard.
  const double s = 1.0 / std::sqrt(2.0);
  UnitaryDraw had{EnsembleKind::LocallyScrambledHaar, 1, {Gate{"u1", {0}, {s, 0, s, 0, s, 0, -s, 0}}}};
  Mat h(2);
  h(0, 0) = h(0, 1) = h(1, 0) = s;
  h(1, 1) = -s;
  CHECK(max_abs_diff(realize(had).m, h) <= 1e-15);

  CHECK_THROWS_AS(realize(UnitaryDraw{EnsembleKind::PauliGroup, 1, {Gate{"nope", {0}, {}}}}),
                  std::invalid_argument);
}

TEST_CASE("realized circuit draws equal the gate-by-gate product") {
  Rng rng(21);
  const EnsembleSpec spec = EnsembleSpec::random_local_circuit(3, 3);
  for (int rep = 0; rep < 5; ++rep) {
    const UnitaryDraw draw = sample(spec, rng);
    Mat acc = Mat::identity(8);
    for (const auto& g : draw.gates) {
      Mat gate;
      if (g.name == "u2") {
        Mat m(4);
        for (std::size_t i = 0; i < 16; ++i) m.a[i] = cplx(g.params[2 * i], g.params[2 * i + 1]);
        gate = embed_gate(m, g.qubits, 3);
      } else {
        Mat m(2);
        for (std::size_t i = 0; i < 4; ++i) m.a[i] = cplx(g.params[2 * i], g.params[2 * i + 1]);
        gate = embed_gate(m, g.qubits, 3);
      }
      acc = mul(gate, acc);
    }
    CHECK(max_abs_diff(realize(draw).m, acc) <= 1e-12);
    CHECK(is_unitary(realize(draw).m, 1e-9));
  }
}

TEST_CASE("sampling determinism and frequencies") {
  const EnsembleSpec spec = EnsembleSpec::pauli_group(1);
  Rng a(5), b(5);
  for (int i = 0; i < 50; ++i) CHECK(sample(spec, a) == sample(spec, b));

  // Each of I, X, Y, Z appears with frequency 1/4 within 5 sigma.
  Rng rng(17);
  std::map<double, int> counts;
  const int shots = 100000;
  for (int i = 0; i < shots; ++i) counts[sample(spec, rng).gates[0].params[0]] += 1;
  const double sigma = std::sqrt(shots * 0.25 * 0.75);
  for (const auto& [code, count] : counts) CHECK(std::abs(count - shots / 4.0) <= 5.0 * sigma);

  // Local Clifford marginals per qubit are uniform over the 24 elements.
  const EnsembleSpec lc2 = EnsembleSpec::local_clifford(2);
  std::vector<int> marginal(24, 0);
  Rng rng2(18);
  for (int i = 0; i < 48000; ++i)
    marginal[static_cast<std::size_t>(sample(lc2, rng2).gates[0].params[0])] += 1;
  const double mean = 48000.0 / 24.0;
  const double sigma24 = std::sqrt(48000.0 * (1.0 / 24.0) * (23.0 / 24.0));
  for (int c : marginal) CHECK(std::abs(c - mean) <= 5.0 * sigma24);
}

TEST_CASE("haar sampling produces unitaries") {
  Rng rng(9);
  for (int rep = 0; rep < 10; ++rep) {
    const UnitaryDraw d = sample(EnsembleSpec::locally_scrambled_haar(2), rng);
    CHECK(d.gates.size() == 2);
    CHECK(is_unitary(realize(d).m, 1e-10));
  }
}

TEST_CASE("global phases never reach the snapshot state") {
  Rng rng(31);
  const UnitaryDraw d = sample(EnsembleSpec::locally_scrambled_haar(1), rng);
  const Mat u = realize(d).m;
  const Mat pu = scale(u, std::exp(cplx(0.0, 0.7)));
  // sigma = U^dag |b><b| U is unchanged by a global phase on U.
  for (std::uint32_t b = 0; b < 2; ++b) {
    CVec k1(2), k2(2);
    for (std::size_t j = 0; j < 2; ++j) {
      k1[j] = std::conj(u(b, j));
      k2[j] = std::conj(pu(b, j));
    }
    CHECK(max_abs_diff(outer(k1), outer(k2)) <= 1e-14);
  }
}

TEST_CASE("exact pauli invariance of built-in ensembles") {
  for (const auto& spec : {EnsembleSpec::pauli_group(1), EnsembleSpec::pauli_group(2),
                           EnsembleSpec::local_clifford(2), EnsembleSpec::global_clifford(1)}) {
    const InvarianceReport rep = check_pauli_invariance(spec, InvarianceMode::Exact);
    CHECK(rep.pass);
    CHECK(rep.max_deviation <= 1e-9);
  }
}

TEST_CASE("custom ensembles") {
  const auto trivial = EnsembleSpec::custom_ensemble(1, {{Mat::identity(2), 1.0}});
  CHECK(!check_pauli_invariance(trivial, InvarianceMode::Exact).pass);

  // The Pauli group presented as a custom list passes.
  std::vector<std::pair<Mat, double>> elems;
  for (std::uint64_t idx = 0; idx < 4; ++idx)
    elems.emplace_back(pauli_matrix(PauliLabel::from_index(1, idx)), 0.25);
  CHECK(check_pauli_invariance(EnsembleSpec::custom_ensemble(1, elems), InvarianceMode::Exact).pass);

  CHECK_THROWS_AS(EnsembleSpec::custom_ensemble(1, {{Mat::identity(2), 0.5}}), std::invalid_argument);
}

TEST_CASE("statistical invariance probe accepts haar and rejects a fixed unitary") {
  const InvarianceReport good =
      check_pauli_invariance(EnsembleSpec::locally_scrambled_haar(1), InvarianceMode::Statistical, 4000, 2e-2, 7);
  CHECK(good.pass);
  // Odd qubit counts exercise the brickwork edge-qubit fill gates.
  const InvarianceReport odd =
      check_pauli_invariance(EnsembleSpec::random_local_circuit(3, 2), InvarianceMode::Statistical, 4000, 3e-2, 8);
  CHECK(odd.pass);
  Mat s(2);
  s(0, 0) = 1.0;
  s(1, 1) = cplx(0.0, 1.0);
  const auto fixed = EnsembleSpec::custom_ensemble(1, {{s, 1.0}});
  const InvarianceReport bad = check_pauli_invariance(fixed, InvarianceMode::Statistical, 4000, 2e-2, 7);
  CHECK(!bad.pass);
}
