// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef SHADOWS_ENSEMBLE_HPP_
#define SHADOWS_ENSEMBLE_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "shadows/sim.hpp"

namespace shadows {

/// One primitive in a draw's gate list. Vocabulary:
///   pauli  [q]     params {code}        code 0..3 = I,Z,X,Y
///   c1     [q]     params {k}           k-th canonical single-qubit Clifford
///   cliff2 [q0,q1] params {k}           k-th canonical two-qubit Clifford
///   u1     [q]     params {8 reals}     2x2 unitary entries, row-major re,im
///   u2     [qa,qb] params {32 reals}    4x4 unitary entries
///   dense  [0..n)  params {2*4^n reals} explicit matrix (custom ensembles)
struct Gate {
  std::string name;
  std::vector<int> qubits;
  std::vector<double> params;

  bool operator==(const Gate& o) const = default;
};

enum class EnsembleKind {
  PauliGroup,
  LocalClifford,
  GlobalClifford,
  LocallyScrambledHaar,
  RandomLocalCircuit,
  Custom,
};

/// Compact record of one sampled unitary: the ensemble kind plus a gate list
/// that re-realizes the matrix deterministically. Gates are listed in
/// application order (first entry acts first on the ket).
struct UnitaryDraw {
  EnsembleKind kind = EnsembleKind::PauliGroup;
  int n = 1;
  std::vector<Gate> gates;

  bool operator==(const UnitaryDraw& o) const = default;
};

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::PauliGroup;
  int n = 1;
  int depth = 1;                                // RandomLocalCircuit only
  std::vector<std::pair<Mat, double>> custom;   // Custom only

  static EnsembleSpec pauli_group(int n);
  static EnsembleSpec local_clifford(int n);
  static EnsembleSpec global_clifford(int n);
  static EnsembleSpec locally_scrambled_haar(int n);
  static EnsembleSpec random_local_circuit(int n, int depth);
  static EnsembleSpec custom_ensemble(int n, std::vector<std::pair<Mat, double>> elems);

  bool enumerable() const;
  std::string describe() const;
};

/// The 24 single-qubit Cliffords, generated by closure from {H, S} with
/// canonical phase normalization; the order is the discovery order and is
/// part of the serialization contract for "c1" gates.
const std::vector<Mat>& clifford1_table();

/// The 11520 two-qubit Cliffords (up to phase), closure of {H0, H1, S0, S1, CNOT01}.
const std::vector<Mat>& clifford2_table();

UnitaryDraw sample(const EnsembleSpec& spec, Rng& rng);

UnitaryMatrix realize(const UnitaryDraw& draw, int dense_limit = kDefaultDenseLimit);

/// All (draw, probability) pairs of a finite ensemble. Throws
/// NotEnumerableError for continuous kinds.
std::vector<std::pair<UnitaryDraw, double>> enumerate_ensemble(const EnsembleSpec& spec);

enum class InvarianceMode { Exact, Statistical };

struct InvarianceReport {
  bool pass = false;
  double max_deviation = 0.0;
  std::string detail;
};

/// Exact mode: the multiset of unitaries (up to global phase) is closed
/// under right multiplication by every P_sigma with matching probabilities.
/// Statistical mode: W estimates and frame-probe averages from independent
/// sample halves of {U} and {U P_sigma} agree within tol.
InvarianceReport check_pauli_invariance(const EnsembleSpec& spec, InvarianceMode mode,
                                        std::uint64_t samples = 10000, double tol = 1e-2,
                                        std::uint64_t seed = 1);

}  // namespace shadows

#endif  // SHADOWS_ENSEMBLE_HPP_
