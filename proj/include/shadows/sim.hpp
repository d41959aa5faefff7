// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef SHADOWS_SIM_HPP_
#define SHADOWS_SIM_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shadows/dense.hpp"
#include "shadows/pauli.hpp"
#include "shadows/rng.hpp"
#include "shadows/vn.hpp"

namespace shadows {

/// Bitstring convention used throughout: bit i of an outcome word is the
/// measured value of qubit i, and qubit 0 is the least significant bit of
/// state indices. Rendered as text, character j (from the left) is qubit j.
std::string bits_to_string(std::uint32_t bits, int n);
std::uint32_t bits_from_string(const std::string& s);

struct PureState {
  int n = 1;
  CVec amp;

  PureState() = default;
  PureState(int n_, CVec amp_);
  static PureState basis(int n, std::uint32_t bits);
};

struct DensityMatrix {
  int n = 1;
  Mat m;

  DensityMatrix() = default;
  DensityMatrix(int n_, Mat m_);  // validates Hermiticity
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int n);
};

struct UnitaryMatrix {
  int n = 1;
  Mat m;

  UnitaryMatrix() = default;
  UnitaryMatrix(int n_, Mat m_, double tol = 1e-10);  // validates U^dag U = I
};

/// Trace-preserving channel in Kraus form. Pauli channels additionally carry
/// their error-probability vector so analytic cross-checks can bypass the
/// Kraus representation.
struct QuantumChannel {
  int n = 1;
  std::vector<Mat> kraus;
  std::optional<RealFunctionOnVn> pauli_probs;

  QuantumChannel() = default;
  QuantumChannel(int n_, std::vector<Mat> kraus_, double tol = 1e-10);
  static QuantumChannel identity(int n);
};

/// Choi-Jamiolkowski state J(T) = (id x T)|Psi><Psi| on 2n qubits. The input
/// leg lives on qubits 0..n-1 (low bits), the output leg on qubits n..2n-1.
struct ChoiState {
  int n = 1;  // qubits per leg
  DensityMatrix state;
};

PureState apply_unitary(const PureState& psi, const UnitaryMatrix& u);
DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryMatrix& u);

std::vector<double> born_probabilities(const PureState& psi);
std::vector<double> born_probabilities(const DensityMatrix& rho);

std::uint32_t measure(const PureState& psi, Rng& rng);
std::uint32_t measure(const DensityMatrix& rho, Rng& rng);

/// Tr(rho P_a); asserts the value is real to tolerance and returns the real part.
double pauli_expectation(const DensityMatrix& rho, const PauliLabel& a, double tol = 1e-10);

DensityMatrix apply_channel(const DensityMatrix& rho, const QuantumChannel& ch, bool adjoint = false);
Mat apply_channel_mat(const Mat& rho, const QuantumChannel& ch, bool adjoint = false);

/// Global depolarizing channel D_p[rho] = (1-p) rho + p Tr(rho) I / 2^n.
QuantumChannel depolarizing_channel(double p, int n);
/// Bit flip with probability p on one qubit of an n-qubit register.
QuantumChannel bit_flip_channel(double p, int qubit, int n);
/// Amplitude damping (non-unital) with rate gamma on one qubit.
QuantumChannel amplitude_damping_channel(double gamma, int qubit, int n);
/// Pauli channel T[rho] = sum_a p_a P_a rho P_a from canonical-order probabilities.
QuantumChannel pauli_channel(const RealFunctionOnVn& probs, double tol = 1e-10);
/// Random Pauli channel with Dirichlet(1) error probabilities.
QuantumChannel random_pauli_channel(int n, Rng& rng);

bool channel_is_unital(const QuantumChannel& ch, double tol = 1e-10);

ChoiState choi_state(const QuantumChannel& ch);

/// Eigenvalues lambda_b of a Pauli channel, T[P_b] = lambda_b P_b; the
/// inverse symplectic Fourier transform of the error probabilities.
RealFunctionOnVn pauli_channel_eigenvalues(const RealFunctionOnVn& probs);

/// Tr(sigma_A^2) with sigma_A the reduced state on subset A; equals
/// exp(-S^(2)_A). Returns 1 for A = {}.
double renyi2_purity(const DensityMatrix& rho, const SupportSet& a);

}  // namespace shadows

#endif  // SHADOWS_SIM_HPP_
