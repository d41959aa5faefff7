// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef SHADOWS_PAULI_HPP_
#define SHADOWS_PAULI_HPP_

#include <cstdint>
#include <string>

#include "shadows/dense.hpp"
#include "shadows/errors.hpp"

namespace shadows {

inline constexpr int kMaxQubits = 16;

/// Point a in V^n = (Z2 x Z2)^n indexing a Pauli operator. Per qubit the
/// convention is P_(x,z) = i^{xz} X^x Z^z, i.e. (0,0)=I, (0,1)=Z, (1,0)=X,
/// (1,1)=Y. Bit i of `x`/`z` belongs to qubit i.
///
/// Canonical table index: qubit 0 is the least significant base-4 digit,
/// with per-qubit codes I=0, Z=1, X=2, Y=3 (code = 2x+z). Written as a
/// string, character j (from the left) is qubit j.
struct PauliLabel {
  int n = 1;
  std::uint32_t x = 0;
  std::uint32_t z = 0;

  static PauliLabel identity(int n);
  static PauliLabel from_index(int n, std::uint64_t index);
  static PauliLabel from_string(const std::string& s);

  std::uint64_t index() const;
  std::string to_string() const;

  std::uint32_t support_mask() const { return x | z; }
  int weight() const { return __builtin_popcount(support_mask()); }
  /// Number of Y components; decides the sign of P^T = (-1)^{#Y} P.
  int y_count() const { return __builtin_popcount(x & z); }
  bool is_identity() const { return (x | z) == 0; }

  bool operator==(const PauliLabel& o) const { return n == o.n && x == o.x && z == o.z; }
  bool operator!=(const PauliLabel& o) const { return !(*this == o); }
};

/// A Pauli operator together with an exact fourth-root-of-unity phase,
/// stored as the exponent k of i^k. Products of Paulis close on this set.
struct PhasedPauli {
  PauliLabel label;
  std::uint8_t phase_pow = 0;  // i^phase_pow

  cplx phase() const;
  std::string to_string() const;
  static PhasedPauli from_string(const std::string& s);
};

/// Subset S of [n] as a bit mask (qubit i = bit i).
struct SupportSet {
  int n = 1;
  std::uint32_t mask = 0;

  SupportSet() = default;
  SupportSet(int n_, std::uint32_t mask_);
  int size() const { return __builtin_popcount(mask); }
  SupportSet complement() const { return SupportSet(n, ~mask & ((1u << n) - 1u)); }
};

/// Exact product r = p * q, i.e. dense_matrix(r) == dense_matrix(p) * dense_matrix(q).
PhasedPauli pauli_compose(const PhasedPauli& p, const PhasedPauli& q);

/// Symplectic inner product <a,b>_s = sum_i (x_i z'_i - z_i x'_i) mod 2.
/// Its parity decides commutation: (-1)^{<a,b>_s} = +1 iff P_a P_b = P_b P_a.
int symplectic_inner(const PauliLabel& a, const PauliLabel& b);

/// Sign s = (-1)^{<a,c>_s} with P_c P_a P_c^dag = s P_a.
int conjugate_sign(const PauliLabel& a, const PauliLabel& c);

/// Dense 2^n x 2^n matrix (Kronecker product, qubit 0 least significant).
Mat dense_matrix(const PhasedPauli& p, int dense_limit = kDefaultDenseLimit);
Mat pauli_matrix(const PauliLabel& a, int dense_limit = kDefaultDenseLimit);

/// <psi| P_a |psi> for a normalized ket; O(2^n), no dense matrix formed.
cplx pauli_ket_expectation(const PauliLabel& a, const CVec& psi);

/// Tr(rho P_a); O(2^n) row walk.
cplx pauli_trace_product(const PauliLabel& a, const Mat& rho);

/// The four single-qubit Paulis in canonical code order I, Z, X, Y.
const Mat& single_qubit_pauli(int code);

}  // namespace shadows

#endif  // SHADOWS_PAULI_HPP_
