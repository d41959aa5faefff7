// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef SHADOWS_DENSE_HPP_
#define SHADOWS_DENSE_HPP_

#include <complex>
#include <cstdint>
#include <vector>

#include "shadows/rng.hpp"

namespace shadows {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

/// Dense square complex matrix, row-major. Sized for desk-scale qubit
/// counts; all heavy lifting stays O(dim^2)..O(dim^3).
struct Mat {
  std::size_t dim = 0;
  CVec a;

  Mat() = default;
  explicit Mat(std::size_t d) : dim(d), a(d * d, cplx(0.0, 0.0)) {}

  cplx& operator()(std::size_t i, std::size_t j) { return a[i * dim + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a[i * dim + j]; }

  static Mat identity(std::size_t d) {
    Mat m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
  }
};

Mat mul(const Mat& a, const Mat& b);
Mat add(const Mat& a, const Mat& b);
Mat scale(const Mat& a, cplx s);
Mat dagger(const Mat& a);
Mat transpose(const Mat& a);
Mat conjugate(const Mat& a);
cplx trace(const Mat& a);
CVec matvec(const Mat& a, const CVec& v);
Mat outer(const CVec& ket);  // |v><v|

/// kron(high, low): `high` indexes the most significant bits of the result.
/// With qubit 0 stored in the least significant bit, an operator A on qubit 1
/// and B on qubit 0 has dense form kron(A, B).
Mat kron(const Mat& high, const Mat& low);

double max_abs_diff(const Mat& a, const Mat& b);
bool is_hermitian(const Mat& a, double tol);
bool is_unitary(const Mat& a, double tol);

/// Scatter the low bits of `value` into the positions set in `mask`.
std::uint64_t deposit_bits(std::uint64_t value, std::uint32_t mask);
/// Gather the bits of `value` at the positions set in `mask`, compacted.
std::uint64_t extract_bits(std::uint64_t value, std::uint32_t mask);

/// Trace out the qubits set in `traced_mask` (qubit 0 = bit 0 = least
/// significant index bit). Kept qubits retain their relative order.
Mat partial_trace(const Mat& rho, int n, std::uint32_t traced_mask);

/// Expand a k-qubit gate to the full 2^n space. `qubits[j]` receives the
/// gate's own index bit j.
Mat embed_gate(const Mat& gate, const std::vector<int>& qubits, int n);

/// Haar-distributed d x d unitary (Ginibre + modified Gram-Schmidt; the
/// positive-diagonal QR convention makes Q exactly Haar).
Mat haar_unitary(std::size_t d, Rng& rng);

/// Random density matrix from the Ginibre ensemble: G G^dag / Tr.
Mat ginibre_density(std::size_t d, Rng& rng);

/// Random Haar pure state of dimension d.
CVec haar_ket(std::size_t d, Rng& rng);

}  // namespace shadows

#endif  // SHADOWS_DENSE_HPP_
