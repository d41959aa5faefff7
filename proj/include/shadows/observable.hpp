// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef SHADOWS_OBSERVABLE_HPP_
#define SHADOWS_OBSERVABLE_HPP_

#include <string>
#include <utility>
#include <vector>

#include "shadows/pauli.hpp"
#include "shadows/vn.hpp"

namespace shadows {

/// Real linear combination of Pauli operators, O = sum_a o_a P_a. The
/// expression grammar is `coef*PAULISTRING` terms joined by `+`/`-`,
/// e.g. "0.5*ZI + 1.5*XX"; a bare string means coefficient 1.
struct PauliObservable {
  int n = 1;
  std::vector<std::pair<PauliLabel, double>> terms;  // unique labels

  static PauliObservable single(const PauliLabel& a, double coeff = 1.0);
  static PauliObservable from_string(const std::string& expr);
  /// Projects a dense Hermitian matrix onto real Pauli coefficients; throws
  /// if any coefficient has imaginary residue above `imag_tol`.
  static PauliObservable from_dense(const Mat& m, int n, double imag_tol = 1e-10);

  std::string to_string() const;
  double coefficient(const PauliLabel& a) const;
  double identity_coefficient() const;
  /// O - Tr(O) I / 2^n, i.e. the identity term dropped.
  PauliObservable traceless() const;
  Mat dense(int dense_limit = kDefaultDenseLimit) const;
  /// W_O[a] = |Tr(O P_a)|^2 = 4^n o_a^2 as a dense table.
  RealFunctionOnVn squared_coefficients() const;
};

}  // namespace shadows

#endif  // SHADOWS_OBSERVABLE_HPP_
