// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef SHADOWS_VN_HPP_
#define SHADOWS_VN_HPP_

#include <functional>
#include <vector>

#include "shadows/pauli.hpp"

namespace shadows {

/// Dense real-valued function on V^n, indexed by the canonical Pauli label
/// order (qubit 0 least significant, per-qubit I=0, Z=1, X=2, Y=3).
struct RealFunctionOnVn {
  int n = 1;
  std::vector<double> v;

  RealFunctionOnVn() = default;
  RealFunctionOnVn(int n_, double fill = 0.0);

  std::size_t size() const { return v.size(); }
  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }
  double at_label(const PauliLabel& a) const { return v[a.index()]; }
};

/// f_hat(u) = E_{x in V^n}[ f(x) (-1)^{<u,x>_s} ], E the uniform average
/// 4^{-n} sum. Implemented as a per-qubit fast transform, O(n 4^n).
RealFunctionOnVn symplectic_fourier(const RealFunctionOnVn& f);

/// f(x) = sum_{u in V^n} g(u) (-1)^{<u,x>_s}; exact inverse of the above.
RealFunctionOnVn inverse_symplectic_fourier(const RealFunctionOnVn& g);

/// sum_{A subset S} (-1)^{|S|-|A|} h(A)  (signed_rule = true), or the plain
/// subset sum sum_{A subset S} h(A) (signed_rule = false). `h` is consulted
/// on every submask of S.
double subset_moebius_sum(const std::function<double(std::uint32_t)>& h, const SupportSet& S,
                          bool signed_rule = true);

}  // namespace shadows

#endif  // SHADOWS_VN_HPP_
