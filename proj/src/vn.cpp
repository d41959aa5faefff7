// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "shadows/vn.hpp"

#include <stdexcept>

namespace shadows {

RealFunctionOnVn::RealFunctionOnVn(int n_, double fill) : n(n_) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("RealFunctionOnVn: n out of range");
  v.assign(std::size_t(1) << (2 * n), fill);
}

namespace {

// Single-qubit character kernel K[u][x] = (-1)^{<u,x>_s} in code order
// I, Z, X, Y. The kernel is symmetric, so forward and inverse transforms
// share it.
constexpr int kKernel[4][4] = {
    {1, 1, 1, 1},    // u = I
    {1, 1, -1, -1},  // u = Z: parity of x-component
    {1, -1, 1, -1},  // u = X: parity of z-component
    {1, -1, -1, 1},  // u = Y
};

RealFunctionOnVn apply_kernel(const RealFunctionOnVn& f) {
  if (f.v.size() != (std::size_t(1) << (2 * f.n))) throw std::invalid_argument("malformed V^n table");
  RealFunctionOnVn out = f;
  std::size_t stride = 1;
  for (int q = 0; q < f.n; ++q, stride *= 4) {
    for (std::size_t base = 0; base < out.v.size(); base += stride * 4) {
      for (std::size_t off = 0; off < stride; ++off) {
        double s[4];
        for (int c = 0; c < 4; ++c) s[c] = out.v[base + off + stride * c];
        for (int u = 0; u < 4; ++u) {
          double acc = 0.0;
          for (int c = 0; c < 4; ++c) acc += kKernel[u][c] * s[c];
          out.v[base + off + stride * u] = acc;
        }
      }
    }
  }
  return out;
}

}  // namespace

RealFunctionOnVn symplectic_fourier(const RealFunctionOnVn& f) {
  RealFunctionOnVn out = apply_kernel(f);
  const double norm = 1.0 / static_cast<double>(std::size_t(1) << (2 * f.n));
  for (auto& x : out.v) x *= norm;
  return out;
}

RealFunctionOnVn inverse_symplectic_fourier(const RealFunctionOnVn& g) {
  return apply_kernel(g);
}

double subset_moebius_sum(const std::function<double(std::uint32_t)>& h, const SupportSet& S,
                          bool signed_rule) {
  const int s_size = S.size();
  double acc = 0.0;
  std::uint32_t sub = S.mask;
  for (;;) {
    double term = h(sub);
    if (signed_rule && ((s_size - __builtin_popcount(sub)) & 1)) term = -term;
    acc += term;
    if (sub == 0) break;
    sub = (sub - 1) & S.mask;
  }
  return acc;
}

}  // namespace shadows
