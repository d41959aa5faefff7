// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "shadows/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace shadows {

Mat mul(const Mat& a, const Mat& b) {
  if (a.dim != b.dim) throw std::invalid_argument("mul: dimension mismatch");
  const std::size_t d = a.dim;
  Mat c(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < d; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Mat add(const Mat& a, const Mat& b) {
  if (a.dim != b.dim) throw std::invalid_argument("add: dimension mismatch");
  Mat c = a;
  for (std::size_t i = 0; i < c.a.size(); ++i) c.a[i] += b.a[i];
  return c;
}

Mat scale(const Mat& a, cplx s) {
  Mat c = a;
  for (auto& v : c.a) v *= s;
  return c;
}

Mat dagger(const Mat& a) {
  Mat c(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

Mat transpose(const Mat& a) {
  Mat c(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j) c(j, i) = a(i, j);
  return c;
}

Mat conjugate(const Mat& a) {
  Mat c = a;
  for (auto& v : c.a) v = std::conj(v);
  return c;
}

cplx trace(const Mat& a) {
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.dim; ++i) t += a(i, i);
  return t;
}

CVec matvec(const Mat& a, const CVec& v) {
  if (a.dim != v.size()) throw std::invalid_argument("matvec: dimension mismatch");
  CVec out(a.dim, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < a.dim; ++i) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < a.dim; ++j) acc += a(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

Mat outer(const CVec& ket) {
  Mat m(ket.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < ket.size(); ++j) m(i, j) = ket[i] * std::conj(ket[j]);
  return m;
}

Mat kron(const Mat& high, const Mat& low) {
  Mat c(high.dim * low.dim);
  for (std::size_t i = 0; i < high.dim; ++i)
    for (std::size_t j = 0; j < high.dim; ++j) {
      const cplx h = high(i, j);
      if (h == cplx(0.0, 0.0)) continue;
      for (std::size_t p = 0; p < low.dim; ++p)
        for (std::size_t q = 0; q < low.dim; ++q)
          c(i * low.dim + p, j * low.dim + q) = h * low(p, q);
    }
  return c;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  if (a.dim != b.dim) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.a.size(); ++i) m = std::max(m, std::abs(a.a[i] - b.a[i]));
  return m;
}

bool is_hermitian(const Mat& a, double tol) {
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = i; j < a.dim; ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
  return true;
}

bool is_unitary(const Mat& a, double tol) {
  return max_abs_diff(mul(dagger(a), a), Mat::identity(a.dim)) <= tol;
}

std::uint64_t deposit_bits(std::uint64_t value, std::uint32_t mask) {
  std::uint64_t out = 0;
  int src = 0;
  for (int bit = 0; mask >> bit; ++bit) {
    if ((mask >> bit) & 1u) {
      out |= ((value >> src) & 1ULL) << bit;
      ++src;
    }
  }
  return out;
}

std::uint64_t extract_bits(std::uint64_t value, std::uint32_t mask) {
  std::uint64_t out = 0;
  int dst = 0;
  for (int bit = 0; mask >> bit; ++bit) {
    if ((mask >> bit) & 1u) {
      out |= ((value >> bit) & 1ULL) << dst;
      ++dst;
    }
  }
  return out;
}

Mat partial_trace(const Mat& rho, int n, std::uint32_t traced_mask) {
  const std::uint32_t full = (n >= 32) ? 0xffffffffu : ((1u << n) - 1u);
  const std::uint32_t keep_mask = full & ~traced_mask;
  const int kept = __builtin_popcount(keep_mask);
  const int traced = __builtin_popcount(traced_mask & full);
  const std::size_t dk = std::size_t(1) << kept;
  const std::size_t dt = std::size_t(1) << traced;
  Mat out(dk);
  for (std::size_t r = 0; r < dk; ++r) {
    const std::uint64_t rk = deposit_bits(r, keep_mask);
    for (std::size_t c = 0; c < dk; ++c) {
      const std::uint64_t ck = deposit_bits(c, keep_mask);
      cplx acc = 0.0;
      for (std::size_t t = 0; t < dt; ++t) {
        const std::uint64_t tb = deposit_bits(t, traced_mask & full);
        acc += rho(rk | tb, ck | tb);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

Mat embed_gate(const Mat& gate, const std::vector<int>& qubits, int n) {
  const int k = static_cast<int>(qubits.size());
  if (gate.dim != (std::size_t(1) << k)) throw std::invalid_argument("embed_gate: gate dim / qubit count mismatch");
  std::uint32_t gate_mask = 0;
  for (int q : qubits) {
    if (q < 0 || q >= n) throw std::invalid_argument("embed_gate: qubit index out of range");
    gate_mask |= 1u << q;
  }
  if (__builtin_popcount(gate_mask) != k) throw std::invalid_argument("embed_gate: repeated qubit");
  const std::size_t dim = std::size_t(1) << n;
  const std::size_t rest = std::size_t(1) << (n - k);
  const std::uint32_t rest_mask = ((n >= 32) ? 0xffffffffu : ((1u << n) - 1u)) & ~gate_mask;
  Mat out(dim);
  for (std::size_t e = 0; e < rest; ++e) {
    const std::uint64_t eb = deposit_bits(e, rest_mask);
    for (std::size_t gi = 0; gi < gate.dim; ++gi) {
      std::uint64_t rb = eb;
      for (int j = 0; j < k; ++j) rb |= ((gi >> j) & 1ULL) << qubits[j];
      for (std::size_t gj = 0; gj < gate.dim; ++gj) {
        const cplx v = gate(gi, gj);
        if (v == cplx(0.0, 0.0)) continue;
        std::uint64_t cb = eb;
        for (int j = 0; j < k; ++j) cb |= ((gj >> j) & 1ULL) << qubits[j];
        out(rb, cb) = v;
      }
    }
  }
  return out;
}

Mat haar_unitary(std::size_t d, Rng& rng) {
  // Columns of a Ginibre matrix, orthonormalized in order. Modified
  // Gram-Schmidt yields the QR factor with positive diagonal R, for which Q
  // carries the Haar measure.
  std::vector<CVec> cols(d, CVec(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) cols[j][i] = cplx(rng.normal(), rng.normal());
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t p = 0; p < j; ++p) {
      cplx proj = 0.0;
      for (std::size_t i = 0; i < d; ++i) proj += std::conj(cols[p][i]) * cols[j][i];
      for (std::size_t i = 0; i < d; ++i) cols[j][i] -= proj * cols[p][i];
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < d; ++i) norm += std::norm(cols[j][i]);
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < d; ++i) cols[j][i] /= norm;
  }
  Mat u(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) u(i, j) = cols[j][i];
  return u;
}

Mat ginibre_density(std::size_t d, Rng& rng) {
  Mat g(d);
  for (auto& v : g.a) v = cplx(rng.normal(), rng.normal());
  Mat rho = mul(g, dagger(g));
  cplx t = trace(rho);
  for (auto& v : rho.a) v /= t.real();
  return rho;
}

CVec haar_ket(std::size_t d, Rng& rng) {
  CVec v(d);
  double norm = 0.0;
  for (auto& x : v) {
    x = cplx(rng.normal(), rng.normal());
    norm += std::norm(x);
  }
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  return v;
}

}  // namespace shadows
