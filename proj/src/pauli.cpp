// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "shadows/pauli.hpp"

#include <array>
#include <stdexcept>

namespace shadows {

namespace {

void check_n(int n) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("qubit count must be in [1, 16]");
}

void check_same_n(int a, int b) {
  if (a != b) throw std::invalid_argument("Pauli size mismatch");
}

constexpr char kCodeChar[4] = {'I', 'Z', 'X', 'Y'};

int code_of_char(char c) {
  switch (c) {
    case 'I': return 0;
    case 'Z': return 1;
    case 'X': return 2;
    case 'Y': return 3;
    default: throw std::invalid_argument(std::string("invalid Pauli character '") + c + "'");
  }
}

}  // namespace

PauliLabel PauliLabel::identity(int n) {
  check_n(n);
  PauliLabel a;
  a.n = n;
  return a;
}

PauliLabel PauliLabel::from_index(int n, std::uint64_t index) {
  check_n(n);
  PauliLabel a;
  a.n = n;
  for (int i = 0; i < n; ++i) {
    const int code = static_cast<int>((index >> (2 * i)) & 3u);
    a.x |= static_cast<std::uint32_t>(code >> 1) << i;
    a.z |= static_cast<std::uint32_t>(code & 1) << i;
  }
  if (index >> (2 * n)) throw std::invalid_argument("Pauli index out of range");
  return a;
}

std::uint64_t PauliLabel::index() const {
  std::uint64_t idx = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t code = (((x >> i) & 1u) << 1) | ((z >> i) & 1u);
    idx |= code << (2 * i);
  }
  return idx;
}

PauliLabel PauliLabel::from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty Pauli string");
  check_n(static_cast<int>(s.size()));
  PauliLabel a;
  a.n = static_cast<int>(s.size());
  for (int i = 0; i < a.n; ++i) {
    const int code = code_of_char(s[static_cast<std::size_t>(i)]);
    a.x |= static_cast<std::uint32_t>(code >> 1) << i;
    a.z |= static_cast<std::uint32_t>(code & 1) << i;
  }
  return a;
}

std::string PauliLabel::to_string() const {
  std::string s(static_cast<std::size_t>(n), 'I');
  for (int i = 0; i < n; ++i) {
    const int code = static_cast<int>((((x >> i) & 1u) << 1) | ((z >> i) & 1u));
    s[static_cast<std::size_t>(i)] = kCodeChar[code];
  }
  return s;
}

cplx PhasedPauli::phase() const {
  switch (phase_pow & 3) {
    case 0: return cplx(1.0, 0.0);
    case 1: return cplx(0.0, 1.0);
    case 2: return cplx(-1.0, 0.0);
    default: return cplx(0.0, -1.0);
  }
}

std::string PhasedPauli::to_string() const {
  static const char* kPhase[4] = {"+", "+i", "-", "-i"};
  return std::string(kPhase[phase_pow & 3]) + label.to_string();
}

PhasedPauli PhasedPauli::from_string(const std::string& s) {
  std::size_t pos = 0;
  std::uint8_t pow = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    const bool minus = s[pos] == '-';
    ++pos;
    bool imag = pos < s.size() && s[pos] == 'i';
    if (imag) ++pos;
    pow = static_cast<std::uint8_t>((minus ? 2 : 0) + (imag ? 1 : 0));
  }
  PhasedPauli p;
  p.label = PauliLabel::from_string(s.substr(pos));
  p.phase_pow = pow;
  return p;
}

SupportSet::SupportSet(int n_, std::uint32_t mask_) : n(n_), mask(mask_) {
  check_n(n);
  if (mask >> n) throw std::invalid_argument("SupportSet mask has bits beyond n");
}

PhasedPauli pauli_compose(const PhasedPauli& p, const PhasedPauli& q) {
  check_same_n(p.label.n, q.label.n);
  const std::uint32_t x1 = p.label.x, z1 = p.label.z;
  const std::uint32_t x2 = q.label.x, z2 = q.label.z;
  const std::uint32_t x3 = x1 ^ x2, z3 = z1 ^ z2;
  // Per qubit: i^{x1 z1} X^{x1} Z^{z1} i^{x2 z2} X^{x2} Z^{z2}
  //          = i^{x1 z1 + x2 z2 + 2 z1 x2 - x3 z3} P_(x3, z3).
  int pw = 0;
  pw += __builtin_popcount(x1 & z1);
  pw += __builtin_popcount(x2 & z2);
  pw += 2 * __builtin_popcount(z1 & x2);
  pw -= __builtin_popcount(x3 & z3);
  pw += p.phase_pow + q.phase_pow;
  PhasedPauli r;
  r.label.n = p.label.n;
  r.label.x = x3;
  r.label.z = z3;
  r.phase_pow = static_cast<std::uint8_t>(((pw % 4) + 4) % 4);
  return r;
}

int symplectic_inner(const PauliLabel& a, const PauliLabel& b) {
  check_same_n(a.n, b.n);
  return __builtin_popcount((a.x & b.z) ^ (a.z & b.x)) & 1;
}

int conjugate_sign(const PauliLabel& a, const PauliLabel& c) {
  return symplectic_inner(a, c) ? -1 : 1;
}

const Mat& single_qubit_pauli(int code) {
  static const std::array<Mat, 4> table = [] {
    std::array<Mat, 4> t{Mat(2), Mat(2), Mat(2), Mat(2)};
    t[0](0, 0) = 1.0;
    t[0](1, 1) = 1.0;  // I
    t[1](0, 0) = 1.0;
    t[1](1, 1) = -1.0;  // Z
    t[2](0, 1) = 1.0;
    t[2](1, 0) = 1.0;  // X
    t[3](0, 1) = cplx(0.0, -1.0);
    t[3](1, 0) = cplx(0.0, 1.0);  // Y = i X Z
    return t;
  }();
  return table[code & 3];
}

Mat pauli_matrix(const PauliLabel& a, int dense_limit) {
  if (a.n > dense_limit) throw DenseLimitError("pauli_matrix: n exceeds dense limit");
  const std::size_t dim = std::size_t(1) << a.n;
  // P|k> = i^{#Y} (-1)^{popcount(z & k)} |k ^ x>, one entry per column.
  Mat m(dim);
  static const cplx kI[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  const cplx base = kI[a.y_count() & 3];
  for (std::size_t k = 0; k < dim; ++k) {
    const int sign = __builtin_popcountll(a.z & k) & 1;
    m(k ^ a.x, k) = sign ? -base : base;
  }
  return m;
}

Mat dense_matrix(const PhasedPauli& p, int dense_limit) {
  Mat m = pauli_matrix(p.label, dense_limit);
  if (p.phase_pow & 3) m = scale(m, p.phase());
  return m;
}

cplx pauli_ket_expectation(const PauliLabel& a, const CVec& psi) {
  if (psi.size() != (std::size_t(1) << a.n)) throw std::invalid_argument("pauli_ket_expectation: dimension mismatch");
  static const cplx kI[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  const cplx base = kI[a.y_count() & 3];
  cplx acc = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const int sign = __builtin_popcountll(a.z & k) & 1;
    const cplx c = sign ? -base : base;
    acc += std::conj(psi[k ^ a.x]) * c * psi[k];
  }
  return acc;
}

cplx pauli_trace_product(const PauliLabel& a, const Mat& rho) {
  if (rho.dim != (std::size_t(1) << a.n)) throw std::invalid_argument("pauli_trace_product: dimension mismatch");
  static const cplx kI[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  const cplx base = kI[a.y_count() & 3];
  cplx acc = 0.0;
  // Tr(rho P) = sum_j rho[j][j^x] * coeff_j with P|j> = coeff_j |j^x>.
  for (std::size_t j = 0; j < rho.dim; ++j) {
    const int sign = __builtin_popcountll(a.z & j) & 1;
    const cplx c = sign ? -base : base;
    acc += rho(j, j ^ a.x) * c;
  }
  return acc;
}

}  // namespace shadows
