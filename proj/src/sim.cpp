// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "shadows/sim.hpp"

#include <cmath>
#include <stdexcept>

namespace shadows {

namespace {

void check_dim(int n, std::size_t got, const char* what) {
  if (got != (std::size_t(1) << n)) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

std::uint32_t sample_from_probs(const std::vector<double>& p, Rng& rng) {
  const double r = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (r < acc) return static_cast<std::uint32_t>(i);
  }
  return static_cast<std::uint32_t>(p.size() - 1);
}

}  // namespace

std::string bits_to_string(std::uint32_t bits, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if ((bits >> i) & 1u) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

std::uint32_t bits_from_string(const std::string& s) {
  std::uint32_t bits = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      bits |= 1u << i;
    else if (s[i] != '0')
      throw std::invalid_argument("invalid bitstring character");
  }
  return bits;
}

PureState::PureState(int n_, CVec amp_) : n(n_), amp(std::move(amp_)) {
  check_dim(n, amp.size(), "PureState");
  double norm = 0.0;
  for (const auto& a : amp) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-10) throw std::invalid_argument("PureState: not normalized");
}

PureState PureState::basis(int n, std::uint32_t bits) {
  CVec amp(std::size_t(1) << n, cplx(0.0, 0.0));
  amp[bits] = 1.0;
  PureState s;
  s.n = n;
  s.amp = std::move(amp);
  return s;
}

DensityMatrix::DensityMatrix(int n_, Mat m_) : n(n_), m(std::move(m_)) {
  check_dim(n, m.dim, "DensityMatrix");
  if (!is_hermitian(m, 1e-10)) throw std::invalid_argument("DensityMatrix: not Hermitian");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  DensityMatrix rho;
  rho.n = psi.n;
  rho.m = outer(psi.amp);
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  DensityMatrix rho;
  rho.n = n;
  rho.m = scale(Mat::identity(std::size_t(1) << n), 1.0 / static_cast<double>(std::size_t(1) << n));
  return rho;
}

UnitaryMatrix::UnitaryMatrix(int n_, Mat m_, double tol) : n(n_), m(std::move(m_)) {
  check_dim(n, m.dim, "UnitaryMatrix");
  if (!is_unitary(m, tol)) throw std::invalid_argument("UnitaryMatrix: U^dag U != I");
}

QuantumChannel::QuantumChannel(int n_, std::vector<Mat> kraus_, double tol) : n(n_), kraus(std::move(kraus_)) {
  if (kraus.empty()) throw std::invalid_argument("QuantumChannel: empty Kraus list");
  Mat acc(std::size_t(1) << n);
  for (const auto& k : kraus) {
    check_dim(n, k.dim, "QuantumChannel");
    acc = add(acc, mul(dagger(k), k));
  }
  if (max_abs_diff(acc, Mat::identity(acc.dim)) > tol)
    throw std::invalid_argument("QuantumChannel: not trace preserving");
}

QuantumChannel QuantumChannel::identity(int n) {
  QuantumChannel ch;
  ch.n = n;
  ch.kraus = {Mat::identity(std::size_t(1) << n)};
  return ch;
}

PureState apply_unitary(const PureState& psi, const UnitaryMatrix& u) {
  if (psi.n != u.n) throw std::invalid_argument("apply_unitary: dimension mismatch");
  PureState out;
  out.n = psi.n;
  out.amp = matvec(u.m, psi.amp);
  return out;
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const UnitaryMatrix& u) {
  if (rho.n != u.n) throw std::invalid_argument("apply_unitary: dimension mismatch");
  DensityMatrix out;
  out.n = rho.n;
  out.m = mul(u.m, mul(rho.m, dagger(u.m)));
  return out;
}

std::vector<double> born_probabilities(const PureState& psi) {
  std::vector<double> p(psi.amp.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(psi.amp[i]);
  return p;
}

std::vector<double> born_probabilities(const DensityMatrix& rho) {
  std::vector<double> p(rho.m.dim);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::max(0.0, rho.m(i, i).real());
  return p;
}

std::uint32_t measure(const PureState& psi, Rng& rng) { return sample_from_probs(born_probabilities(psi), rng); }

std::uint32_t measure(const DensityMatrix& rho, Rng& rng) { return sample_from_probs(born_probabilities(rho), rng); }

double pauli_expectation(const DensityMatrix& rho, const PauliLabel& a, double tol) {
  if (rho.n != a.n) throw std::invalid_argument("pauli_expectation: dimension mismatch");
  const cplx t = pauli_trace_product(a, rho.m);
  if (std::abs(t.imag()) > tol) throw std::invalid_argument("pauli_expectation: non-real value");
  return t.real();
}

Mat apply_channel_mat(const Mat& rho, const QuantumChannel& ch, bool adjoint) {
  Mat out(rho.dim);
  for (const auto& k : ch.kraus) {
    const Mat& left = adjoint ? dagger(k) : k;
    out = add(out, mul(left, mul(rho, dagger(left))));
  }
  return out;
}

DensityMatrix apply_channel(const DensityMatrix& rho, const QuantumChannel& ch, bool adjoint) {
  if (rho.n != ch.n) throw std::invalid_argument("apply_channel: dimension mismatch");
  DensityMatrix out;
  out.n = rho.n;
  out.m = apply_channel_mat(rho.m, ch, adjoint);
  return out;
}

QuantumChannel depolarizing_channel(double p, int n) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing_channel: p out of [0,1]");
  // Pauli-twirl form: probability p/4^n on every non-identity Pauli.
  const std::size_t labels = std::size_t(1) << (2 * n);
  RealFunctionOnVn probs(n, p / static_cast<double>(labels));
  probs[0] = 1.0 - p + p / static_cast<double>(labels);
  return pauli_channel(probs);
}

QuantumChannel bit_flip_channel(double p, int qubit, int n) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("bit_flip_channel: p out of [0,1]");
  PauliLabel xq = PauliLabel::identity(n);
  xq.x = 1u << qubit;
  RealFunctionOnVn probs(n, 0.0);
  probs[0] = 1.0 - p;
  probs[xq.index()] = p;
  return pauli_channel(probs);
}

QuantumChannel amplitude_damping_channel(double gamma, int qubit, int n) {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("amplitude_damping_channel: gamma out of [0,1]");
  Mat k0(2), k1(2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  std::vector<Mat> kraus = {embed_gate(k0, {qubit}, n), embed_gate(k1, {qubit}, n)};
  return QuantumChannel(n, std::move(kraus));
}

QuantumChannel pauli_channel(const RealFunctionOnVn& probs, double tol) {
  const int n = probs.n;
  double sum = 0.0;
  for (double p : probs.v) {
    if (p < -tol) throw std::invalid_argument("pauli_channel: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol) throw std::invalid_argument("pauli_channel: probabilities do not sum to 1");
  std::vector<Mat> kraus;
  for (std::size_t idx = 0; idx < probs.size(); ++idx) {
    if (probs[idx] <= 0.0) continue;
    kraus.push_back(scale(pauli_matrix(PauliLabel::from_index(n, idx)), std::sqrt(probs[idx])));
  }
  QuantumChannel ch(n, std::move(kraus), 1e-9);
  ch.pauli_probs = probs;
  return ch;
}

QuantumChannel random_pauli_channel(int n, Rng& rng) {
  RealFunctionOnVn probs(n, 0.0);
  double sum = 0.0;
  for (auto& p : probs.v) {
    double u = 0.0;
    while (u == 0.0) u = rng.uniform();
    p = -std::log(u);
    sum += p;
  }
  for (auto& p : probs.v) p /= sum;
  return pauli_channel(probs);
}

bool channel_is_unital(const QuantumChannel& ch, double tol) {
  const Mat id = Mat::identity(std::size_t(1) << ch.n);
  return max_abs_diff(apply_channel_mat(id, ch, false), id) <= tol;
}

ChoiState choi_state(const QuantumChannel& ch) {
  const std::size_t d = std::size_t(1) << ch.n;
  Mat j(d * d);
  // J[(o_r d + j), (o_c d + k)] = 2^{-n} sum_m K_m[o_r][j] conj(K_m[o_c][k]);
  // output leg on the high bits, input leg on the low bits.
  for (const auto& k : ch.kraus) {
    for (std::size_t orow = 0; orow < d; ++orow)
      for (std::size_t jcol = 0; jcol < d; ++jcol) {
        const cplx lhs = k(orow, jcol);
        if (lhs == cplx(0.0, 0.0)) continue;
        for (std::size_t ocol = 0; ocol < d; ++ocol)
          for (std::size_t kcol = 0; kcol < d; ++kcol)
            j(orow * d + jcol, ocol * d + kcol) += lhs * std::conj(k(ocol, kcol));
      }
  }
  const double norm = 1.0 / static_cast<double>(d);
  for (auto& v : j.a) v *= norm;
  ChoiState out;
  out.n = ch.n;
  out.state = DensityMatrix(2 * ch.n, std::move(j));
  return out;
}

RealFunctionOnVn pauli_channel_eigenvalues(const RealFunctionOnVn& probs) {
  return inverse_symplectic_fourier(probs);
}

double renyi2_purity(const DensityMatrix& rho, const SupportSet& a) {
  if (rho.n != a.n) throw std::invalid_argument("renyi2_purity: dimension mismatch");
  if (a.mask == 0) return 1.0;
  const Mat reduced = partial_trace(rho.m, rho.n, a.complement().mask);
  double acc = 0.0;
  for (const auto& v : reduced.a) acc += std::norm(v);
  return acc;
}

}  // namespace shadows
