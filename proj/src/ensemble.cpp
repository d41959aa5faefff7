// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "shadows/ensemble.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>

#include "shadows/errors.hpp"

namespace shadows {

namespace {

Mat gate_h() {
  Mat h(2);
  const double s = 1.0 / std::sqrt(2.0);
  h(0, 0) = s;
  h(0, 1) = s;
  h(1, 0) = s;
  h(1, 1) = -s;
  return h;
}

Mat gate_s() {
  Mat s(2);
  s(0, 0) = 1.0;
  s(1, 1) = cplx(0.0, 1.0);
  return s;
}

Mat gate_cnot01() {
  // Control qubit 0 (low bit), target qubit 1.
  Mat c(4);
  c(0, 0) = 1.0;
  c(2, 2) = 1.0;
  c(3, 1) = 1.0;
  c(1, 3) = 1.0;
  return c;
}

void normalize_phase(Mat& m) {
  for (const auto& v : m.a) {
    if (std::abs(v) > 1e-8) {
      const cplx ph = v / std::abs(v);
      for (auto& w : m.a) w /= ph;
      return;
    }
  }
}

std::string fingerprint(const Mat& m) {
  std::string out;
  out.reserve(m.a.size() * 20);
  char buf[24];
  for (const auto& v : m.a) {
    double re = v.real(), im = v.imag();
    if (std::abs(re) < 5e-7) re = 0.0;
    if (std::abs(im) < 5e-7) im = 0.0;
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f;", re, im);
    out += buf;
  }
  return out;
}

std::vector<Mat> closure(std::vector<Mat> generators, std::size_t expected) {
  std::vector<Mat> elems;
  std::unordered_map<std::string, std::size_t> seen;
  Mat id = Mat::identity(generators.front().dim);
  normalize_phase(id);
  seen.emplace(fingerprint(id), 0);
  elems.push_back(id);
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : generators) {
      Mat cand = mul(g, elems[head]);
      normalize_phase(cand);
      auto key = fingerprint(cand);
      if (seen.emplace(std::move(key), elems.size()).second) elems.push_back(std::move(cand));
    }
    if (elems.size() > expected) throw std::logic_error("clifford closure exceeded expected order");
  }
  if (elems.size() != expected) throw std::logic_error("clifford closure has unexpected order");
  return elems;
}

std::vector<double> matrix_params(const Mat& m) {
  std::vector<double> p;
  p.reserve(m.a.size() * 2);
  for (const auto& v : m.a) {
    p.push_back(v.real());
    p.push_back(v.imag());
  }
  return p;
}

Mat params_matrix(const std::vector<double>& p, std::size_t dim) {
  if (p.size() != 2 * dim * dim) throw std::invalid_argument("gate params have wrong length");
  Mat m(dim);
  for (std::size_t i = 0; i < dim * dim; ++i) m.a[i] = cplx(p[2 * i], p[2 * i + 1]);
  return m;
}

Gate c1_gate(int qubit, int k) { return Gate{"c1", {qubit}, {static_cast<double>(k)}}; }

void check_qubits(const Gate& g, int n, std::size_t count) {
  if (g.qubits.size() != count) throw std::invalid_argument("gate '" + g.name + "': wrong qubit count");
  for (int q : g.qubits)
    if (q < 0 || q >= n) throw std::invalid_argument("gate '" + g.name + "': qubit out of range");
}

Mat realize_gate(const Gate& g, int n) {
  if (g.name == "pauli") {
    check_qubits(g, n, 1);
    const int code = static_cast<int>(g.params.at(0));
    return embed_gate(single_qubit_pauli(code), g.qubits, n);
  }
  if (g.name == "c1") {
    check_qubits(g, n, 1);
    const auto& table = clifford1_table();
    return embed_gate(table.at(static_cast<std::size_t>(g.params.at(0))), g.qubits, n);
  }
  if (g.name == "cliff2") {
    check_qubits(g, n, 2);
    const auto& table = clifford2_table();
    return embed_gate(table.at(static_cast<std::size_t>(g.params.at(0))), g.qubits, n);
  }
  if (g.name == "u1") {
    check_qubits(g, n, 1);
    return embed_gate(params_matrix(g.params, 2), g.qubits, n);
  }
  if (g.name == "u2") {
    check_qubits(g, n, 2);
    return embed_gate(params_matrix(g.params, 4), g.qubits, n);
  }
  if (g.name == "dense") {
    check_qubits(g, n, static_cast<std::size_t>(n));
    return embed_gate(params_matrix(g.params, std::size_t(1) << n), g.qubits, n);
  }
  throw std::invalid_argument("unknown gate '" + g.name + "'");
}

std::vector<int> all_qubits(int n) {
  std::vector<int> q(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i)] = i;
  return q;
}

}  // namespace

const std::vector<Mat>& clifford1_table() {
  static const std::vector<Mat> table = closure({gate_h(), gate_s()}, 24);
  return table;
}

const std::vector<Mat>& clifford2_table() {
  static const std::vector<Mat> table = [] {
    const Mat h = gate_h(), s = gate_s();
    std::vector<Mat> gens = {embed_gate(h, {0}, 2), embed_gate(h, {1}, 2), embed_gate(s, {0}, 2),
                             embed_gate(s, {1}, 2), gate_cnot01()};
    return closure(std::move(gens), 11520);
  }();
  return table;
}

EnsembleSpec EnsembleSpec::pauli_group(int n) { return EnsembleSpec{EnsembleKind::PauliGroup, n, 1, {}}; }
EnsembleSpec EnsembleSpec::local_clifford(int n) { return EnsembleSpec{EnsembleKind::LocalClifford, n, 1, {}}; }

EnsembleSpec EnsembleSpec::global_clifford(int n) {
  if (n > 2) throw std::invalid_argument("global Clifford ensemble supported for n <= 2");
  return EnsembleSpec{EnsembleKind::GlobalClifford, n, 1, {}};
}

EnsembleSpec EnsembleSpec::locally_scrambled_haar(int n) {
  return EnsembleSpec{EnsembleKind::LocallyScrambledHaar, n, 1, {}};
}

EnsembleSpec EnsembleSpec::random_local_circuit(int n, int depth) {
  if (depth < 1) throw std::invalid_argument("random local circuit needs depth >= 1");
  return EnsembleSpec{EnsembleKind::RandomLocalCircuit, n, depth, {}};
}

EnsembleSpec EnsembleSpec::custom_ensemble(int n, std::vector<std::pair<Mat, double>> elems) {
  if (elems.empty()) throw std::invalid_argument("custom ensemble must not be empty");
  double sum = 0.0;
  for (const auto& [u, p] : elems) {
    if (u.dim != (std::size_t(1) << n)) throw std::invalid_argument("custom ensemble: wrong matrix dimension");
    if (!is_unitary(u, 1e-10)) throw std::invalid_argument("custom ensemble: element is not unitary");
    if (p < 0.0) throw std::invalid_argument("custom ensemble: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("custom ensemble: probabilities must sum to 1");
  return EnsembleSpec{EnsembleKind::Custom, n, 1, std::move(elems)};
}

bool EnsembleSpec::enumerable() const {
  switch (kind) {
    case EnsembleKind::PauliGroup: return true;
    case EnsembleKind::LocalClifford: return n <= 3;
    case EnsembleKind::GlobalClifford: return n <= 2;
    case EnsembleKind::Custom: return true;
    default: return false;
  }
}

std::string EnsembleSpec::describe() const {
  switch (kind) {
    case EnsembleKind::PauliGroup: return "pauli-group";
    case EnsembleKind::LocalClifford: return "local-clifford";
    case EnsembleKind::GlobalClifford: return "global-clifford";
    case EnsembleKind::LocallyScrambledHaar: return "haar-local";
    case EnsembleKind::RandomLocalCircuit: return "local-circuit:depth=" + std::to_string(depth);
    case EnsembleKind::Custom: return "custom:k=" + std::to_string(custom.size());
  }
  return "?";
}

namespace {

UnitaryDraw pauli_draw(int n, std::uint64_t index) {
  UnitaryDraw d{EnsembleKind::PauliGroup, n, {}};
  for (int i = 0; i < n; ++i)
    d.gates.push_back(Gate{"pauli", {i}, {static_cast<double>((index >> (2 * i)) & 3u)}});
  return d;
}

UnitaryDraw local_clifford_draw(int n, const std::vector<int>& ks) {
  UnitaryDraw d{EnsembleKind::LocalClifford, n, {}};
  for (int i = 0; i < n; ++i) d.gates.push_back(c1_gate(i, ks[static_cast<std::size_t>(i)]));
  return d;
}

UnitaryDraw haar_local_draw(const EnsembleSpec& spec, Rng& rng) {
  UnitaryDraw d{EnsembleKind::LocallyScrambledHaar, spec.n, {}};
  for (int i = 0; i < spec.n; ++i)
    d.gates.push_back(Gate{"u1", {i}, matrix_params(haar_unitary(2, rng))});
  return d;
}

UnitaryDraw circuit_draw(const EnsembleSpec& spec, Rng& rng) {
  UnitaryDraw d{EnsembleKind::RandomLocalCircuit, spec.n, {}};
  for (int layer = 0; layer < spec.depth; ++layer) {
    const int start = layer % 2;
    std::uint32_t covered = 0;
    for (int q = start; q + 1 < spec.n; q += 2) {
      d.gates.push_back(Gate{"u2", {q, q + 1}, matrix_params(haar_unitary(4, rng))});
      covered |= (1u << q) | (1u << (q + 1));
    }
    // Brickwork edge qubits not covered by a pair in this layer still get an
    // independent Haar gate, keeping every layer Pauli-absorbing.
    for (int q = 0; q < spec.n; ++q)
      if (!((covered >> q) & 1u))
        d.gates.push_back(Gate{"u1", {q}, matrix_params(haar_unitary(2, rng))});
  }
  return d;
}

}  // namespace

UnitaryDraw sample(const EnsembleSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case EnsembleKind::PauliGroup:
      return pauli_draw(spec.n, rng.below(std::uint64_t(1) << (2 * spec.n)));
    case EnsembleKind::LocalClifford: {
      std::vector<int> ks(static_cast<std::size_t>(spec.n));
      for (auto& k : ks) k = static_cast<int>(rng.below(24));
      return local_clifford_draw(spec.n, ks);
    }
    case EnsembleKind::GlobalClifford: {
      if (spec.n == 1) {
        UnitaryDraw d{EnsembleKind::GlobalClifford, 1, {c1_gate(0, static_cast<int>(rng.below(24)))}};
        return d;
      }
      if (spec.n == 2) {
        UnitaryDraw d{EnsembleKind::GlobalClifford, 2,
                      {Gate{"cliff2", {0, 1}, {static_cast<double>(rng.below(11520))}}}};
        return d;
      }
      throw std::invalid_argument("global Clifford sampling supported for n <= 2");
    }
    case EnsembleKind::LocallyScrambledHaar: return haar_local_draw(spec, rng);
    case EnsembleKind::RandomLocalCircuit: return circuit_draw(spec, rng);
    case EnsembleKind::Custom: {
      const double r = rng.uniform();
      double acc = 0.0;
      std::size_t pick = spec.custom.size() - 1;
      for (std::size_t i = 0; i < spec.custom.size(); ++i) {
        acc += spec.custom[i].second;
        if (r < acc) {
          pick = i;
          break;
        }
      }
      UnitaryDraw d{EnsembleKind::Custom, spec.n,
                    {Gate{"dense", all_qubits(spec.n), matrix_params(spec.custom[pick].first)}}};
      return d;
    }
  }
  throw std::logic_error("unreachable");
}

UnitaryMatrix realize(const UnitaryDraw& draw, int dense_limit) {
  if (draw.n > dense_limit) throw DenseLimitError("realize: n exceeds dense limit");
  Mat u = Mat::identity(std::size_t(1) << draw.n);
  for (const auto& g : draw.gates) u = mul(realize_gate(g, draw.n), u);
  return UnitaryMatrix(draw.n, std::move(u), 1e-9);
}

std::vector<std::pair<UnitaryDraw, double>> enumerate_ensemble(const EnsembleSpec& spec) {
  if (!spec.enumerable())
    throw NotEnumerableError("ensemble '" + spec.describe() + "' is not enumerable");
  std::vector<std::pair<UnitaryDraw, double>> out;
  switch (spec.kind) {
    case EnsembleKind::PauliGroup: {
      const std::uint64_t count = std::uint64_t(1) << (2 * spec.n);
      const double p = 1.0 / static_cast<double>(count);
      out.reserve(count);
      for (std::uint64_t idx = 0; idx < count; ++idx) out.emplace_back(pauli_draw(spec.n, idx), p);
      break;
    }
    case EnsembleKind::LocalClifford: {
      std::uint64_t count = 1;
      for (int i = 0; i < spec.n; ++i) count *= 24;
      const double p = 1.0 / static_cast<double>(count);
      std::vector<int> ks(static_cast<std::size_t>(spec.n), 0);
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::uint64_t rest = idx;
        for (int i = 0; i < spec.n; ++i) {
          ks[static_cast<std::size_t>(i)] = static_cast<int>(rest % 24);
          rest /= 24;
        }
        out.emplace_back(local_clifford_draw(spec.n, ks), p);
      }
      break;
    }
    case EnsembleKind::GlobalClifford: {
      if (spec.n == 1) {
        for (int k = 0; k < 24; ++k)
          out.emplace_back(UnitaryDraw{EnsembleKind::GlobalClifford, 1, {c1_gate(0, k)}}, 1.0 / 24.0);
      } else {
        for (int k = 0; k < 11520; ++k)
          out.emplace_back(
              UnitaryDraw{EnsembleKind::GlobalClifford, 2, {Gate{"cliff2", {0, 1}, {static_cast<double>(k)}}}},
              1.0 / 11520.0);
      }
      break;
    }
    case EnsembleKind::Custom: {
      for (const auto& [u, p] : spec.custom)
        out.emplace_back(
            UnitaryDraw{EnsembleKind::Custom, spec.n, {Gate{"dense", all_qubits(spec.n), matrix_params(u)}}}, p);
      break;
    }
    default: throw NotEnumerableError("ensemble is not enumerable");
  }
  return out;
}

namespace {

// Average of (1/2^n) sum_b <b| U P_a U^dag |b>^2 over the given unitaries;
// the Monte-Carlo W estimate used by the statistical invariance probe.
RealFunctionOnVn w_from_unitaries(const std::vector<Mat>& us, int n) {
  RealFunctionOnVn w(n, 0.0);
  const std::size_t dim = std::size_t(1) << n;
  for (const auto& u : us) {
    for (std::size_t b = 0; b < dim; ++b) {
      CVec phi(dim);
      for (std::size_t j = 0; j < dim; ++j) phi[j] = std::conj(u(b, j));
      for (std::size_t idx = 0; idx < w.size(); ++idx) {
        const double t = pauli_ket_expectation(PauliLabel::from_index(n, idx), phi).real();
        w[idx] += t * t;
      }
    }
  }
  const double norm = 1.0 / (static_cast<double>(us.size()) * static_cast<double>(dim));
  for (auto& x : w.v) x *= norm;
  return w;
}

}  // namespace

InvarianceReport check_pauli_invariance(const EnsembleSpec& spec, InvarianceMode mode,
                                        std::uint64_t samples, double tol, std::uint64_t seed) {
  InvarianceReport report;
  if (mode == InvarianceMode::Exact) {
    const auto elems = enumerate_ensemble(spec);  // throws NotEnumerable for continuous specs
    std::unordered_map<std::string, double> weight;
    std::vector<Mat> mats;
    mats.reserve(elems.size());
    for (const auto& [draw, p] : elems) {
      Mat u = realize(draw).m;
      normalize_phase(u);
      weight[fingerprint(u)] += p;
      mats.push_back(std::move(u));
    }
    const std::uint64_t labels = std::uint64_t(1) << (2 * spec.n);
    double max_dev = 0.0;
    for (std::uint64_t sigma = 1; sigma < labels; ++sigma) {
      const Mat p_sigma = pauli_matrix(PauliLabel::from_index(spec.n, sigma));
      for (std::size_t i = 0; i < mats.size(); ++i) {
        Mat shifted = mul(mats[i], p_sigma);
        normalize_phase(shifted);
        const auto it = weight.find(fingerprint(shifted));
        if (it == weight.end()) {
          max_dev = 1.0;
        } else {
          max_dev = std::max(max_dev, std::abs(it->second - weight[fingerprint(mats[i])]));
        }
      }
    }
    report.max_deviation = max_dev;
    report.pass = max_dev <= 1e-9;
    report.detail = report.pass ? "closed under right Pauli multiplication"
                                : "multiset not closed under right Pauli multiplication";
    return report;
  }

  // Statistical mode. The squared Pauli coefficients of U and U P_sigma are
  // equal draw by draw, so the W comparison alone cannot fail; a fixed frame
  // probe E |<phi|U|chi>|^2 is compared as well to give the check power.
  Rng seq(seed);
  const std::size_t dim = std::size_t(1) << spec.n;
  const CVec phi = haar_ket(dim, seq);
  const CVec chi = haar_ket(dim, seq);
  const PauliLabel sigma = PauliLabel::from_index(
      spec.n, 1 + seq.below((std::uint64_t(1) << (2 * spec.n)) - 1));
  const Mat p_sigma = pauli_matrix(sigma);

  std::vector<Mat> half_a, half_b;
  half_a.reserve(samples);
  half_b.reserve(samples);
  for (std::uint64_t k = 0; k < 2 * samples; ++k) {
    Rng sub = Rng::substream(seed, k + 1);
    Mat u = realize(sample(spec, sub)).m;
    if (k < samples)
      half_a.push_back(std::move(u));
    else
      half_b.push_back(mul(std::move(u), p_sigma));
  }

  const RealFunctionOnVn wa = w_from_unitaries(half_a, spec.n);
  const RealFunctionOnVn wb = w_from_unitaries(half_b, spec.n);
  double max_dev = 0.0;
  for (std::size_t i = 0; i < wa.size(); ++i) max_dev = std::max(max_dev, std::abs(wa[i] - wb[i]));

  auto frame_mean = [&](const std::vector<Mat>& us) {
    double acc = 0.0;
    for (const auto& u : us) {
      cplx amp = 0.0;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) amp += std::conj(phi[i]) * u(i, j) * chi[j];
      acc += std::norm(amp);
    }
    return acc / static_cast<double>(us.size());
  };
  max_dev = std::max(max_dev, std::abs(frame_mean(half_a) - frame_mean(half_b)));

  report.max_deviation = max_dev;
  report.pass = max_dev <= tol;
  report.detail = "statistical probe vs U P_" + sigma.to_string();
  return report;
}

}  // namespace shadows
