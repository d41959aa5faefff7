// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "shadows/observable.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace shadows {

namespace {

void merge_term(std::vector<std::pair<PauliLabel, double>>& terms, const PauliLabel& a, double c) {
  for (auto& [label, coeff] : terms) {
    if (label == a) {
      coeff += c;
      return;
    }
  }
  terms.emplace_back(a, c);
}

}  // namespace

PauliObservable PauliObservable::single(const PauliLabel& a, double coeff) {
  PauliObservable o;
  o.n = a.n;
  o.terms.emplace_back(a, coeff);
  return o;
}

PauliObservable PauliObservable::from_string(const std::string& expr) {
  PauliObservable o;
  o.n = 0;
  std::size_t i = 0;
  const auto skip_ws = [&] {
    while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
  };
  skip_ws();
  if (i >= expr.size()) throw std::invalid_argument("empty observable expression");
  while (i < expr.size()) {
    double sign = 1.0;
    while (i < expr.size() && (expr[i] == '+' || expr[i] == '-')) {
      if (expr[i] == '-') sign = -sign;
      ++i;
      skip_ws();
    }
    if (i >= expr.size()) throw std::invalid_argument("dangling sign in observable expression");
    double coeff = 1.0;
    if (std::isdigit(static_cast<unsigned char>(expr[i])) || expr[i] == '.') {
      char* end = nullptr;
      coeff = std::strtod(expr.c_str() + i, &end);
      i = static_cast<std::size_t>(end - expr.c_str());
      skip_ws();
      if (i >= expr.size() || expr[i] != '*')
        throw std::invalid_argument("expected '*' after coefficient in observable expression");
      ++i;
      skip_ws();
    }
    std::size_t start = i;
    while (i < expr.size() && (expr[i] == 'I' || expr[i] == 'X' || expr[i] == 'Y' || expr[i] == 'Z')) ++i;
    if (i == start) throw std::invalid_argument("expected Pauli string in observable expression");
    const PauliLabel label = PauliLabel::from_string(expr.substr(start, i - start));
    if (o.n == 0)
      o.n = label.n;
    else if (o.n != label.n)
      throw std::invalid_argument("observable terms have inconsistent qubit counts");
    merge_term(o.terms, label, sign * coeff);
    skip_ws();
    if (i < expr.size() && expr[i] != '+' && expr[i] != '-')
      throw std::invalid_argument("unexpected character in observable expression");
  }
  return o;
}

PauliObservable PauliObservable::from_dense(const Mat& m, int n, double imag_tol) {
  if (m.dim != (std::size_t(1) << n)) throw std::invalid_argument("from_dense: dimension mismatch");
  PauliObservable o;
  o.n = n;
  const double norm = 1.0 / static_cast<double>(m.dim);
  for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << (2 * n)); ++idx) {
    const PauliLabel a = PauliLabel::from_index(n, idx);
    const cplx c = pauli_trace_product(a, m);
    if (std::abs(c.imag()) * norm > imag_tol)
      throw std::invalid_argument("from_dense: non-Hermitian input (imaginary Pauli coefficient)");
    const double coeff = c.real() * norm;
    if (coeff != 0.0) o.terms.emplace_back(a, coeff);
  }
  return o;
}

std::string PauliObservable::to_string() const {
  if (terms.empty()) return "0*" + PauliLabel::identity(n).to_string();
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double c = terms[i].second;
    if (i == 0) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    const double mag = std::abs(c);
    if (mag != 1.0) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.12g", mag);
      s += buf;
      s += "*";
    }
    s += terms[i].first.to_string();
  }
  return s;
}

double PauliObservable::coefficient(const PauliLabel& a) const {
  for (const auto& [label, coeff] : terms)
    if (label == a) return coeff;
  return 0.0;
}

double PauliObservable::identity_coefficient() const { return coefficient(PauliLabel::identity(n)); }

PauliObservable PauliObservable::traceless() const {
  PauliObservable o;
  o.n = n;
  for (const auto& t : terms)
    if (!t.first.is_identity()) o.terms.push_back(t);
  return o;
}

Mat PauliObservable::dense(int dense_limit) const {
  if (n > dense_limit) throw DenseLimitError("observable dense: n exceeds dense limit");
  Mat acc(std::size_t(1) << n);
  for (const auto& [label, coeff] : terms) {
    const Mat p = pauli_matrix(label, dense_limit);
    for (std::size_t i = 0; i < acc.a.size(); ++i) acc.a[i] += coeff * p.a[i];
  }
  return acc;
}

RealFunctionOnVn PauliObservable::squared_coefficients() const {
  RealFunctionOnVn w(n, 0.0);
  const double dim = static_cast<double>(std::size_t(1) << n);
  for (const auto& [label, coeff] : terms) {
    const double t = dim * coeff;
    w[label.index()] += t * t;
  }
  return w;
}

}  // namespace shadows
