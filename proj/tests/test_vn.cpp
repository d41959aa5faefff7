// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include <doctest.h>

#include "shadows/rng.hpp"
#include "shadows/vn.hpp"

using namespace shadows;

namespace {

// Direct quadruple-loop transform, the independent oracle for the fast path.
RealFunctionOnVn naive_fourier(const RealFunctionOnVn& f) {
  RealFunctionOnVn out(f.n, 0.0);
  const double norm = 1.0 / static_cast<double>(f.size());
  for (std::uint64_t u = 0; u < f.size(); ++u) {
    const PauliLabel lu = PauliLabel::from_index(f.n, u);
    double acc = 0.0;
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      const int sign = symplectic_inner(lu, PauliLabel::from_index(f.n, x));
      acc += sign ? -f[x] : f[x];
    }
    out[u] = acc * norm;
  }
  return out;
}

}  // namespace

TEST_CASE("fast transform matches the direct summation oracle") {
  Rng rng(3);
  for (int n = 1; n <= 2; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      RealFunctionOnVn f(n, 0.0);
      for (auto& v : f.v) v = 2.0 * rng.uniform() - 1.0;
      const RealFunctionOnVn fast = symplectic_fourier(f);
      const RealFunctionOnVn slow = naive_fourier(f);
      for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(fast[i] - slow[i]) <= 1e-13);
    }
  }
}

TEST_CASE("constant function transforms to the delta at zero") {
  RealFunctionOnVn ones(2, 1.0);
  const RealFunctionOnVn hat = symplectic_fourier(ones);
  CHECK(hat[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t i = 1; i < hat.size(); ++i) CHECK(std::abs(hat[i]) <= 1e-14);

  RealFunctionOnVn delta(2, 0.0);
  delta[0] = 1.0;
  const RealFunctionOnVn back = inverse_symplectic_fourier(delta);
  for (std::size_t i = 0; i < back.size(); ++i) CHECK(back[i] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("round trips are exact to 1e-12") {
  Rng rng(4);
  for (int n = 1; n <= 3; ++n) {
    for (int rep = 0; rep < 100; ++rep) {
      RealFunctionOnVn f(n, 0.0);
      for (auto& v : f.v) v = 2.0 * rng.uniform() - 1.0;
      const RealFunctionOnVn fwd_back = inverse_symplectic_fourier(symplectic_fourier(f));
      const RealFunctionOnVn back_fwd = symplectic_fourier(inverse_symplectic_fourier(f));
      for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(std::abs(fwd_back[i] - f[i]) <= 1e-12);
        CHECK(std::abs(back_fwd[i] - f[i]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("uniform distribution maps to the depolarizing spectrum") {
  // Error probabilities uniform over V^n give lambda_b = delta_{b,0}.
  RealFunctionOnVn probs(2, 1.0 / 16.0);
  const RealFunctionOnVn lambda = inverse_symplectic_fourier(probs);
  CHECK(lambda[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t i = 1; i < lambda.size(); ++i) CHECK(std::abs(lambda[i]) <= 1e-14);
}

TEST_CASE("subset moebius sums") {
  const SupportSet s2(2, 0b11);
  // Constant h: alternating sum cancels on nonempty supports.
  CHECK(subset_moebius_sum([](std::uint32_t) { return 2.5; }, s2, true) == doctest::Approx(0.0));
  // h(A) = 2^|A| over |S| = 2: 4 - 2 - 2 + 1 = 1.
  CHECK(subset_moebius_sum([](std::uint32_t m) { return double(1u << __builtin_popcount(m)); }, s2, true) ==
        doctest::Approx(1.0));
  const SupportSet empty(2, 0);
  CHECK(subset_moebius_sum([](std::uint32_t) { return 7.0; }, empty, true) == doctest::Approx(7.0));
  // Unsigned rule is the plain subset sum.
  CHECK(subset_moebius_sum([](std::uint32_t) { return 1.0; }, s2, false) == doctest::Approx(4.0));
  CHECK_THROWS_AS(SupportSet(2, 0b100), std::invalid_argument);
}

TEST_CASE("moebius inversion inverts subset sums") {
  Rng rng(5);
  const int n = 3;
  std::vector<double> f(1u << n);
  for (auto& v : f) v = rng.uniform();
  std::vector<double> g(1u << n, 0.0);
  for (std::uint32_t a = 0; a < (1u << n); ++a) {
    std::uint32_t sub = a;
    for (;;) {
      g[a] += f[sub];
      if (sub == 0) break;
      sub = (sub - 1) & a;
    }
  }
  for (std::uint32_t a = 0; a < (1u << n); ++a) {
    const double rec = subset_moebius_sum([&](std::uint32_t m) { return g[m]; }, SupportSet(n, a), true);
    CHECK(rec == doctest::Approx(f[a]).epsilon(1e-12));
  }
}
