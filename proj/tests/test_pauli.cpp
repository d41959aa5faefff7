// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include <doctest.h>

#include "shadows/pauli.hpp"

using namespace shadows;

namespace {

PhasedPauli pp(const std::string& s) { return PhasedPauli::from_string(s); }

}  // namespace

TEST_CASE("label index round trip and string format") {
  const PauliLabel a = PauliLabel::from_string("XZIY");
  CHECK(a.n == 4);
  CHECK(a.to_string() == "XZIY");
  CHECK(PauliLabel::from_index(4, a.index()) == a);
  // Qubit 0 is the least significant base-4 digit with codes I=0,Z=1,X=2,Y=3.
  CHECK(PauliLabel::from_string("ZI").index() == 1);
  CHECK(PauliLabel::from_string("IZ").index() == 4);
  CHECK(PauliLabel::from_string("YX").index() == 3 + 4 * 2);
  CHECK(PauliLabel::identity(3).is_identity());
  CHECK(PauliLabel::from_string("XZIY").weight() == 3);
  CHECK(PauliLabel::from_string("YIY").y_count() == 2);
  CHECK_THROWS_AS(PauliLabel::from_string("XQ"), std::invalid_argument);
  CHECK_THROWS_AS(PauliLabel::from_string(""), std::invalid_argument);
}

TEST_CASE("phased pauli text format") {
  CHECK(pp("+iZ").phase() == cplx(0.0, 1.0));
  CHECK(pp("-XY").phase() == cplx(-1.0, 0.0));
  CHECK(pp("Z").phase() == cplx(1.0, 0.0));
  CHECK(pp("-iY").to_string() == "-iY");
}

TEST_CASE("single qubit composition against 2x2 matrix oracle") {
  // Frozen from the dense 2x2 products: ZZ=I, XZ=-iY, YX=-iZ.
  CHECK(pauli_compose(pp("Z"), pp("Z")).to_string() == "+I");
  CHECK(pauli_compose(pp("X"), pp("Z")).to_string() == "-iY");
  CHECK(pauli_compose(pp("Y"), pp("X")).to_string() == "-iZ");
  CHECK(pauli_compose(pp("X"), pp("Y")).to_string() == "+iZ");
  CHECK_THROWS_AS(pauli_compose(pp("XX"), pp("X")), std::invalid_argument);
}

TEST_CASE("composition matches dense products exhaustively at n <= 3") {
  for (int n = 1; n <= 3; ++n) {
    double max_err = 0.0;
    const std::uint64_t labels = std::uint64_t(1) << (2 * n);
    for (std::uint64_t i = 0; i < labels; ++i) {
      const PhasedPauli p{PauliLabel::from_index(n, i), static_cast<std::uint8_t>(i % 4)};
      const Mat mp = dense_matrix(p);
      for (std::uint64_t j = 0; j < labels; ++j) {
        const PhasedPauli q{PauliLabel::from_index(n, j), static_cast<std::uint8_t>(j % 4)};
        max_err = std::max(max_err, max_abs_diff(dense_matrix(pauli_compose(p, q)), mul(mp, dense_matrix(q))));
      }
    }
    CHECK(max_err <= 1e-14);
  }
}

TEST_CASE("symplectic inner product") {
  const PauliLabel x = PauliLabel::from_string("X");
  const PauliLabel z = PauliLabel::from_string("Z");
  const PauliLabel y = PauliLabel::from_string("Y");
  CHECK(symplectic_inner(x, z) == 1);
  CHECK(symplectic_inner(y, x) == 1);
  CHECK(symplectic_inner(y, y) == 0);
  CHECK(symplectic_inner(PauliLabel::from_string("XZ"), PauliLabel::from_string("ZX")) == 0);
  CHECK_THROWS_AS(symplectic_inner(x, PauliLabel::from_string("XX")), std::invalid_argument);
}

TEST_CASE("symplectic parity decides commutation, exhaustive n <= 2") {
  for (int n = 1; n <= 2; ++n) {
    const std::uint64_t labels = std::uint64_t(1) << (2 * n);
    for (std::uint64_t i = 0; i < labels; ++i) {
      const PauliLabel a = PauliLabel::from_index(n, i);
      const Mat ma = pauli_matrix(a);
      for (std::uint64_t j = 0; j < labels; ++j) {
        const PauliLabel b = PauliLabel::from_index(n, j);
        const Mat mb = pauli_matrix(b);
        const bool commute = max_abs_diff(mul(ma, mb), mul(mb, ma)) < 1e-12;
        CHECK(commute == (symplectic_inner(a, b) == 0));
      }
    }
  }
}

TEST_CASE("conjugation sign") {
  const PauliLabel x = PauliLabel::from_string("X");
  const PauliLabel z = PauliLabel::from_string("Z");
  CHECK(conjugate_sign(z, z) == 1);
  CHECK(conjugate_sign(x, z) == -1);
  CHECK(conjugate_sign(PauliLabel::identity(1), z) == 1);
  // P_c P_a P_c^dag = sign * P_a against the dense oracle.
  for (std::uint64_t i = 0; i < 16; ++i)
    for (std::uint64_t j = 0; j < 16; ++j) {
      const PauliLabel a = PauliLabel::from_index(2, i);
      const PauliLabel c = PauliLabel::from_index(2, j);
      const Mat mc = pauli_matrix(c);
      const Mat conj = mul(mc, mul(pauli_matrix(a), dagger(mc)));
      const Mat expect = scale(pauli_matrix(a), static_cast<double>(conjugate_sign(a, c)));
      CHECK(max_abs_diff(conj, expect) <= 1e-14);
    }
}

TEST_CASE("dense matrices follow the i^{xz} X^x Z^z convention") {
  const Mat y = pauli_matrix(PauliLabel::from_string("Y"));
  CHECK(y(0, 1) == cplx(0.0, -1.0));
  CHECK(y(1, 0) == cplx(0.0, 1.0));
  const Mat id = pauli_matrix(PauliLabel::identity(1));
  CHECK(max_abs_diff(id, Mat::identity(2)) == 0.0);
  // String "ZX" is Z on qubit 0 and X on qubit 1, i.e. kron(X, Z).
  const Mat zx = pauli_matrix(PauliLabel::from_string("ZX"));
  const Mat oracle = kron(pauli_matrix(PauliLabel::from_string("X")), pauli_matrix(PauliLabel::from_string("Z")));
  CHECK(max_abs_diff(zx, oracle) == 0.0);
  CHECK_THROWS_AS(pauli_matrix(PauliLabel::identity(16), 12), DenseLimitError);
}

TEST_CASE("sparse expectation helpers agree with dense algebra") {
  Rng rng(11);
  for (int n = 1; n <= 2; ++n) {
    const CVec psi = haar_ket(std::size_t(1) << n, rng);
    const Mat rho = ginibre_density(std::size_t(1) << n, rng);
    for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << (2 * n)); ++idx) {
      const PauliLabel a = PauliLabel::from_index(n, idx);
      const Mat pa = pauli_matrix(a);
      cplx dense_exp = 0.0;
      const CVec pv = matvec(pa, psi);
      for (std::size_t i = 0; i < psi.size(); ++i) dense_exp += std::conj(psi[i]) * pv[i];
      CHECK(std::abs(pauli_ket_expectation(a, psi) - dense_exp) <= 1e-13);
      CHECK(std::abs(pauli_trace_product(a, rho) - trace(mul(rho, pa))) <= 1e-13);
    }
  }
}
