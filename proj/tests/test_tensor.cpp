// Copyright 2026 The pptdisc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include "pptdisc/labeled_matrix.hpp"
#include "support/random_ops.hpp"

using namespace pptdisc;
using pptdisc::testing::random_ginibre;
using pptdisc::testing::random_hermitian;
using pptdisc::testing::random_pure_state;

namespace {

LabeledMatrix random_labeled(RegisterSystem sys, std::mt19937& rng, bool hermitian = false) {
  const std::size_t n = sys.total_dim();
  Eigen::MatrixXcd m = hermitian ? random_hermitian(n, rng) : random_ginibre(n, n, rng);
  return LabeledMatrix(std::move(sys), std::move(m), hermitian);
}

}  // namespace

TEST_CASE("kron basics and trace multiplicativity", "[tensor]") {
  LabeledMatrix id2a = LabeledMatrix::identity(RegisterSystem({{"a", 2}}));
  LabeledMatrix id2b = LabeledMatrix::identity(RegisterSystem({{"b", 2}}));
  LabeledMatrix id4 = kron(id2a, id2b);
  CHECK(id4.dim() == 4);
  CHECK((id4.mat() - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  // |0><0| x |1><1| in basis |00>..|11| has a single unit entry at (1, 1).
  Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(2, 2), p1 = Eigen::MatrixXcd::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  LabeledMatrix prod = kron(LabeledMatrix(RegisterSystem({{"a", 2}}), p0),
                            LabeledMatrix(RegisterSystem({{"b", 2}}), p1));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      CHECK(prod.mat()(r, c) == (r == 1 && c == 1 ? Complex(1, 0) : Complex(0, 0)));

  std::mt19937 rng(7);
  LabeledMatrix a = random_labeled(RegisterSystem({{"a", 2}}), rng);
  LabeledMatrix b = random_labeled(RegisterSystem({{"b", 3}}), rng);
  CHECK(std::abs(kron(a, b).trace() - a.trace() * b.trace()) < 1e-12);

  CHECK_THROWS_AS(kron(a, a), std::invalid_argument);  // duplicate label
}

TEST_CASE("partial trace", "[tensor]") {
  LabeledMatrix phi = max_entangled(2, "A", "B");
  LabeledMatrix marginal = partial_trace(phi, {"B"});
  CHECK((marginal.mat() - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);

  std::mt19937 rng(11);
  LabeledMatrix m = random_labeled(RegisterSystem({{"A", 2}, {"B", 2}}), rng, true);
  LabeledMatrix full = partial_trace(m, {"A", "B"});
  CHECK(full.dim() == 1);
  CHECK(std::abs(full.mat()(0, 0) - m.trace()) < 1e-13);

  // Explicit 4-index summation oracle on A(2) B(2).
  Eigen::MatrixXcd oracle = Eigen::MatrixXcd::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) oracle(i, j) += m.mat()(i * 2 + k, j * 2 + k);
  CHECK((partial_trace(m, {"B"}).mat() - oracle).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS_AS(partial_trace(m, {"C"}), std::invalid_argument);
  // Trace is preserved.
  CHECK(std::abs(partial_trace(m, {"A"}).trace() - m.trace()) < 1e-13);
}

TEST_CASE("partial transpose", "[tensor]") {
  LabeledMatrix phi = max_entangled(2, "A", "B");
  LabeledMatrix pt = partial_transpose(phi, {"B"});
  LabeledMatrix half_swap = 0.5 * swap_operator(2, "A", "B");
  CHECK((pt.mat() - half_swap.mat()).cwiseAbs().maxCoeff() < 1e-15);
  auto ev = hermitian_eigenvalues(pt);
  CHECK(ev[0] == Catch::Approx(-0.5).margin(1e-12));
  CHECK(ev[1] == Catch::Approx(0.5).margin(1e-12));
  CHECK(ev[3] == Catch::Approx(0.5).margin(1e-12));

  // Diagonal matrices are invariant.
  RegisterSystem sys({{"A", 2}, {"B", 3}});
  Eigen::VectorXcd d = Eigen::VectorXcd::Random(6);
  LabeledMatrix diag(sys, d.asDiagonal());
  CHECK((partial_transpose(diag, {"B"}).mat() - diag.mat()).cwiseAbs().maxCoeff() == 0.0);

  std::mt19937 rng(13);
  LabeledMatrix m = random_labeled(RegisterSystem({{"A", 2}, {"B", 2}}), rng);
  LabeledMatrix twice = partial_transpose(partial_transpose(m, {"B"}), {"B"});
  CHECK((twice.mat() - m.mat()).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(partial_transpose(m, {"nope"}), std::invalid_argument);
}

TEST_CASE("partial transpose commutes with disjoint partial trace", "[tensor]") {
  std::mt19937 rng(17);
  RegisterSystem sys({{"A", 2}, {"B", 2}, {"C", 3}});
  for (int rep = 0; rep < 5; ++rep) {
    LabeledMatrix m = random_labeled(sys, rng, true);
    LabeledMatrix lhs = partial_trace(partial_transpose(m, {"B"}), {"C"});
    LabeledMatrix rhs = partial_transpose(partial_trace(m, {"C"}), {"B"});
    CHECK((lhs.mat() - rhs.mat()).cwiseAbs().maxCoeff() < 1e-10);
  }
  // ptrace(kron(A, B), labels of B) = tr(B) * A.
  for (int rep = 0; rep < 5; ++rep) {
    LabeledMatrix a = random_labeled(RegisterSystem({{"A", 3}}), rng);
    LabeledMatrix b = random_labeled(RegisterSystem({{"B", 2}}), rng);
    LabeledMatrix reduced = partial_trace(kron(a, b), {"B"});
    CHECK((reduced.mat() - b.trace() * a.mat()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("permute registers", "[tensor]") {
  std::mt19937 rng(19);
  RegisterSystem sys({{"A", 2}, {"B", 3}});
  LabeledMatrix m = random_labeled(sys, rng, true);
  LabeledMatrix same = permute_registers(m, {"A", "B"});
  CHECK((same.mat() - m.mat()).cwiseAbs().maxCoeff() == 0.0);

  // Swap of |01><01| becomes |10><10|.
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(4, 4);
  e(1, 1) = 1.0;
  LabeledMatrix basis(RegisterSystem({{"A", 2}, {"B", 2}}), e);
  LabeledMatrix swapped = permute_registers(basis, {"B", "A"});
  CHECK(swapped.mat()(2, 2) == Complex(1, 0));
  CHECK(std::abs(swapped.mat()(1, 1)) == 0.0);

  // Spectrum and trace are preserved (eigensolver oracle).
  LabeledMatrix p = permute_registers(m, {"B", "A"});
  auto ev1 = hermitian_eigenvalues(m);
  auto ev2 = hermitian_eigenvalues(p);
  for (std::size_t i = 0; i < ev1.size(); ++i) CHECK(ev1[i] == Catch::Approx(ev2[i]).margin(1e-10));
  CHECK(std::abs(p.trace() - m.trace()) < 1e-13);

  CHECK_THROWS_AS(permute_registers(m, {"A", "A"}), std::invalid_argument);
  CHECK_THROWS_AS(permute_registers(m, {"A"}), std::invalid_argument);
}

TEST_CASE("hermitian eigenvalues", "[tensor]") {
  auto ones = hermitian_eigenvalues(LabeledMatrix::identity(RegisterSystem({{"A", 5}})));
  for (double v : ones) CHECK(v == Catch::Approx(1.0).margin(1e-14));

  std::mt19937 rng(23);
  LabeledMatrix h = random_labeled(RegisterSystem({{"A", 6}}), rng, true);
  auto ev = hermitian_eigenvalues(h);
  CHECK(std::accumulate(ev.begin(), ev.end(), 0.0) == Catch::Approx(h.trace().real()).margin(1e-10));
  CHECK(std::is_sorted(ev.begin(), ev.end()));

  LabeledMatrix g = random_labeled(RegisterSystem({{"A", 3}}), rng, false);
  CHECK_THROWS_AS(hermitian_eigenvalues(g), std::invalid_argument);
}

TEST_CASE("max entangled state", "[tensor]") {
  LabeledMatrix phi1 = max_entangled(1, "a", "b");
  CHECK(phi1.dim() == 1);
  CHECK(phi1.mat()(0, 0) == Complex(1, 0));

  LabeledMatrix phi2 = max_entangled(2, "a", "b");
  CHECK(phi2.mat()(0, 0) == Complex(0.5, 0));
  CHECK(phi2.mat()(0, 3) == Complex(0.5, 0));
  CHECK(phi2.mat()(3, 0) == Complex(0.5, 0));
  CHECK(phi2.mat()(3, 3) == Complex(0.5, 0));
  CHECK(std::abs(phi2.mat()(1, 1)) == 0.0);

  for (std::size_t k : {2, 3, 5}) {
    LabeledMatrix phi = max_entangled(k, "a", "b");
    CHECK(std::abs(phi.trace() - 1.0) < 1e-14);
    // Purity: tr(Phi^2) = 1.
    CHECK(std::abs((phi.mat() * phi.mat()).trace() - 1.0) < 1e-13);
    LabeledMatrix ma = partial_trace(phi, {"b"});
    CHECK((ma.mat() - Eigen::MatrixXcd::Identity(k, k) / double(k)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(is_psd(phi, 1e-12));
  }
  CHECK_THROWS_AS(max_entangled(0, "a", "b"), std::invalid_argument);
}

TEST_CASE("swap operator", "[tensor]") {
  CHECK(swap_operator(1, "a", "b").mat()(0, 0) == Complex(1, 0));

  LabeledMatrix f2 = swap_operator(2, "a", "b");
  auto ev = hermitian_eigenvalues(f2);
  CHECK(ev[0] == Catch::Approx(-1.0).margin(1e-14));
  CHECK(ev[1] == Catch::Approx(1.0).margin(1e-14));
  CHECK(ev[3] == Catch::Approx(1.0).margin(1e-14));
  CHECK((matmul(f2, f2).mat() - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  LabeledMatrix f3 = swap_operator(3, "a", "b");
  CHECK(f3.trace() == Complex(3, 0));
  // Eigenvalue multiplicities d(d+1)/2 and d(d-1)/2.
  auto ev3 = hermitian_eigenvalues(f3);
  CHECK(std::count_if(ev3.begin(), ev3.end(), [](double v) { return v < 0; }) == 3);
}

TEST_CASE("is_psd", "[tensor]") {
  CHECK(is_psd(max_entangled(2, "a", "b"), 1e-12));
  CHECK_FALSE(is_psd(partial_transpose(max_entangled(2, "a", "b"), {"b"}), 1e-9));
  CHECK(is_psd(LabeledMatrix::zero(RegisterSystem({{"a", 3}})), 1e-12));
}

TEST_CASE("pure state partial transpose eigenvalue range", "[tensor]") {
  std::mt19937 rng(29);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t da = 2 + rep % 2, db = 2 + (rep / 2) % 2;
    Eigen::VectorXcd psi = random_pure_state(da * db, rng);
    LabeledMatrix proj(RegisterSystem({{"A", da}, {"B", db}}), psi * psi.adjoint(), true);
    auto ev = hermitian_eigenvalues(partial_transpose(proj, {"B"}));
    CHECK(ev.front() >= -0.5 - 1e-12);
    CHECK(ev.back() <= 1.0 + 1e-12);
  }
}

TEST_CASE("hermitian hint validates", "[tensor]") {
  Eigen::MatrixXcd bad(2, 2);
  bad << 1.0, Complex(0, 1), Complex(0, 1), 1.0;  // not Hermitian
  CHECK_THROWS_AS(LabeledMatrix(RegisterSystem({{"a", 2}}), bad, true), std::invalid_argument);
  // Sub-threshold skew is silently symmetrized.
  Eigen::MatrixXcd ok(2, 2);
  ok << 1.0, Complex(0.5, 1e-13), Complex(0.5, -2e-13), 1.0;
  LabeledMatrix lm(RegisterSystem({{"a", 2}}), ok, true);
  CHECK(std::abs(lm.mat()(0, 1) - std::conj(lm.mat()(1, 0))) == 0.0);
}
