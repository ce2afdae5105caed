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

#pragma once

#include <random>

#include "pptdisc/channel.hpp"

namespace pptdisc::testing {

inline Eigen::MatrixXcd random_ginibre(std::size_t rows, std::size_t cols, std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = Complex(n(rng), n(rng));
  return m;
}

inline Eigen::MatrixXcd random_unitary(std::size_t d, std::mt19937& rng) {
  Eigen::MatrixXcd g = random_ginibre(d, d, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < q.cols(); ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

inline Eigen::MatrixXcd random_hermitian(std::size_t d, std::mt19937& rng) {
  Eigen::MatrixXcd g = random_ginibre(d, d, rng);
  return (g + g.adjoint()) / 2.0;
}

inline Eigen::VectorXcd random_pure_state(std::size_t d, std::mt19937& rng) {
  Eigen::VectorXcd v = random_ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

inline Eigen::MatrixXcd random_density(std::size_t d, std::mt19937& rng) {
  Eigen::MatrixXcd g = random_ginibre(d, d, rng);
  Eigen::MatrixXcd rho = g * g.adjoint();
  return rho / rho.trace().real();
}

/// Haar-ish random CPTP map via a random isometry split into Kraus blocks.
inline std::vector<Eigen::MatrixXcd> random_kraus(std::size_t d_in, std::size_t d_out,
                                                  std::size_t rank, std::mt19937& rng) {
  while (rank * d_out < d_in) ++rank;  // an isometry needs d_out * rank >= d_in
  Eigen::MatrixXcd g = random_ginibre(d_out * rank, d_in, rng);
  // Orthonormalize columns: V = G (G^dag G)^{-1/2}, an isometry.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g.adjoint() * g);
  Eigen::MatrixXcd inv_sqrt = es.operatorInverseSqrt();
  Eigen::MatrixXcd v = g * inv_sqrt;
  std::vector<Eigen::MatrixXcd> kraus;
  for (std::size_t k = 0; k < rank; ++k)
    kraus.push_back(v.block(static_cast<Eigen::Index>(k * d_out), 0,
                            static_cast<Eigen::Index>(d_out),
                            static_cast<Eigen::Index>(d_in)));
  return kraus;
}

inline ChoiOperator random_pp_channel(std::size_t d_in, std::size_t d_out, std::size_t rank,
                                      std::mt19937& rng) {
  return choi_from_kraus(random_kraus(d_in, d_out, rank, rng), {d_in, 1}, {1, d_out});
}

/// Column-stochastic matrix with a Dirichlet-ish column draw.
inline Eigen::MatrixXd random_stochastic(std::size_t rows, std::size_t cols, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  Eigen::MatrixXd s(rows, cols);
  for (Eigen::Index c = 0; c < s.cols(); ++c) {
    double total = 0.0;
    for (Eigen::Index r = 0; r < s.rows(); ++r) {
      s(r, c) = u(rng);
      total += s(r, c);
    }
    s.col(c) /= total;
  }
  return s;
}

/// Operator-sum application, the oracle for link-product channel action.
inline Eigen::MatrixXcd apply_kraus(const std::vector<Eigen::MatrixXcd>& kraus,
                                    const Eigen::MatrixXcd& rho) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kraus[0].rows(), kraus[0].rows());
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  return out;
}

}  // namespace pptdisc::testing
