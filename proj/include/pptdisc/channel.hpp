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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pptdisc/labeled_matrix.hpp"

namespace pptdisc {

enum class Party { Alice, Bob };

/// Canonical register labels for bipartite channels. All stored Choi
/// operators use the order (A0, B0, A1, B1); point-to-point channels carry
/// dimension-1 registers B0 and A1.
inline const std::string kA0 = "A0";
inline const std::string kB0 = "B0";
inline const std::string kA1 = "A1";
inline const std::string kB1 = "B1";

inline std::vector<std::string> canonical_order() { return {kA0, kB0, kA1, kB1}; }

inline std::map<std::string, Party> default_ownership() {
  return {{kA0, Party::Alice}, {kA1, Party::Alice}, {kB0, Party::Bob}, {kB1, Party::Bob}};
}

/// Unnormalized Choi operator of a bipartite channel, trace = d_{A0}*d_{B0}.
struct ChoiOperator {
  LabeledMatrix matrix;  // on (A0, B0, A1, B1)
  std::set<std::string> input_labels{kA0, kB0};
  std::set<std::string> output_labels{kA1, kB1};
  std::map<std::string, Party> ownership = default_ownership();

  std::size_t dim(const std::string& label) const { return matrix.system().dim_of(label); }
  std::size_t d_in() const { return dim(kA0) * dim(kB0); }
  std::size_t d_out() const { return dim(kA1) * dim(kB1); }

  RegisterSystem input_system() const {
    return RegisterSystem({{kA0, dim(kA0)}, {kB0, dim(kB0)}});
  }
  RegisterSystem output_system() const {
    return RegisterSystem({{kA1, dim(kA1)}, {kB1, dim(kB1)}});
  }

  /// PSD, trace-preserving marginal, and total trace, all at `tol`.
  void validate(double tol = 1e-9) const {
    if (matrix.system().labels() != canonical_order())
      throw std::invalid_argument("Choi operator must live on registers (A0, B0, A1, B1)");
    if (!is_psd(matrix, tol)) throw std::invalid_argument("Choi operator is not PSD");
    LabeledMatrix marginal = partial_trace(matrix, output_labels);
    LabeledMatrix id_in = LabeledMatrix::identity(marginal.system());
    if ((marginal - id_in).max_abs() > tol)
      throw std::invalid_argument("Choi operator is not trace preserving");
    if (std::abs(matrix.trace().real() - static_cast<double>(d_in())) > tol * d_in())
      throw std::invalid_argument("Choi operator trace differs from input dimension");
  }
};

namespace detail {

inline RegisterSystem canon_system(std::size_t dA0, std::size_t dB0, std::size_t dA1,
                                   std::size_t dB1) {
  return RegisterSystem({{kA0, dA0}, {kB0, dB0}, {kA1, dA1}, {kB1, dB1}});
}

}  // namespace detail

/// Builds the Choi operator from a Kraus representation. `in` are the
/// (A0, B0) dimensions and `out` the (A1, B1) dimensions; each Kraus operator
/// maps the flattened input space to the flattened output space.
inline ChoiOperator choi_from_kraus(const std::vector<Eigen::MatrixXcd>& kraus,
                                    std::pair<std::size_t, std::size_t> in,
                                    std::pair<std::size_t, std::size_t> out) {
  const std::size_t din = in.first * in.second, dout = out.first * out.second;
  if (kraus.empty()) throw std::invalid_argument("empty Kraus set");
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(din, din);
  for (const auto& k : kraus) {
    if (k.rows() != static_cast<Eigen::Index>(dout) || k.cols() != static_cast<Eigen::Index>(din))
      throw std::invalid_argument("Kraus operator has wrong shape");
    acc += k.adjoint() * k;
  }
  if ((acc - Eigen::MatrixXcd::Identity(din, din)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("Kraus set is not trace preserving");

  RegisterSystem sys = detail::canon_system(in.first, in.second, out.first, out.second);
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(din * dout, din * dout);
  // J[(j,a),(k,b)] = sum_K K(a,j) conj(K(b,k))
  for (const auto& k : kraus)
    for (std::size_t j = 0; j < din; ++j)
      for (std::size_t kk = 0; kk < din; ++kk)
        for (std::size_t a = 0; a < dout; ++a)
          for (std::size_t b = 0; b < dout; ++b)
            J(j * dout + a, kk * dout + b) += k(a, j) * std::conj(k(b, kk));
  ChoiOperator choi{LabeledMatrix(std::move(sys), std::move(J), true)};
  choi.validate();
  return choi;
}

/// Identity channel on a d-dimensional point-to-point system.
inline ChoiOperator identity_channel(std::size_t d) {
  return choi_from_kraus({Eigen::MatrixXcd::Identity(d, d)}, {d, 1}, {1, d});
}

/// Amplitude damping channel with decay gamma, from Alice to Bob.
inline ChoiOperator amplitude_damping(double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("amplitude damping: gamma must lie in [0, 1]");
  Eigen::MatrixXcd k0 = Eigen::MatrixXcd::Zero(2, 2), k1 = Eigen::MatrixXcd::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  return choi_from_kraus({k0, k1}, {2, 1}, {1, 2});
}

/// D^p(X) = (1-p) X + p tr(X) 1/d on the joint input A0 B0, with
/// J = d_A d_B (1-p) Phi_{A0A1} x Phi_{B0B1} + p 1 / (d_A d_B).
inline ChoiOperator depolarizing_bipartite(std::size_t dA, std::size_t dB, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing: p must lie in [0, 1]");
  const double D = static_cast<double>(dA * dB);
  LabeledMatrix phi_pair = kron(max_entangled(dA, kA0, kA1), max_entangled(dB, kB0, kB1));
  LabeledMatrix J = permute_registers(phi_pair, canonical_order());
  J = (D * (1.0 - p)) * J + (p / D) * LabeledMatrix::identity(J.system());
  ChoiOperator choi{std::move(J)};
  choi.validate();
  return choi;
}

/// Point-to-point depolarizing channel: J = d (1-p) Phi_{A0B1} + p 1/d.
inline ChoiOperator depolarizing_pp(std::size_t d, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing: p must lie in [0, 1]");
  LabeledMatrix phi = max_entangled(d, kA0, kB1);
  LabeledMatrix lift = kron(kron(phi, LabeledMatrix::identity(RegisterSystem({{kB0, 1}}))),
                            LabeledMatrix::identity(RegisterSystem({{kA1, 1}})));
  LabeledMatrix J = permute_registers(lift, canonical_order());
  J = (static_cast<double>(d) * (1.0 - p)) * J +
      (p / static_cast<double>(d)) * LabeledMatrix::identity(J.system());
  ChoiOperator choi{std::move(J)};
  choi.validate();
  return choi;
}

/// S^p(X) = (1-p) F X F + p tr(X) 1/d^2 with
/// J = (1-p) d^2 Phi_{A0B1} x Phi_{B0A1} + p 1/d^2.
inline ChoiOperator depolarized_swap(std::size_t d, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarized swap: p must lie in [0, 1]");
  const double D = static_cast<double>(d * d);
  LabeledMatrix phi_pair = kron(max_entangled(d, kA0, kB1), max_entangled(d, kB0, kA1));
  LabeledMatrix J = permute_registers(phi_pair, canonical_order());
  J = (D * (1.0 - p)) * J + (p / D) * LabeledMatrix::identity(J.system());
  ChoiOperator choi{std::move(J)};
  choi.validate();
  return choi;
}

/// Werner-Holevo channels W_0/W_1 with J = (1 +/- F_{A0B1}) / (d +/- 1).
inline ChoiOperator werner_holevo(std::size_t d, int index) {
  if (index != 0 && index != 1) throw std::invalid_argument("werner_holevo: index must be 0 or 1");
  if (index == 1 && d == 1)
    throw std::invalid_argument("werner_holevo: index 1 requires d >= 2");
  LabeledMatrix F = swap_operator(d, kA0, kB1);
  LabeledMatrix lift = kron(kron(F, LabeledMatrix::identity(RegisterSystem({{kB0, 1}}))),
                            LabeledMatrix::identity(RegisterSystem({{kA1, 1}})));
  LabeledMatrix F_canon = permute_registers(lift, canonical_order());
  const double sign = index == 0 ? 1.0 : -1.0;
  const double denom = static_cast<double>(d) + sign;
  LabeledMatrix J =
      (1.0 / denom) * (LabeledMatrix::identity(F_canon.system()) + sign * F_canon);
  ChoiOperator choi{std::move(J)};
  choi.validate();
  return choi;
}

/// Replacer channel N(X) = tr(X) * state, with input dims (dA0, dB0) and
/// `state` a density matrix on (A1, B1).
inline ChoiOperator replacer(std::pair<std::size_t, std::size_t> in, const LabeledMatrix& state) {
  if (state.system().labels() != std::vector<std::string>{kA1, kB1})
    throw std::invalid_argument("replacer: state must live on registers (A1, B1)");
  if (std::abs(state.trace().real() - 1.0) > 1e-10 || !is_psd(state, 1e-10))
    throw std::invalid_argument("replacer: state must be a density matrix");
  LabeledMatrix in_id =
      LabeledMatrix::identity(RegisterSystem({{kA0, in.first}, {kB0, in.second}}));
  ChoiOperator choi{kron(in_id, state)};
  choi.validate();
  return choi;
}

/// Classical channel given by a column-stochastic matrix S with
/// S(out, in) >= 0 and sum_out S(out, in) = 1, over the product alphabets
/// in = (A0, B0) and out = (A1, B1). The Choi operator is diagonal.
inline ChoiOperator classical_channel(const Eigen::MatrixXd& stochastic,
                                      std::pair<std::size_t, std::size_t> in,
                                      std::pair<std::size_t, std::size_t> out) {
  const std::size_t din = in.first * in.second, dout = out.first * out.second;
  if (stochastic.rows() != static_cast<Eigen::Index>(dout) ||
      stochastic.cols() != static_cast<Eigen::Index>(din))
    throw std::invalid_argument("classical channel: stochastic matrix has wrong shape");
  for (Eigen::Index c = 0; c < stochastic.cols(); ++c) {
    double colsum = 0.0;
    for (Eigen::Index r = 0; r < stochastic.rows(); ++r) {
      if (stochastic(r, c) < -1e-12)
        throw std::invalid_argument("classical channel: negative transition probability");
      colsum += stochastic(r, c);
    }
    if (std::abs(colsum - 1.0) > 1e-10)
      throw std::invalid_argument("classical channel: matrix is not column stochastic");
  }
  RegisterSystem sys = detail::canon_system(in.first, in.second, out.first, out.second);
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(din * dout, din * dout);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t o = 0; o < dout; ++o)
      J(i * dout + o, i * dout + o) = stochastic(static_cast<Eigen::Index>(o),
                                                 static_cast<Eigen::Index>(i));
  ChoiOperator choi{LabeledMatrix(std::move(sys), std::move(J), true)};
  choi.validate();
  return choi;
}

/// Link product J1 * J2 = tr_shared[(J1^{T_shared} x 1)(1 x J2)], on the
/// union of the remaining registers (J1's first, then J2's).
inline LabeledMatrix link_product(const LabeledMatrix& j1, const LabeledMatrix& j2,
                                  const std::set<std::string>& shared_labels) {
  for (const auto& l : shared_labels) {
    if (!j1.system().has(l) || !j2.system().has(l))
      throw std::invalid_argument("link product: shared label '" + l + "' missing from an operand");
    if (j1.system().dim_of(l) != j2.system().dim_of(l))
      throw std::invalid_argument("link product: dimension mismatch on shared label '" + l + "'");
  }
  // Registers of j2 not shared with j1.
  std::vector<Register> only2;
  for (const auto& r : j2.system().registers())
    if (!shared_labels.count(r.label)) only2.push_back(r);
  std::vector<Register> only1;
  for (const auto& r : j1.system().registers())
    if (!shared_labels.count(r.label)) only1.push_back(r);

  LabeledMatrix left = kron(partial_transpose(j1, shared_labels),
                            LabeledMatrix::identity(RegisterSystem(only2)));
  LabeledMatrix right = kron(LabeledMatrix::identity(RegisterSystem(only1)), j2);
  right = permute_registers(right, left.system().labels());
  LabeledMatrix prod = matmul(left, right);
  return partial_trace(prod, shared_labels);
}

/// Applies a channel (as a Choi operator) to a state on its input registers.
inline LabeledMatrix apply_channel(const ChoiOperator& choi, const LabeledMatrix& state) {
  if (!(state.system() == choi.input_system()))
    throw std::invalid_argument("apply_channel: state must live on (A0, B0)");
  return link_product(state, choi.matrix, {kA0, kB0});
}

/// Tensor product of channels acting in parallel; register groups are fused
/// so the composite again lives on canonical (A0, B0, A1, B1).
inline ChoiOperator parallel_compose(const std::vector<ChoiOperator>& chois) {
  if (chois.empty()) throw std::invalid_argument("parallel_compose: empty channel list");
  for (const auto& c : chois)
    if (c.ownership != chois.front().ownership &&
        !(c.ownership == default_ownership() && chois.front().ownership == default_ownership()))
      throw std::invalid_argument("parallel_compose: incompatible ownership");
  LabeledMatrix acc = chois[0].matrix.relabeled({"A0#0", "B0#0", "A1#0", "B1#0"});
  for (std::size_t i = 1; i < chois.size(); ++i) {
    const std::string s = "#" + std::to_string(i);
    acc = kron(acc, chois[i].matrix.relabeled({"A0" + s, "B0" + s, "A1" + s, "B1" + s}));
  }
  std::vector<std::string> grouped;
  std::size_t dA0 = 1, dB0 = 1, dA1 = 1, dB1 = 1;
  for (const auto& base : canonical_order())
    for (std::size_t i = 0; i < chois.size(); ++i) grouped.push_back(base + "#" + std::to_string(i));
  for (const auto& c : chois) {
    dA0 *= c.dim(kA0);
    dB0 *= c.dim(kB0);
    dA1 *= c.dim(kA1);
    dB1 *= c.dim(kB1);
  }
  LabeledMatrix ordered = permute_registers(acc, grouped);
  ChoiOperator out{ordered.fused(detail::canon_system(dA0, dB0, dA1, dB1))};
  out.validate();
  return out;
}

enum class CovarianceMode { Covariant, CrossCovariant };

/// Max over the sampled (U, V) pairs of ||Gamma J Gamma^dag - J||_max, with
/// Gamma = conj(U) x conj(V) x U x V (covariant) or conj(U) x conj(V) x V x U
/// (cross-covariant).
inline double verify_covariance(const ChoiOperator& choi,
                                const std::vector<std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>>& pairs,
                                CovarianceMode mode) {
  const std::size_t dA0 = choi.dim(kA0), dB0 = choi.dim(kB0);
  const std::size_t dA1 = choi.dim(kA1), dB1 = choi.dim(kB1);
  if (dA0 != dA1 || dB0 != dB1)
    throw std::invalid_argument("verify_covariance: requires d_A0 = d_A1 and d_B0 = d_B1");
  if (mode == CovarianceMode::CrossCovariant && dA0 != dB0)
    throw std::invalid_argument("verify_covariance: cross mode requires d_A0 = d_B0");
  double worst = 0.0;
  for (const auto& [U, V] : pairs) {
    if (U.rows() != static_cast<Eigen::Index>(dA0) || V.rows() != static_cast<Eigen::Index>(dB0))
      throw std::invalid_argument("verify_covariance: unitary dimension mismatch");
    LabeledMatrix gU(RegisterSystem({{kA0, dA0}}), U.conjugate());
    LabeledMatrix gV(RegisterSystem({{kB0, dB0}}), V.conjugate());
    LabeledMatrix g1(RegisterSystem({{kA1, dA1}}),
                     mode == CovarianceMode::Covariant ? U : V);
    LabeledMatrix g2(RegisterSystem({{kB1, dB1}}),
                     mode == CovarianceMode::Covariant ? V : U);
    LabeledMatrix gamma = kron(kron(kron(gU, gV), g1), g2);
    Eigen::MatrixXcd conj = gamma.mat() * choi.matrix.mat() * gamma.mat().adjoint();
    worst = std::max(worst, (conj - choi.matrix.mat()).cwiseAbs().maxCoeff());
  }
  return worst;
}

/// Weighted ensemble of channels sharing register dimensions and ownership.
struct ChannelEnsemble {
  std::vector<std::pair<double, ChoiOperator>> items;

  void validate() const {
    if (items.empty()) throw std::invalid_argument("ensemble is empty");
    double total = 0.0;
    for (const auto& [p, choi] : items) {
      if (p < 0.0) throw std::invalid_argument("ensemble probabilities must be nonnegative");
      total += p;
      if (!(choi.matrix.system() == items.front().second.matrix.system()))
        throw std::invalid_argument("ensemble channels must share register dimensions");
      if (choi.ownership != items.front().second.ownership)
        throw std::invalid_argument("ensemble channels must share ownership");
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw std::invalid_argument("ensemble probabilities must sum to one");
  }

  static ChannelEnsemble binary(const ChoiOperator& n, const ChoiOperator& m, double lambda) {
    ChannelEnsemble e{{{lambda, n}, {1.0 - lambda, m}}};
    e.validate();
    return e;
  }
};

}  // namespace pptdisc
