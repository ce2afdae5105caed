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

#include <Eigen/Dense>
#include <complex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pptdisc/registers.hpp"

namespace pptdisc {

using Complex = std::complex<double>;

/// Asymmetry above this threshold is an error in Hermitian contexts; below it
/// the matrix is silently symmetrized.
inline constexpr double kHermitianTol = 1e-10;

/// Dense complex matrix whose row/column space is a tensor product of named
/// registers.
class LabeledMatrix {
 public:
  LabeledMatrix() : mat_(Eigen::MatrixXcd::Zero(1, 1)) {}

  LabeledMatrix(RegisterSystem system, Eigen::MatrixXcd entries, bool hermitian_hint = false)
      : system_(std::move(system)), mat_(std::move(entries)), hermitian_hint_(hermitian_hint) {
    const auto n = static_cast<Eigen::Index>(system_.total_dim());
    if (mat_.rows() != n || mat_.cols() != n)
      throw std::invalid_argument("matrix size does not match register system dimension");
    if (hermitian_hint_) symmetrize_checked();
  }

  static LabeledMatrix zero(RegisterSystem system) {
    const auto n = static_cast<Eigen::Index>(system.total_dim());
    return LabeledMatrix(std::move(system), Eigen::MatrixXcd::Zero(n, n), true);
  }

  static LabeledMatrix identity(RegisterSystem system) {
    const auto n = static_cast<Eigen::Index>(system.total_dim());
    return LabeledMatrix(std::move(system), Eigen::MatrixXcd::Identity(n, n), true);
  }

  const RegisterSystem& system() const { return system_; }
  const Eigen::MatrixXcd& mat() const { return mat_; }
  Eigen::MatrixXcd& mat() { return mat_; }
  bool hermitian_hint() const { return hermitian_hint_; }
  std::size_t dim() const { return system_.total_dim(); }

  Complex trace() const { return mat_.trace(); }

  double max_abs() const { return mat_.cwiseAbs().maxCoeff(); }

  /// Relabels registers without touching entries (dims must match).
  LabeledMatrix relabeled(const std::vector<std::string>& new_labels) const {
    if (new_labels.size() != system_.size())
      throw std::invalid_argument("relabel: wrong number of labels");
    std::vector<Register> regs;
    for (std::size_t i = 0; i < new_labels.size(); ++i)
      regs.push_back({new_labels[i], system_.at(i).dim});
    return LabeledMatrix(RegisterSystem(std::move(regs)), mat_, hermitian_hint_);
  }

  /// Replaces the register metadata by `fused` whose total dimension must
  /// equal the current one; the entry layout is reinterpreted in place.
  LabeledMatrix fused(RegisterSystem fused_system) const {
    if (fused_system.total_dim() != system_.total_dim())
      throw std::invalid_argument("fuse: total dimension mismatch");
    return LabeledMatrix(std::move(fused_system), mat_, hermitian_hint_);
  }

  friend LabeledMatrix operator+(const LabeledMatrix& a, const LabeledMatrix& b) {
    require_same_system(a, b, "+");
    return LabeledMatrix(a.system_, a.mat_ + b.mat_, a.hermitian_hint_ && b.hermitian_hint_);
  }

  friend LabeledMatrix operator-(const LabeledMatrix& a, const LabeledMatrix& b) {
    require_same_system(a, b, "-");
    return LabeledMatrix(a.system_, a.mat_ - b.mat_, a.hermitian_hint_ && b.hermitian_hint_);
  }

  friend LabeledMatrix operator*(Complex c, const LabeledMatrix& a) {
    return LabeledMatrix(a.system_, c * a.mat_,
                         a.hermitian_hint_ && std::abs(c.imag()) == 0.0);
  }

  friend LabeledMatrix operator*(double c, const LabeledMatrix& a) {
    return LabeledMatrix(a.system_, c * a.mat_, a.hermitian_hint_);
  }

  /// Matrix product; systems must agree register-by-register.
  friend LabeledMatrix matmul(const LabeledMatrix& a, const LabeledMatrix& b) {
    require_same_system(a, b, "matmul");
    return LabeledMatrix(a.system_, a.mat_ * b.mat_, false);
  }

  static void require_same_system(const LabeledMatrix& a, const LabeledMatrix& b,
                                  const std::string& op) {
    if (!(a.system_ == b.system_))
      throw std::invalid_argument("operands of '" + op + "' live on different register systems");
  }

 private:
  void symmetrize_checked() {
    const double asym = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTol)
      throw std::invalid_argument("matrix marked Hermitian deviates from Hermiticity by " +
                                  std::to_string(asym));
    mat_ = ((mat_ + mat_.adjoint()) / 2.0).eval();
  }

  RegisterSystem system_;
  Eigen::MatrixXcd mat_;
  bool hermitian_hint_ = false;
};

/// Kronecker product; the result system is A's registers followed by B's.
inline LabeledMatrix kron(const LabeledMatrix& a, const LabeledMatrix& b) {
  RegisterSystem sys = a.system() + b.system();  // throws on duplicate labels
  const auto na = static_cast<Eigen::Index>(a.dim());
  const auto nb = static_cast<Eigen::Index>(b.dim());
  Eigen::MatrixXcd out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < na; ++j)
      out.block(i * nb, j * nb, nb, nb) = a.mat()(i, j) * b.mat();
  return LabeledMatrix(std::move(sys), std::move(out),
                       a.hermitian_hint() && b.hermitian_hint());
}

namespace detail {

inline std::vector<std::size_t> positions_of(const RegisterSystem& sys,
                                             const std::set<std::string>& labels) {
  std::vector<std::size_t> pos;
  for (const auto& l : labels) pos.push_back(sys.index_of(l));  // throws on unknown label
  std::sort(pos.begin(), pos.end());
  return pos;
}

}  // namespace detail

/// Traces out `traced_labels`; the result lives on the remaining registers in
/// their original relative order.
inline LabeledMatrix partial_trace(const LabeledMatrix& m,
                                   const std::set<std::string>& traced_labels) {
  const RegisterSystem& sys = m.system();
  const auto traced_pos = detail::positions_of(sys, traced_labels);
  RegisterSystem out_sys = sys.without(traced_labels);
  const std::size_t n = sys.total_dim();
  const auto no = static_cast<Eigen::Index>(out_sys.total_dim());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(no, no);

  std::vector<std::size_t> dr, dc, kept_r, kept_c;
  std::vector<bool> is_traced(sys.size(), false);
  for (auto p : traced_pos) is_traced[p] = true;
  for (std::size_t r = 0; r < n; ++r) {
    sys.decode(r, dr);
    for (std::size_t c = 0; c < n; ++c) {
      sys.decode(c, dc);
      bool diag = true;
      for (auto p : traced_pos)
        if (dr[p] != dc[p]) { diag = false; break; }
      if (!diag) continue;
      kept_r.clear();
      kept_c.clear();
      for (std::size_t i = 0; i < sys.size(); ++i) {
        if (is_traced[i]) continue;
        kept_r.push_back(dr[i]);
        kept_c.push_back(dc[i]);
      }
      out(static_cast<Eigen::Index>(out_sys.encode(kept_r)),
          static_cast<Eigen::Index>(out_sys.encode(kept_c))) += m.mat()(r, c);
    }
  }
  return LabeledMatrix(std::move(out_sys), std::move(out), m.hermitian_hint());
}

/// Transpose on the listed registers, in the computational basis of each.
inline LabeledMatrix partial_transpose(const LabeledMatrix& m,
                                       const std::set<std::string>& transposed_labels) {
  const RegisterSystem& sys = m.system();
  const auto pos = detail::positions_of(sys, transposed_labels);
  const std::size_t n = sys.total_dim();
  Eigen::MatrixXcd out(n, n);
  std::vector<std::size_t> dr, dc;
  for (std::size_t r = 0; r < n; ++r) {
    sys.decode(r, dr);
    for (std::size_t c = 0; c < n; ++c) {
      sys.decode(c, dc);
      auto tr = dr, tc = dc;
      for (auto p : pos) std::swap(tr[p], tc[p]);
      out(static_cast<Eigen::Index>(sys.encode(tr)),
          static_cast<Eigen::Index>(sys.encode(tc))) = m.mat()(r, c);
    }
  }
  return LabeledMatrix(sys, std::move(out), m.hermitian_hint());
}

/// Re-indexes the matrix under the basis permutation induced by `new_order`.
inline LabeledMatrix permute_registers(const LabeledMatrix& m,
                                       const std::vector<std::string>& new_order) {
  const RegisterSystem& sys = m.system();
  RegisterSystem out_sys = sys.reordered(new_order);
  const std::size_t n = sys.total_dim();
  std::vector<std::size_t> perm_pos(new_order.size());
  for (std::size_t i = 0; i < new_order.size(); ++i) perm_pos[i] = sys.index_of(new_order[i]);

  std::vector<std::size_t> map(n), d, dp(new_order.size());
  for (std::size_t f = 0; f < n; ++f) {
    sys.decode(f, d);
    for (std::size_t i = 0; i < perm_pos.size(); ++i) dp[i] = d[perm_pos[i]];
    map[f] = out_sys.encode(dp);
  }
  Eigen::MatrixXcd out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      out(static_cast<Eigen::Index>(map[r]), static_cast<Eigen::Index>(map[c])) =
          m.mat()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  return LabeledMatrix(std::move(out_sys), std::move(out), m.hermitian_hint());
}

/// Symmetrizes (M + M^dagger)/2, rejecting asymmetry beyond kHermitianTol.
inline Eigen::MatrixXcd hermitian_part_checked(const LabeledMatrix& m) {
  const double asym = (m.mat() - m.mat().adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol)
    throw std::invalid_argument("matrix is not Hermitian: asymmetry " + std::to_string(asym));
  return (m.mat() + m.mat().adjoint()) / 2.0;
}

/// Real eigenvalues in ascending order.
inline std::vector<double> hermitian_eigenvalues(const LabeledMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part_checked(m),
                                                     Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  const auto& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

inline double min_eigenvalue(const LabeledMatrix& m) { return hermitian_eigenvalues(m).front(); }

inline bool is_psd(const LabeledMatrix& m, double tol) { return min_eigenvalue(m) >= -tol; }

/// The maximally entangled state Phi_k = 1/k sum_ij |ii><jj| on registers
/// (a, b), each of dimension k. Trace one.
inline LabeledMatrix max_entangled(std::size_t k, const std::string& a, const std::string& b) {
  if (k < 1) throw std::invalid_argument("max_entangled: k must be >= 1");
  RegisterSystem sys({{a, k}, {b, k}});
  const auto n = static_cast<Eigen::Index>(k * k);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      out(static_cast<Eigen::Index>(i * k + i), static_cast<Eigen::Index>(j * k + j)) =
          1.0 / static_cast<double>(k);
  return LabeledMatrix(std::move(sys), std::move(out), true);
}

/// SWAP operator F|ij> = |ji> on registers (a, b) of dimension d each.
inline LabeledMatrix swap_operator(std::size_t d, const std::string& a, const std::string& b) {
  if (d < 1) throw std::invalid_argument("swap_operator: d must be >= 1");
  RegisterSystem sys({{a, d}, {b, d}});
  const auto n = static_cast<Eigen::Index>(d * d);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      out(static_cast<Eigen::Index>(j * d + i), static_cast<Eigen::Index>(i * d + j)) = 1.0;
  return LabeledMatrix(std::move(sys), std::move(out), true);
}

}  // namespace pptdisc
