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

#include <variant>
#include <vector>

#include "pptdisc/labeled_matrix.hpp"

namespace pptdisc {

/// Hermitian matrix variable of a conic program. Scalars are variables on an
/// empty register system (dimension 1).
struct HermitianVar {
  int id = -1;
  RegisterSystem system;
  std::string name;

  std::size_t dim() const { return system.total_dim(); }
};

// Linear transforms applicable to a variable inside an expression term.
struct OpPartialTranspose {
  std::set<std::string> labels;
};
struct OpPartialTrace {
  std::set<std::string> labels;
};
/// X -> X (x) constant (var_first) or constant (x) X.
struct OpTensorConstant {
  LabeledMatrix constant;
  bool var_first = true;
};
struct OpPermute {
  std::vector<std::string> order;
};
/// X -> 1x1 [tr(weight * X)].
struct OpTraceAgainst {
  LabeledMatrix weight;
};

using TransformOp =
    std::variant<OpPartialTranspose, OpPartialTrace, OpTensorConstant, OpPermute, OpTraceAgainst>;
using TransformChain = std::vector<TransformOp>;

inline RegisterSystem transformed_system(const RegisterSystem& sys, const TransformOp& op) {
  if (std::holds_alternative<OpPartialTranspose>(op)) {
    for (const auto& l : std::get<OpPartialTranspose>(op).labels) (void)sys.index_of(l);
    return sys;
  }
  if (std::holds_alternative<OpPartialTrace>(op)) {
    const auto& labels = std::get<OpPartialTrace>(op).labels;
    for (const auto& l : labels) (void)sys.index_of(l);
    return sys.without(labels);
  }
  if (std::holds_alternative<OpTensorConstant>(op)) {
    const auto& tc = std::get<OpTensorConstant>(op);
    return tc.var_first ? sys + tc.constant.system() : tc.constant.system() + sys;
  }
  if (std::holds_alternative<OpPermute>(op)) return sys.reordered(std::get<OpPermute>(op).order);
  return RegisterSystem{};  // OpTraceAgainst
}

inline RegisterSystem transformed_system(RegisterSystem sys, const TransformChain& chain) {
  for (const auto& op : chain) sys = transformed_system(sys, op);
  return sys;
}

inline LabeledMatrix apply_transform(const LabeledMatrix& x, const TransformOp& op) {
  if (std::holds_alternative<OpPartialTranspose>(op))
    return partial_transpose(x, std::get<OpPartialTranspose>(op).labels);
  if (std::holds_alternative<OpPartialTrace>(op))
    return partial_trace(x, std::get<OpPartialTrace>(op).labels);
  if (std::holds_alternative<OpTensorConstant>(op)) {
    const auto& tc = std::get<OpTensorConstant>(op);
    return tc.var_first ? kron(x, tc.constant) : kron(tc.constant, x);
  }
  if (std::holds_alternative<OpPermute>(op))
    return permute_registers(x, std::get<OpPermute>(op).order);
  const auto& w = std::get<OpTraceAgainst>(op).weight;
  LabeledMatrix::require_same_system(w, x, "trace_against");
  Eigen::MatrixXcd out(1, 1);
  out(0, 0) = (w.mat() * x.mat()).trace();
  return LabeledMatrix(RegisterSystem{}, std::move(out));
}

inline LabeledMatrix apply_transform_chain(LabeledMatrix x, const TransformChain& chain) {
  for (const auto& op : chain) x = apply_transform(x, op);
  return x;
}

/// One summand of a linear expression: coeff * chain(var).
struct Term {
  Complex coeff{1.0, 0.0};
  int var = -1;
  TransformChain ops;
};

/// Affine matrix-valued expression: constant + sum of terms; every term must
/// land on the expression's register system.
class LinearExpr {
 public:
  LinearExpr() : constant_(LabeledMatrix::zero(RegisterSystem{})) {}

  explicit LinearExpr(RegisterSystem system)
      : system_(system), constant_(LabeledMatrix::zero(system)) {}

  static LinearExpr scalar(double c) {
    LinearExpr e;
    e.constant_.mat()(0, 0) = c;
    return e;
  }

  const RegisterSystem& system() const { return system_; }
  const LabeledMatrix& constant() const { return constant_; }
  const std::vector<Term>& terms() const { return terms_; }

  LinearExpr& add_constant(const LabeledMatrix& c) {
    if (!(c.system() == system_))
      throw std::invalid_argument("expression constant lives on a different register system");
    constant_ = constant_ + LabeledMatrix(system_, c.mat());
    return *this;
  }

  LinearExpr& add_term(Complex coeff, const HermitianVar& var, TransformChain ops = {}) {
    RegisterSystem out = transformed_system(var.system, ops);
    if (!(out == system_))
      throw std::invalid_argument("term for variable '" + var.name +
                                  "' does not land on the expression's register system");
    terms_.push_back(Term{coeff, var.id, std::move(ops)});
    return *this;
  }

  LabeledMatrix evaluate(const std::vector<LabeledMatrix>& assignment_by_var) const {
    LabeledMatrix acc = constant_;
    for (const auto& t : terms_) {
      const LabeledMatrix& x = assignment_by_var.at(static_cast<std::size_t>(t.var));
      acc = acc + t.coeff * apply_transform_chain(x, t.ops);
    }
    return acc;
  }

 private:
  RegisterSystem system_;
  LabeledMatrix constant_;
  std::vector<Term> terms_;
};

// Convenience builders for common transform chains.
inline TransformOp pt(std::set<std::string> labels) { return OpPartialTranspose{std::move(labels)}; }
inline TransformOp ptrace(std::set<std::string> labels) { return OpPartialTrace{std::move(labels)}; }
inline TransformOp tensor_id(RegisterSystem sys, bool var_first = true) {
  return OpTensorConstant{LabeledMatrix::identity(std::move(sys)), var_first};
}
inline TransformOp tensor_const(LabeledMatrix k, bool var_first = true) {
  return OpTensorConstant{std::move(k), var_first};
}
inline TransformOp trace_against(LabeledMatrix w) { return OpTraceAgainst{std::move(w)}; }

}  // namespace pptdisc
