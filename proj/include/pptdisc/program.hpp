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
#include <sstream>
#include <string>
#include <vector>

#include "pptdisc/expr.hpp"

namespace pptdisc {

enum class ConstraintKind { PSD, Zero };
enum class Sense { Maximize, Minimize };
enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalTrouble };

inline std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    default: return "NumericalTrouble";
  }
}

struct ProgramConstraint {
  LinearExpr expr;
  ConstraintKind kind;
  std::string name;
};

/// Conic program over Hermitian matrix variables: PSD and Zero constraints
/// on affine expressions, linear objective.
class ConicProgram {
 public:
  HermitianVar add_var(const std::string& name, RegisterSystem system) {
    HermitianVar v{static_cast<int>(vars_.size()), std::move(system), name};
    vars_.push_back(v);
    return v;
  }

  HermitianVar add_scalar_var(const std::string& name) { return add_var(name, RegisterSystem{}); }

  void add_psd(LinearExpr expr, std::string name = {}) {
    constraints_.push_back({std::move(expr), ConstraintKind::PSD, std::move(name)});
  }

  void add_zero(LinearExpr expr, std::string name = {}) {
    constraints_.push_back({std::move(expr), ConstraintKind::Zero, std::move(name)});
  }

  void set_objective(Sense sense, LinearExpr expr) {
    if (expr.system().total_dim() != 1)
      throw std::invalid_argument("objective must be a scalar expression");
    sense_ = sense;
    objective_ = std::move(expr);
  }

  const std::vector<HermitianVar>& vars() const { return vars_; }
  const HermitianVar& var(int id) const { return vars_.at(static_cast<std::size_t>(id)); }
  const std::vector<ProgramConstraint>& constraints() const { return constraints_; }
  const LinearExpr& objective() const { return objective_; }
  Sense sense() const { return sense_; }

  /// Plain-text standard-form listing for diffing; not a wire format.
  std::string dump() const {
    std::ostringstream os;
    os << (sense_ == Sense::Maximize ? "maximize" : "minimize") << " (" << objective_.terms().size()
       << " terms, constant " << objective_.constant().mat()(0, 0).real() << ")\n";
    os << "variables:\n";
    for (const auto& v : vars_) os << "  " << v.name << " : dim " << v.dim() << "\n";
    os << "constraints:\n";
    for (const auto& c : constraints_)
      os << "  " << (c.kind == ConstraintKind::PSD ? "PSD " : "Zero") << " dim "
         << c.expr.system().total_dim() << " terms " << c.expr.terms().size()
         << (c.name.empty() ? "" : "  (" + c.name + ")") << "\n";
    return os.str();
  }

 private:
  std::vector<HermitianVar> vars_;
  std::vector<ProgramConstraint> constraints_;
  LinearExpr objective_ = LinearExpr::scalar(0.0);
  Sense sense_ = Sense::Maximize;
};

struct SolveOptions {
  double feas_tol = 1e-8;
  double gap_tol = 1e-8;
  int max_iter = 200;
  /// Compile real-data programs with real-symmetric variables instead of the
  /// complex embedding (the optimum of a real-data program can always be
  /// chosen real).
  bool exploit_realness = true;
  /// Re-evaluate every constraint at the returned assignment with dense
  /// tensor arithmetic, independent of solver-reported residuals.
  bool check_residuals = true;
  bool verbose = false;
};

struct Solution {
  SolveStatus status = SolveStatus::NumericalTrouble;
  double value = 0.0;
  std::vector<LabeledMatrix> assignments;  // indexed by variable id
  double max_primal_residual = 0.0;
  double reported_gap = 0.0;
  double reported_infeas = 0.0;
  int iterations = 0;
  std::string message;

  const LabeledMatrix& of(const HermitianVar& v) const {
    return assignments.at(static_cast<std::size_t>(v.id));
  }
};

// ---------------------------------------------------------------------------
// Compiled (flattened) form: scalar parameters y, per-block sparse
// coefficients, equality rows.

struct CTriplet {
  int r = 0, c = 0;
  Complex v{0.0, 0.0};
};

enum class ParamComp { Diag, Re, Im };

struct ParamInfo {
  int var = -1;
  int a = 0, b = 0;
  ParamComp comp = ParamComp::Diag;
};

struct CompiledBlock {
  std::size_t dim = 1;
  std::string name;
  Eigen::MatrixXcd constant;                 // S(y) = constant + sum_i y_i F_i >= 0
  std::vector<int> vars;                     // global parameter indices
  std::vector<std::vector<CTriplet>> coeffs; // aligned with vars
};

struct CompiledProgram {
  int num_params = 0;
  std::vector<ParamInfo> params;
  std::vector<std::pair<int, int>> var_param_range;  // per variable id
  std::vector<CompiledBlock> blocks;
  Eigen::MatrixXd eq_A;   // eq_A * y = eq_rhs
  Eigen::VectorXd eq_rhs;
  Eigen::VectorXd obj;    // objective = obj . y + obj_const (in original sense)
  double obj_const = 0.0;
  Sense sense = Sense::Maximize;
  bool all_real = false;
  bool trivially_infeasible = false;
  std::string infeasibility_note;

  /// Rebuilds the Hermitian matrix of variable `var` from parameter values.
  LabeledMatrix assemble_var(const ConicProgram& prog, int var, const Eigen::VectorXd& y) const {
    const auto& v = prog.var(var);
    const auto n = static_cast<Eigen::Index>(v.dim());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    auto [begin, end] = var_param_range.at(static_cast<std::size_t>(var));
    for (int p = begin; p < end; ++p) {
      const ParamInfo& pi = params[static_cast<std::size_t>(p)];
      switch (pi.comp) {
        case ParamComp::Diag: m(pi.a, pi.a) += y[p]; break;
        case ParamComp::Re:
          m(pi.a, pi.b) += y[p];
          m(pi.b, pi.a) += y[p];
          break;
        case ParamComp::Im:
          m(pi.a, pi.b) += Complex(0.0, y[p]);
          m(pi.b, pi.a) += Complex(0.0, -y[p]);
          break;
      }
    }
    return LabeledMatrix(v.system, std::move(m), true);
  }
};

namespace detail {

struct SparseEntries {
  RegisterSystem sys;
  std::vector<CTriplet> t;
};

inline void coalesce(std::vector<CTriplet>& t) {
  std::sort(t.begin(), t.end(), [](const CTriplet& x, const CTriplet& y) {
    return x.r != y.r ? x.r < y.r : x.c < y.c;
  });
  std::vector<CTriplet> out;
  for (const auto& e : t) {
    if (!out.empty() && out.back().r == e.r && out.back().c == e.c)
      out.back().v += e.v;
    else
      out.push_back(e);
  }
  std::erase_if(out, [](const CTriplet& e) { return e.v == Complex(0.0, 0.0); });
  t = std::move(out);
}

inline SparseEntries apply_sparse(const SparseEntries& in, const TransformOp& op) {
  SparseEntries out;
  out.sys = transformed_system(in.sys, op);
  std::vector<std::size_t> dr, dc;
  if (std::holds_alternative<OpPartialTranspose>(op)) {
    const auto& labels = std::get<OpPartialTranspose>(op).labels;
    std::vector<std::size_t> pos;
    for (const auto& l : labels) pos.push_back(in.sys.index_of(l));
    for (const auto& e : in.t) {
      in.sys.decode(static_cast<std::size_t>(e.r), dr);
      in.sys.decode(static_cast<std::size_t>(e.c), dc);
      for (auto p : pos) std::swap(dr[p], dc[p]);
      out.t.push_back({static_cast<int>(in.sys.encode(dr)), static_cast<int>(in.sys.encode(dc)), e.v});
    }
  } else if (std::holds_alternative<OpPartialTrace>(op)) {
    const auto& labels = std::get<OpPartialTrace>(op).labels;
    std::vector<std::size_t> pos;
    for (const auto& l : labels) pos.push_back(in.sys.index_of(l));
    std::vector<bool> traced(in.sys.size(), false);
    for (auto p : pos) traced[p] = true;
    std::vector<std::size_t> kr, kc;
    for (const auto& e : in.t) {
      in.sys.decode(static_cast<std::size_t>(e.r), dr);
      in.sys.decode(static_cast<std::size_t>(e.c), dc);
      bool diag = true;
      for (auto p : pos)
        if (dr[p] != dc[p]) { diag = false; break; }
      if (!diag) continue;
      kr.clear();
      kc.clear();
      for (std::size_t i = 0; i < in.sys.size(); ++i) {
        if (traced[i]) continue;
        kr.push_back(dr[i]);
        kc.push_back(dc[i]);
      }
      out.t.push_back({static_cast<int>(out.sys.encode(kr)), static_cast<int>(out.sys.encode(kc)), e.v});
    }
  } else if (std::holds_alternative<OpTensorConstant>(op)) {
    const auto& tc = std::get<OpTensorConstant>(op);
    const auto nk = static_cast<Eigen::Index>(tc.constant.dim());
    std::vector<CTriplet> kt;
    for (Eigen::Index r = 0; r < nk; ++r)
      for (Eigen::Index c = 0; c < nk; ++c)
        if (tc.constant.mat()(r, c) != Complex(0.0, 0.0))
          kt.push_back({static_cast<int>(r), static_cast<int>(c), tc.constant.mat()(r, c)});
    for (const auto& e : in.t)
      for (const auto& k : kt) {
        if (tc.var_first)
          out.t.push_back({static_cast<int>(e.r * nk + k.r), static_cast<int>(e.c * nk + k.c),
                           e.v * k.v});
        else {
          const auto nx = static_cast<Eigen::Index>(in.sys.total_dim());
          out.t.push_back({static_cast<int>(k.r * nx + e.r), static_cast<int>(k.c * nx + e.c),
                           e.v * k.v});
        }
      }
  } else if (std::holds_alternative<OpPermute>(op)) {
    const auto& order = std::get<OpPermute>(op).order;
    std::vector<std::size_t> perm_pos(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) perm_pos[i] = in.sys.index_of(order[i]);
    std::vector<std::size_t> dp(order.size());
    for (const auto& e : in.t) {
      in.sys.decode(static_cast<std::size_t>(e.r), dr);
      for (std::size_t i = 0; i < perm_pos.size(); ++i) dp[i] = dr[perm_pos[i]];
      const auto r2 = out.sys.encode(dp);
      in.sys.decode(static_cast<std::size_t>(e.c), dc);
      for (std::size_t i = 0; i < perm_pos.size(); ++i) dp[i] = dc[perm_pos[i]];
      out.t.push_back({static_cast<int>(r2), static_cast<int>(out.sys.encode(dp)), e.v});
    }
  } else {  // OpTraceAgainst
    const auto& w = std::get<OpTraceAgainst>(op).weight;
    if (!(w.system() == in.sys))
      throw std::invalid_argument("trace_against weight lives on a different register system");
    Complex acc(0.0, 0.0);
    for (const auto& e : in.t) acc += e.v * w.mat()(e.c, e.r);
    if (acc != Complex(0.0, 0.0)) out.t.push_back({0, 0, acc});
  }
  coalesce(out.t);
  return out;
}

inline SparseEntries apply_sparse_chain(SparseEntries e, const TransformChain& chain) {
  for (const auto& op : chain) e = apply_sparse(e, op);
  return e;
}

inline bool matrix_is_real(const Eigen::MatrixXcd& m) {
  return m.imag().cwiseAbs().maxCoeff() == 0.0;
}

inline bool expr_is_real(const LinearExpr& e) {
  if (!matrix_is_real(e.constant().mat())) return false;
  for (const auto& t : e.terms()) {
    if (t.coeff.imag() != 0.0) return false;
    for (const auto& op : t.ops) {
      if (std::holds_alternative<OpTensorConstant>(op) &&
          !matrix_is_real(std::get<OpTensorConstant>(op).constant.mat()))
        return false;
      if (std::holds_alternative<OpTraceAgainst>(op) &&
          !matrix_is_real(std::get<OpTraceAgainst>(op).weight.mat()))
        return false;
    }
  }
  return true;
}

/// Basis matrices of the Hermitian parameterization.
inline std::vector<CTriplet> param_basis(const ParamInfo& p) {
  switch (p.comp) {
    case ParamComp::Diag: return {{p.a, p.a, Complex(1.0, 0.0)}};
    case ParamComp::Re: return {{p.a, p.b, Complex(1.0, 0.0)}, {p.b, p.a, Complex(1.0, 0.0)}};
    default: return {{p.a, p.b, Complex(0.0, 1.0)}, {p.b, p.a, Complex(0.0, -1.0)}};
  }
}

}  // namespace detail

/// Flattens a conic program: Hermitian variables become scalar parameters
/// (diagonal, real and imaginary off-diagonal components), PSD constraints
/// become coefficient blocks, Zero constraints become equality rows. When all
/// data is real (and `exploit_realness`), imaginary parameters are dropped:
/// a real-data program always admits a real-symmetric optimal solution.
inline CompiledProgram compile(const ConicProgram& prog, bool exploit_realness = true) {
  CompiledProgram cp;
  cp.sense = prog.sense();

  bool real = detail::expr_is_real(prog.objective());
  for (const auto& c : prog.constraints()) real = real && detail::expr_is_real(c.expr);
  cp.all_real = real && exploit_realness;

  // Parameter table.
  for (const auto& v : prog.vars()) {
    const int n = static_cast<int>(v.dim());
    const int begin = cp.num_params;
    for (int a = 0; a < n; ++a) cp.params.push_back({v.id, a, a, ParamComp::Diag});
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) cp.params.push_back({v.id, a, b, ParamComp::Re});
    if (!cp.all_real)
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) cp.params.push_back({v.id, a, b, ParamComp::Im});
    cp.num_params = static_cast<int>(cp.params.size());
    cp.var_param_range.push_back({begin, cp.num_params});
  }

  // Per-term sparse coefficients, accumulated per (constraint, parameter).
  struct Accum {
    std::map<int, std::vector<CTriplet>> by_param;
  };
  auto accumulate_expr = [&](const LinearExpr& expr) {
    Accum acc;
    for (const auto& t : expr.terms()) {
      auto [begin, end] = cp.var_param_range.at(static_cast<std::size_t>(t.var));
      const auto& vsys = prog.var(t.var).system;
      for (int p = begin; p < end; ++p) {
        detail::SparseEntries e{vsys, detail::param_basis(cp.params[static_cast<std::size_t>(p)])};
        e = detail::apply_sparse_chain(std::move(e), t.ops);
        if (e.t.empty()) continue;
        auto& dst = acc.by_param[p];
        for (auto trip : e.t) {
          trip.v *= t.coeff;
          dst.push_back(trip);
        }
      }
    }
    for (auto& [p, trips] : acc.by_param) detail::coalesce(trips);
    return acc;
  };

  std::vector<Eigen::RowVectorXd> eq_rows;
  std::vector<double> eq_rhs;

  for (const auto& c : prog.constraints()) {
    Accum acc = accumulate_expr(c.expr);
    if (c.kind == ConstraintKind::PSD) {
      CompiledBlock blk;
      blk.dim = c.expr.system().total_dim();
      blk.name = c.name;
      blk.constant = c.expr.constant().mat();
      for (auto& [p, trips] : acc.by_param) {
        if (trips.empty()) continue;
        blk.vars.push_back(p);
        blk.coeffs.push_back(std::move(trips));
      }
      if (blk.vars.empty()) {
        // Constant constraint: check it eagerly instead of carrying a block.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            (blk.constant + blk.constant.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-9) {
          cp.trivially_infeasible = true;
          cp.infeasibility_note = "constant PSD constraint '" + c.name + "' is violated";
        }
        continue;
      }
      cp.blocks.push_back(std::move(blk));
    } else {
      // Zero constraint -> real equality rows over the upper triangle
      // (real and imaginary components separately).
      const auto n = static_cast<int>(c.expr.system().total_dim());
      const auto& k = c.expr.constant().mat();
      auto cell = [n](int a, int b, int comp) { return (a * n + b) * 2 + comp; };
      std::map<int, Eigen::RowVectorXd> rows;
      for (const auto& [p, trips] : acc.by_param)
        for (const auto& e : trips) {
          if (e.r > e.c) continue;  // Hermitian expression: lower triangle is redundant
          for (int comp = 0; comp < (e.r == e.c ? 1 : 2); ++comp) {
            const double coeff = comp == 0 ? e.v.real() : e.v.imag();
            if (coeff == 0.0) continue;
            auto [it, fresh] = rows.try_emplace(cell(e.r, e.c, comp),
                                                Eigen::RowVectorXd::Zero(cp.num_params));
            it->second[p] += coeff;
          }
        }
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
          for (int comp = 0; comp < (a == b ? 1 : 2); ++comp) {
            const double rhs = comp == 0 ? -k(a, b).real() : -k(a, b).imag();
            auto it = rows.find(cell(a, b, comp));
            if (it == rows.end()) {
              if (std::abs(rhs) > 1e-9) {
                cp.trivially_infeasible = true;
                cp.infeasibility_note = "inconsistent equality constraint '" + c.name + "'";
              }
              continue;
            }
            eq_rows.push_back(std::move(it->second));
            eq_rhs.push_back(rhs);
          }
    }
  }

  cp.eq_A.resize(static_cast<Eigen::Index>(eq_rows.size()), cp.num_params);
  cp.eq_rhs.resize(static_cast<Eigen::Index>(eq_rhs.size()));
  for (std::size_t i = 0; i < eq_rows.size(); ++i) {
    cp.eq_A.row(static_cast<Eigen::Index>(i)) = eq_rows[i];
    cp.eq_rhs[static_cast<Eigen::Index>(i)] = eq_rhs[i];
  }

  // Objective vector.
  Accum obj = accumulate_expr(prog.objective());
  cp.obj = Eigen::VectorXd::Zero(cp.num_params);
  for (const auto& [p, trips] : obj.by_param)
    for (const auto& e : trips) {
      if (e.r != 0 || e.c != 0) throw std::invalid_argument("objective is not scalar");
      if (std::abs(e.v.imag()) > 1e-12 * (1.0 + std::abs(e.v.real())))
        throw std::invalid_argument("objective is not real-valued on Hermitian assignments");
      cp.obj[p] += e.v.real();
    }
  cp.obj_const = prog.objective().constant().mat()(0, 0).real();
  return cp;
}

}  // namespace pptdisc
