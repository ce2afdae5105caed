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

#include "pptdisc/channel.hpp"
#include "pptdisc/solve.hpp"

namespace pptdisc {

/// Binary (or, for the global benchmark, m-ary) discrimination task with a
/// tester entanglement dimension k. k = 1 means no shared entanglement.
struct DiscriminationInstance {
  ChannelEnsemble ensemble;
  double lambda = 0.5;  // prior of the first channel (binary case)
  int k = 1;

  static DiscriminationInstance binary(const ChoiOperator& n, const ChoiOperator& m,
                                       double lambda, int k) {
    if (!(lambda > 0.0 && lambda < 1.0))
      throw std::invalid_argument("prior lambda must lie strictly inside (0, 1)");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    return {ChannelEnsemble::binary(n, m, lambda), lambda, k};
  }

  const ChoiOperator& first() const { return ensemble.items.at(0).second; }
  const ChoiOperator& second() const { return ensemble.items.at(1).second; }
};

/// Optimal tester data for a PPT program in the reduced (W, Q, rho, sigma)
/// form.
struct TesterSolution {
  double value = 0.0;
  LabeledMatrix W, Q;        // on (A0, B0, A1, B1)
  LabeledMatrix rho, sigma;  // on (A0, B0)
  std::optional<double> dual_value;
  double max_residual = 0.0;
  int iterations = 0;
};

struct GlobalSolution {
  double value = 0.0;
  std::vector<LabeledMatrix> testers;  // one element per ensemble member
  LabeledMatrix rho;
  double max_residual = 0.0;
};

namespace detail {

inline LabeledMatrix weighted_difference(const ChoiOperator& n, const ChoiOperator& m,
                                         double lambda) {
  if (!(n.matrix.system() == m.matrix.system()))
    throw std::invalid_argument("channels live on different register systems");
  return lambda * n.matrix - (1.0 - lambda) * m.matrix;
}

inline std::set<std::string> bob_labels() { return {kB0, kB1}; }
inline std::set<std::string> out_labels() { return {kA1, kB1}; }
inline std::set<std::string> in_labels() { return {kA0, kB0}; }

inline void add_trace_one(ConicProgram& prog, const HermitianVar& v) {
  const auto labels = v.system.labels();
  LinearExpr unit;
  unit.add_term(1.0, v, {ptrace(std::set<std::string>(labels.begin(), labels.end()))});
  unit.add_constant(-1.0 * LabeledMatrix::identity(RegisterSystem{}));
  prog.add_zero(unit, "tr " + v.name + " = 1");
}

inline void add_psd_var(ConicProgram& prog, const HermitianVar& v) {
  LinearExpr e(v.system);
  e.add_term(1.0, v);
  prog.add_psd(e, v.name + " >= 0");
}

}  // namespace detail

/// Globally optimal average success probability over unrestricted testers
/// (Born-rule tester form; for a binary ensemble this is the diamond-norm
/// benchmark). Returns the value and an optimal tester.
inline GlobalSolution psucc_global(const ChannelEnsemble& ensemble, const SolveOptions& opts = {}) {
  ensemble.validate();
  const ChoiOperator& front = ensemble.items.front().second;
  RegisterSystem full = front.matrix.system();
  RegisterSystem in_sys = front.input_system();
  RegisterSystem out_sys = front.output_system();

  ConicProgram prog;
  GlobalSolution out;

  if (ensemble.items.size() == 2) {
    // Binary reduction: a single effect W with 0 <= W <= rho x 1.
    const double lambda = ensemble.items[0].first;
    const auto& w = prog.add_var("W", full);
    const auto& rho = prog.add_var("rho", in_sys);
    detail::add_psd_var(prog, w);
    detail::add_psd_var(prog, rho);
    LinearExpr cap(full);
    cap.add_term(1.0, rho, {tensor_id(out_sys)});
    cap.add_term(-1.0, w);
    prog.add_psd(cap, "W <= rho x 1");
    detail::add_trace_one(prog, rho);

    LabeledMatrix delta = detail::weighted_difference(ensemble.items[0].second,
                                                      ensemble.items[1].second, lambda);
    LinearExpr obj;
    obj.add_constant((1.0 - lambda) * LabeledMatrix::identity(RegisterSystem{}));
    obj.add_term(1.0, w, {trace_against(delta)});
    prog.set_objective(Sense::Maximize, obj);

    Solution sol = require_optimal(solve(prog, opts), "global discrimination SDP");
    out.value = sol.value;
    out.rho = sol.of(rho);
    LabeledMatrix t0 = sol.of(w);
    LabeledMatrix t1 = permute_registers(kron(out.rho, LabeledMatrix::identity(out_sys)),
                                         full.labels()) -
                       t0;
    out.testers = {t0, t1};
    out.max_residual = sol.max_primal_residual;
    return out;
  }

  // General m-ary tester form: T_j >= 0, sum T_j = rho x 1.
  std::vector<const HermitianVar*> ts;
  for (std::size_t j = 0; j < ensemble.items.size(); ++j)
    ts.push_back(&prog.add_var("T" + std::to_string(j), full));
  const auto& rho = prog.add_var("rho", in_sys);
  for (const auto* t : ts) detail::add_psd_var(prog, *t);
  detail::add_psd_var(prog, rho);
  LinearExpr sum(full);
  for (const auto* t : ts) sum.add_term(1.0, *t);
  sum.add_term(-1.0, rho, {tensor_id(out_sys)});
  prog.add_zero(sum, "sum T = rho x 1");
  detail::add_trace_one(prog, rho);

  LinearExpr obj;
  for (std::size_t j = 0; j < ensemble.items.size(); ++j)
    obj.add_term(ensemble.items[j].first, *ts[j], {trace_against(ensemble.items[j].second.matrix)});
  prog.set_objective(Sense::Maximize, obj);

  Solution sol = require_optimal(solve(prog, opts), "global discrimination SDP");
  out.value = sol.value;
  out.rho = sol.of(rho);
  for (const auto* t : ts) out.testers.push_back(sol.of(*t));
  out.max_residual = sol.max_primal_residual;
  return out;
}

/// Dual of the global benchmark, generalized to priors: minimize
/// (1-lambda) + alpha with C >= 0, C >= lambda J_N - (1-lambda) J_M and
/// tr_out C <= alpha 1.
inline double diamond_dual(const ChoiOperator& n, const ChoiOperator& m, double lambda,
                           const SolveOptions& opts = {}) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("prior lambda must lie strictly inside (0, 1)");
  RegisterSystem full = n.matrix.system();
  RegisterSystem in_sys = n.input_system();

  ConicProgram prog;
  const auto& c = prog.add_var("C", full);
  const auto& alpha = prog.add_scalar_var("alpha");
  detail::add_psd_var(prog, c);

  LinearExpr dominate(full);
  dominate.add_term(1.0, c);
  dominate.add_constant(-1.0 * detail::weighted_difference(n, m, lambda));
  prog.add_psd(dominate, "C >= lambda J_N - (1-lambda) J_M");

  LinearExpr cap(in_sys);
  cap.add_term(1.0, alpha, {tensor_id(in_sys)});
  cap.add_term(-1.0, c, {ptrace(detail::out_labels())});
  prog.add_psd(cap, "tr_out C <= alpha 1");

  LinearExpr obj;
  obj.add_constant((1.0 - lambda) * LabeledMatrix::identity(RegisterSystem{}));
  obj.add_term(1.0, alpha);
  prog.set_objective(Sense::Minimize, obj);

  return require_optimal(solve(prog, opts), "diamond dual SDP").value;
}

/// Success probability over k-injectable PPT testers, in the reduced
/// (W, Q, rho, sigma) form: maximize
///   1 - lambda + tr[W (lambda J_N - (1-lambda) J_M)]
/// subject to 0 <= W <= rho x 1, 0 <= Q <= sigma x 1, the partial-transpose
/// sandwich (1-k) Q^T <= W^T <= (1+k) Q^T and its complement on
/// rho^T x 1 - W^T.
inline TesterSolution psucc_ppt_k(const DiscriminationInstance& inst,
                                  const SolveOptions& opts = {}) {
  if (inst.k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(inst.lambda > 0.0 && inst.lambda < 1.0))
    throw std::invalid_argument("prior lambda must lie strictly inside (0, 1)");
  if (inst.ensemble.items.size() != 2)
    throw std::invalid_argument("the PPT tester program is binary");
  const ChoiOperator& jn = inst.first();
  const ChoiOperator& jm = inst.second();
  const double lambda = inst.lambda;
  const double k = static_cast<double>(inst.k);

  RegisterSystem full = jn.matrix.system();
  RegisterSystem in_sys = jn.input_system();
  RegisterSystem out_sys = jn.output_system();
  const auto tb = detail::bob_labels();

  ConicProgram prog;
  const auto& w = prog.add_var("W", full);
  const auto& q = prog.add_var("Q", full);
  const auto& rho = prog.add_var("rho", in_sys);
  const auto& sigma = prog.add_var("sigma", in_sys);

  detail::add_psd_var(prog, rho);
  detail::add_psd_var(prog, sigma);
  detail::add_trace_one(prog, rho);
  detail::add_trace_one(prog, sigma);
  detail::add_psd_var(prog, w);
  detail::add_psd_var(prog, q);

  LinearExpr cap_w(full);
  cap_w.add_term(1.0, rho, {tensor_id(out_sys)});
  cap_w.add_term(-1.0, w);
  prog.add_psd(cap_w, "W <= rho x 1");

  LinearExpr cap_q(full);
  cap_q.add_term(1.0, sigma, {tensor_id(out_sys)});
  cap_q.add_term(-1.0, q);
  prog.add_psd(cap_q, "Q <= sigma x 1");

  // (1-k) Q^T <= W^T <= (1+k) Q^T on Bob's registers.
  LinearExpr lower(full);
  lower.add_term(1.0, w, {pt(tb)});
  lower.add_term(-(1.0 - k), q, {pt(tb)});
  prog.add_psd(lower, "W^T >= (1-k) Q^T");

  LinearExpr upper(full);
  upper.add_term(1.0 + k, q, {pt(tb)});
  upper.add_term(-1.0, w, {pt(tb)});
  prog.add_psd(upper, "W^T <= (1+k) Q^T");

  // Complement: (1-k)(sigma^T x 1 - Q^T) <= rho^T x 1 - W^T
  //             <= (1+k)(sigma^T x 1 - Q^T).
  LinearExpr clower(full);
  clower.add_term(1.0, rho, {pt({kB0}), tensor_id(out_sys)});
  clower.add_term(-1.0, w, {pt(tb)});
  clower.add_term(-(1.0 - k), sigma, {pt({kB0}), tensor_id(out_sys)});
  clower.add_term(1.0 - k, q, {pt(tb)});
  prog.add_psd(clower, "complement lower");

  LinearExpr cupper(full);
  cupper.add_term(1.0 + k, sigma, {pt({kB0}), tensor_id(out_sys)});
  cupper.add_term(-(1.0 + k), q, {pt(tb)});
  cupper.add_term(-1.0, rho, {pt({kB0}), tensor_id(out_sys)});
  cupper.add_term(1.0, w, {pt(tb)});
  prog.add_psd(cupper, "complement upper");

  LinearExpr obj;
  obj.add_constant((1.0 - lambda) * LabeledMatrix::identity(RegisterSystem{}));
  obj.add_term(1.0, w, {trace_against(detail::weighted_difference(jn, jm, lambda))});
  prog.set_objective(Sense::Maximize, obj);

  Solution sol = require_optimal(solve(prog, opts), "k-injectable PPT tester SDP");
  TesterSolution out;
  out.value = sol.value;
  out.W = sol.of(w);
  out.Q = sol.of(q);
  out.rho = sol.of(rho);
  out.sigma = sol.of(sigma);
  out.max_residual = sol.max_primal_residual;
  out.iterations = sol.iterations;
  return out;
}

/// Dual of the k-injectable PPT program: minimize 1 - lambda + alpha + beta
/// over C, D, E, G, H, K >= 0 with the four operator constraints.
inline double psucc_ppt_k_dual(const DiscriminationInstance& inst, const SolveOptions& opts = {}) {
  if (inst.k < 1) throw std::invalid_argument("k must be >= 1");
  if (inst.ensemble.items.size() != 2)
    throw std::invalid_argument("the PPT tester program is binary");
  const ChoiOperator& jn = inst.first();
  const ChoiOperator& jm = inst.second();
  const double lambda = inst.lambda;
  const double k = static_cast<double>(inst.k);

  RegisterSystem full = jn.matrix.system();
  RegisterSystem in_sys = jn.input_system();
  const auto tb = detail::bob_labels();
  const auto out_l = detail::out_labels();

  ConicProgram prog;
  const auto& c = prog.add_var("C", full);
  const auto& d = prog.add_var("D", full);
  const auto& e = prog.add_var("E", full);
  const auto& g = prog.add_var("G", full);
  const auto& h = prog.add_var("H", full);
  const auto& kk = prog.add_var("K", full);
  const auto& alpha = prog.add_scalar_var("alpha");
  const auto& beta = prog.add_scalar_var("beta");
  for (const auto* v : {&c, &d, &e, &g, &h, &kk}) detail::add_psd_var(prog, *v);

  // H^T - E^T + G^T - K^T + C >= lambda J_N - (1-lambda) J_M.
  LinearExpr first(full);
  first.add_term(1.0, h, {pt(tb)});
  first.add_term(-1.0, e, {pt(tb)});
  first.add_term(1.0, g, {pt(tb)});
  first.add_term(-1.0, kk, {pt(tb)});
  first.add_term(1.0, c);
  first.add_constant(-1.0 * detail::weighted_difference(jn, jm, lambda));
  prog.add_psd(first, "difference dominated");

  // D >= (1+k)(G^T - K^T) + (1-k)(H^T - E^T).
  LinearExpr second(full);
  second.add_term(1.0, d);
  second.add_term(-(1.0 + k), g, {pt(tb)});
  second.add_term(1.0 + k, kk, {pt(tb)});
  second.add_term(-(1.0 - k), h, {pt(tb)});
  second.add_term(1.0 - k, e, {pt(tb)});
  prog.add_psd(second, "D dominates");

  // tr_out(C + H^{T_B0} - K^{T_B0}) <= alpha 1.
  LinearExpr third(in_sys);
  third.add_term(1.0, alpha, {tensor_id(in_sys)});
  third.add_term(-1.0, c, {ptrace(out_l)});
  third.add_term(-1.0, h, {pt({kB0}), ptrace(out_l)});
  third.add_term(1.0, kk, {pt({kB0}), ptrace(out_l)});
  prog.add_psd(third, "alpha cap");

  // tr_out(D + (k-1) H^{T_B0} + (k+1) K^{T_B0}) <= beta 1.
  LinearExpr fourth(in_sys);
  fourth.add_term(1.0, beta, {tensor_id(in_sys)});
  fourth.add_term(-1.0, d, {ptrace(out_l)});
  fourth.add_term(-(k - 1.0), h, {pt({kB0}), ptrace(out_l)});
  fourth.add_term(-(k + 1.0), kk, {pt({kB0}), ptrace(out_l)});
  prog.add_psd(fourth, "beta cap");

  LinearExpr obj;
  obj.add_constant((1.0 - lambda) * LabeledMatrix::identity(RegisterSystem{}));
  obj.add_term(1.0, alpha);
  obj.add_term(1.0, beta);
  prog.set_objective(Sense::Minimize, obj);

  return require_optimal(solve(prog, opts), "k-injectable PPT dual SDP").value;
}

/// Four-operator form of the k-injectable PPT program (variables W0, W1,
/// Q0, Q1 with explicit marginal constraints); equal to psucc_ppt_k by
/// variable elimination. Kept as a cross-check.
inline double psucc_ppt_k_fourop(const DiscriminationInstance& inst,
                                 const SolveOptions& opts = {}) {
  const ChoiOperator& jn = inst.first();
  const ChoiOperator& jm = inst.second();
  const double lambda = inst.lambda;
  const double k = static_cast<double>(inst.k);

  RegisterSystem full = jn.matrix.system();
  RegisterSystem out_sys = jn.output_system();
  const auto tb = detail::bob_labels();
  const auto out_l = detail::out_labels();
  const double d_out = static_cast<double>(jn.d_out());

  ConicProgram prog;
  const auto& w0 = prog.add_var("W0", full);
  const auto& w1 = prog.add_var("W1", full);
  const auto& q0 = prog.add_var("Q0", full);
  const auto& q1 = prog.add_var("Q1", full);
  for (const auto* v : {&w0, &w1, &q0, &q1}) detail::add_psd_var(prog, *v);

  // tr(W0 + W1) = tr(Q0 + Q1) = d_out.
  for (auto [a, b] : {std::pair{&w0, &w1}, std::pair{&q0, &q1}}) {
    LinearExpr tr_sum;
    tr_sum.add_term(1.0, *a, {ptrace({kA0, kB0, kA1, kB1})});
    tr_sum.add_term(1.0, *b, {ptrace({kA0, kB0, kA1, kB1})});
    tr_sum.add_constant(-d_out * LabeledMatrix::identity(RegisterSystem{}));
    prog.add_zero(tr_sum, "trace normalization");
  }

  // W0 + W1 = tr_out(W0 + W1) x pi_out; likewise for Q.
  LabeledMatrix pi_out = (1.0 / d_out) * LabeledMatrix::identity(out_sys);
  for (auto [a, b] : {std::pair{&w0, &w1}, std::pair{&q0, &q1}}) {
    LinearExpr marg(full);
    marg.add_term(1.0, *a);
    marg.add_term(1.0, *b);
    marg.add_term(-1.0, *a, {ptrace(out_l), tensor_const(pi_out)});
    marg.add_term(-1.0, *b, {ptrace(out_l), tensor_const(pi_out)});
    prog.add_zero(marg, "no-signalling marginal");
  }

  // Sandwich per branch.
  for (auto [wv, qv] : {std::pair{&w0, &q0}, std::pair{&w1, &q1}}) {
    LinearExpr lower(full);
    lower.add_term(1.0, *wv, {pt(tb)});
    lower.add_term(-(1.0 - k), *qv, {pt(tb)});
    prog.add_psd(lower);
    LinearExpr upper(full);
    upper.add_term(1.0 + k, *qv, {pt(tb)});
    upper.add_term(-1.0, *wv, {pt(tb)});
    prog.add_psd(upper);
  }

  LinearExpr obj;
  obj.add_term(lambda, w0, {trace_against(jn.matrix)});
  obj.add_term(1.0 - lambda, w1, {trace_against(jm.matrix)});
  prog.set_objective(Sense::Maximize, obj);

  return require_optimal(solve(prog, opts), "four-operator PPT tester SDP").value;
}

/// State-discrimination specialization (replacer channels): binary POVM
/// pair (W0, W1) with PPT witnesses (Q0, Q1) on the output registers.
inline double state_discrimination_ppt_k(const LabeledMatrix& rho_state,
                                         const LabeledMatrix& sigma_state, double lambda, int k,
                                         const SolveOptions& opts = {}) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  RegisterSystem sys = rho_state.system();
  if (!(sys == sigma_state.system()))
    throw std::invalid_argument("states live on different register systems");
  const std::set<std::string> tb{kB1};
  const double kd = static_cast<double>(k);

  ConicProgram prog;
  const auto& w0 = prog.add_var("W0", sys);
  const auto& w1 = prog.add_var("W1", sys);
  const auto& q0 = prog.add_var("Q0", sys);
  const auto& q1 = prog.add_var("Q1", sys);
  for (const auto* v : {&w0, &w1, &q0, &q1}) detail::add_psd_var(prog, *v);

  for (auto [a, b] : {std::pair{&w0, &w1}, std::pair{&q0, &q1}}) {
    LinearExpr sum(sys);
    sum.add_term(1.0, *a);
    sum.add_term(1.0, *b);
    sum.add_constant(-1.0 * LabeledMatrix::identity(sys));
    prog.add_zero(sum, "completeness");
  }
  for (auto [wv, qv] : {std::pair{&w0, &q0}, std::pair{&w1, &q1}}) {
    LinearExpr lower(sys);
    lower.add_term(1.0, *wv, {pt(tb)});
    lower.add_term(-(1.0 - kd), *qv, {pt(tb)});
    prog.add_psd(lower);
    LinearExpr upper(sys);
    upper.add_term(1.0 + kd, *qv, {pt(tb)});
    upper.add_term(-1.0, *wv, {pt(tb)});
    prog.add_psd(upper);
  }

  LinearExpr obj;
  obj.add_term(lambda, w0, {trace_against(rho_state)});
  obj.add_term(1.0 - lambda, w1, {trace_against(sigma_state)});
  prog.set_objective(Sense::Maximize, obj);

  return require_optimal(solve(prog, opts), "state discrimination SDP").value;
}

/// Affine, SDP-representable family of Choi operators
/// { base + sum_i theta_i dir_i : theta in domain }.
struct ParamChannelSet {
  ChoiOperator base;
  std::vector<LabeledMatrix> directions;
  enum class Domain { Box, Simplex } domain = Domain::Box;
  std::vector<std::pair<double, double>> box;  // per-coordinate [lo, hi]

  static ParamChannelSet singleton(const ChoiOperator& choi) { return {choi, {}, Domain::Box, {}}; }

  void validate() const {
    if (domain == Domain::Box && box.size() != directions.size())
      throw std::invalid_argument("box bounds must match the number of directions");
    for (const auto& d : directions)
      if (!(d.system() == base.matrix.system()))
        throw std::invalid_argument("directions must live on the base register system");
  }
};

/// Worst-case composite discrimination: the dual program with the member
/// Choi operators as additional variables constrained to their affine sets.
inline double composite_psucc(const ParamChannelSet& set0, const ParamChannelSet& set1,
                              double lambda, int k, const SolveOptions& opts = {}) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("prior lambda must lie strictly inside (0, 1)");
  set0.validate();
  set1.validate();
  const RegisterSystem full = set0.base.matrix.system();
  if (!(full == set1.base.matrix.system()))
    throw std::invalid_argument("sets live on different register systems");
  RegisterSystem in_sys = set0.base.input_system();
  const auto tb = detail::bob_labels();
  const auto out_l = detail::out_labels();
  const double kd = static_cast<double>(k);

  ConicProgram prog;
  const auto& c = prog.add_var("C", full);
  const auto& d = prog.add_var("D", full);
  const auto& e = prog.add_var("E", full);
  const auto& g = prog.add_var("G", full);
  const auto& h = prog.add_var("H", full);
  const auto& kkv = prog.add_var("K", full);
  const auto& alpha = prog.add_scalar_var("alpha");
  const auto& beta = prog.add_scalar_var("beta");
  for (const auto* v : {&c, &d, &e, &g, &h, &kkv}) detail::add_psd_var(prog, *v);

  // Membership variables theta for each set.
  auto add_thetas = [&](const ParamChannelSet& set, const std::string& tag) {
    std::vector<const HermitianVar*> thetas;
    for (std::size_t i = 0; i < set.directions.size(); ++i)
      thetas.push_back(&prog.add_scalar_var("theta_" + tag + std::to_string(i)));
    if (set.domain == ParamChannelSet::Domain::Box) {
      for (std::size_t i = 0; i < thetas.size(); ++i) {
        LinearExpr lo;
        lo.add_term(1.0, *thetas[i]);
        lo.add_constant(-set.box[i].first * LabeledMatrix::identity(RegisterSystem{}));
        prog.add_psd(lo, "theta lower bound");
        LinearExpr hi;
        hi.add_term(-1.0, *thetas[i]);
        hi.add_constant(set.box[i].second * LabeledMatrix::identity(RegisterSystem{}));
        prog.add_psd(hi, "theta upper bound");
      }
    } else {
      LinearExpr sum;
      for (const auto* t : thetas) {
        LinearExpr nonneg;
        nonneg.add_term(1.0, *t);
        prog.add_psd(nonneg, "theta >= 0");
        sum.add_term(1.0, *t);
      }
      sum.add_constant(-1.0 * LabeledMatrix::identity(RegisterSystem{}));
      prog.add_zero(sum, "simplex normalization");
    }
    return thetas;
  };
  auto thetas0 = add_thetas(set0, "N");
  auto thetas1 = add_thetas(set1, "M");

  // H^T - E^T + G^T - K^T + C >= lambda J_N(theta0) - (1-lambda) J_M(theta1).
  LinearExpr first(full);
  first.add_term(1.0, h, {pt(tb)});
  first.add_term(-1.0, e, {pt(tb)});
  first.add_term(1.0, g, {pt(tb)});
  first.add_term(-1.0, kkv, {pt(tb)});
  first.add_term(1.0, c);
  first.add_constant(-lambda * set0.base.matrix + (1.0 - lambda) * set1.base.matrix);
  for (std::size_t i = 0; i < thetas0.size(); ++i)
    first.add_term(-lambda, *thetas0[i], {tensor_const(set0.directions[i])});
  for (std::size_t i = 0; i < thetas1.size(); ++i)
    first.add_term(1.0 - lambda, *thetas1[i], {tensor_const(set1.directions[i])});
  prog.add_psd(first, "difference dominated");

  LinearExpr second(full);
  second.add_term(1.0, d);
  second.add_term(-(1.0 + kd), g, {pt(tb)});
  second.add_term(1.0 + kd, kkv, {pt(tb)});
  second.add_term(-(1.0 - kd), h, {pt(tb)});
  second.add_term(1.0 - kd, e, {pt(tb)});
  prog.add_psd(second, "D dominates");

  LinearExpr third(in_sys);
  third.add_term(1.0, alpha, {tensor_id(in_sys)});
  third.add_term(-1.0, c, {ptrace(out_l)});
  third.add_term(-1.0, h, {pt({kB0}), ptrace(out_l)});
  third.add_term(1.0, kkv, {pt({kB0}), ptrace(out_l)});
  prog.add_psd(third, "alpha cap");

  LinearExpr fourth(in_sys);
  fourth.add_term(1.0, beta, {tensor_id(in_sys)});
  fourth.add_term(-1.0, d, {ptrace(out_l)});
  fourth.add_term(-(kd - 1.0), h, {pt({kB0}), ptrace(out_l)});
  fourth.add_term(-(kd + 1.0), kkv, {pt({kB0}), ptrace(out_l)});
  prog.add_psd(fourth, "beta cap");

  LinearExpr obj;
  obj.add_constant((1.0 - lambda) * LabeledMatrix::identity(RegisterSystem{}));
  obj.add_term(1.0, alpha);
  obj.add_term(1.0, beta);
  prog.set_objective(Sense::Minimize, obj);

  return require_optimal(solve(prog, opts), "composite discrimination SDP").value;
}

}  // namespace pptdisc
