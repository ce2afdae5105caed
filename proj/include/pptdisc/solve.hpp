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

#include <functional>

#include "pptdisc/ipm.hpp"

namespace pptdisc {

/// Any interior-point backend mapping the real symmetric standard form to a
/// result may be plugged in here; solve_real_sdp is the pinned default.
using SdpBackend = std::function<IpmResult(const RealSdp&, const IpmOptions&)>;

inline SdpBackend& default_backend() {
  static SdpBackend backend = [](const RealSdp& sdp, const IpmOptions& opt) {
    return solve_real_sdp(sdp, opt);
  };
  return backend;
}

/// Evaluates all constraints at an assignment with dense tensor arithmetic:
/// returns the largest violation (negative eigenvalue of a PSD expression or
/// absolute entry of a Zero expression).
inline double check_residuals(const ConicProgram& prog,
                              const std::vector<LabeledMatrix>& assignment) {
  double worst = 0.0;
  for (const auto& c : prog.constraints()) {
    LabeledMatrix val = c.expr.evaluate(assignment);
    if (c.kind == ConstraintKind::PSD) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((val.mat() + val.mat().adjoint()) / 2.0,
                                                         Eigen::EigenvaluesOnly);
      worst = std::max(worst, std::max(0.0, -es.eigenvalues().minCoeff()));
    } else {
      worst = std::max(worst, val.max_abs());
    }
  }
  return worst;
}

/// Compiles, embeds and solves a conic program. Backend failures surface as
/// a non-Optimal status, never as a silent value.
inline Solution solve(const ConicProgram& prog, const SolveOptions& opts = {}) {
  Solution sol;
  CompiledProgram cp = compile(prog, opts.exploit_realness);
  if (cp.trivially_infeasible) {
    sol.status = SolveStatus::Infeasible;
    sol.message = cp.infeasibility_note;
    return sol;
  }
  if (cp.num_params == 0) {
    // All constraints were constant and consistent.
    sol.status = SolveStatus::Optimal;
    sol.value = cp.obj_const;
    return sol;
  }
  {
    // Every parameter must be pinned by some PSD block, otherwise the Schur
    // complement is structurally singular.
    std::vector<bool> seen(static_cast<std::size_t>(cp.num_params), false);
    for (const auto& blk : cp.blocks)
      for (int v : blk.vars) seen[static_cast<std::size_t>(v)] = true;
    for (std::size_t pidx = 0; pidx < seen.size(); ++pidx)
      if (!seen[pidx])
        throw std::invalid_argument(
            "variable '" + prog.var(cp.params[pidx].var).name +
            "' does not enter any PSD constraint; add one (it may be redundant)");
  }

  RealSdp sdp = cp.all_real ? realize(cp) : real_embed(cp);
  IpmOptions iopt;
  iopt.feas_tol = opts.feas_tol;
  iopt.gap_tol = opts.gap_tol;
  iopt.max_iter = opts.max_iter;
  iopt.verbose = opts.verbose;
  IpmResult r = default_backend()(sdp, iopt);

  sol.status = r.status;
  sol.iterations = r.iterations;
  sol.message = r.message;
  sol.reported_gap = r.rel_gap;
  sol.reported_infeas = std::max(r.primal_infeas, r.dual_infeas);
  if (r.status == SolveStatus::Infeasible || r.y.size() == 0) return sol;

  sol.value = cp.obj.dot(r.y) + cp.obj_const;
  sol.assignments.reserve(prog.vars().size());
  for (const auto& v : prog.vars()) sol.assignments.push_back(cp.assemble_var(prog, v.id, r.y));
  if (opts.check_residuals) sol.max_primal_residual = check_residuals(prog, sol.assignments);
  return sol;
}

/// Throws unless the solution converged; used where a silent wrong value
/// would poison downstream results.
inline const Solution& require_optimal(const Solution& sol, const std::string& what) {
  if (sol.status != SolveStatus::Optimal)
    throw std::runtime_error("solver failed on " + what + ": " + to_string(sol.status) +
                             (sol.message.empty() ? "" : " (" + sol.message + ")"));
  return sol;
}

}  // namespace pptdisc
