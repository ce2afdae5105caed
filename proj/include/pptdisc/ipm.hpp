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

#include <cmath>
#include <cstdio>
#include <limits>

#include "pptdisc/embed.hpp"

namespace pptdisc {

struct IpmOptions {
  double feas_tol = 1e-8;
  double gap_tol = 1e-8;
  int max_iter = 200;
  bool verbose = false;
};

/// Result of the interior-point backend on the real standard form. `y` is
/// the variable vector of the (maximized) problem, `X` the per-block primal
/// multipliers certifying the optimum.
struct IpmResult {
  SolveStatus status = SolveStatus::NumericalTrouble;
  Eigen::VectorXd y;
  Eigen::VectorXd t;
  std::vector<Eigen::MatrixXd> X;
  double dual_obj = 0.0;    // b.y
  double primal_obj = 0.0;  // <C,X> + g.t
  double rel_gap = 0.0;
  double primal_infeas = 0.0;  // of the multiplier side
  double dual_infeas = 0.0;    // of the y side (block + equality residuals)
  int iterations = 0;
  std::string message;
};

namespace ipm_detail {

inline double frob(const std::vector<RTriplet>& t) {
  double s = 0.0;
  for (const auto& e : t) s += e.v * e.v;
  return std::sqrt(s);
}

/// Largest alpha with P + alpha D >= 0, via the generalized eigenvalue
/// lambda_min(L^{-1} D L^{-T}) for P = L L^T.
inline double max_step(const Eigen::MatrixXd& P, const Eigen::MatrixXd& D) {
  Eigen::LLT<Eigen::MatrixXd> llt(P);
  if (llt.info() != Eigen::Success) return 0.0;
  Eigen::MatrixXd T = llt.matrixL().solve(D);
  Eigen::MatrixXd W = llt.matrixL().solve(T.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es((W + W.transpose()) / 2.0,
                                                    Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin >= -1e-14) return 1e30;
  return -1.0 / lmin;
}

}  // namespace ipm_detail

/// Primal-dual predictor-corrector interior-point method (HKM direction)
/// for the real symmetric standard form
///   maximize b.y  s.t.  Z_j = C_j - sum_i y_i A_ij >= 0,  H y = g.
/// This is the default backend behind the pluggable solver contract.
inline IpmResult solve_real_sdp(const RealSdp& sdp, const IpmOptions& opt = {}) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;

  IpmResult res;
  const int m = sdp.num_vars;
  const std::size_t nblk = sdp.blocks.size();
  if (m == 0 || nblk == 0) {
    res.message = "empty program";
    return res;
  }

  // Independent equality rows only; verify dropped rows stay consistent.
  MatrixXd H;
  VectorXd g;
  if (sdp.H.rows() > 0) {
    Eigen::ColPivHouseholderQR<MatrixXd> qr(sdp.H.transpose());
    const auto rank = qr.rank();
    std::vector<Eigen::Index> keep(qr.colsPermutation().indices().data(),
                                   qr.colsPermutation().indices().data() + rank);
    std::sort(keep.begin(), keep.end());
    H.resize(static_cast<Eigen::Index>(keep.size()), m);
    g.resize(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
      H.row(static_cast<Eigen::Index>(i)) = sdp.H.row(keep[i]);
      g[static_cast<Eigen::Index>(i)] = sdp.g[keep[i]];
    }
    if (rank < sdp.H.rows()) {
      // Dropped rows must be consistent combinations of the kept ones.
      Eigen::ColPivHouseholderQR<MatrixXd> kept_qr(H.transpose());
      for (Eigen::Index r = 0; r < sdp.H.rows(); ++r) {
        if (std::binary_search(keep.begin(), keep.end(), r)) continue;
        VectorXd alpha = kept_qr.solve(sdp.H.row(r).transpose());
        if (std::abs(alpha.dot(g) - sdp.g[r]) > 1e-8 * (1.0 + g.cwiseAbs().maxCoeff())) {
          res.status = SolveStatus::Infeasible;
          res.message = "inconsistent equality constraints";
          return res;
        }
      }
    }
  } else {
    H.resize(0, m);
    g.resize(0);
  }
  const Eigen::Index p = H.rows();

  std::size_t ntot = 0;
  for (const auto& b : sdp.blocks) ntot += b.dim;

  // Scale-aware identity start.
  double maxA = 0.0, maxC = 0.0;
  for (const auto& b : sdp.blocks) {
    maxC = std::max(maxC, b.C.norm());
    for (const auto& t : b.A) maxA = std::max(maxA, ipm_detail::frob(t));
  }
  const double maxb = sdp.b.size() ? sdp.b.cwiseAbs().maxCoeff() : 0.0;

  std::vector<MatrixXd> X(nblk), Z(nblk), Zinv(nblk), Rd(nblk);
  for (std::size_t j = 0; j < nblk; ++j) {
    const auto n = static_cast<Eigen::Index>(sdp.blocks[j].dim);
    const double sn = std::sqrt(static_cast<double>(n));
    const double xi = std::max({10.0, sn, sn * maxb / (1.0 + maxA)});
    const double eta = std::max({10.0, sn, maxC, maxA});
    X[j] = xi * MatrixXd::Identity(n, n);
    Z[j] = eta * MatrixXd::Identity(n, n);
  }
  VectorXd y = VectorXd::Zero(m), t = VectorXd::Zero(p);

  auto inner = [](const std::vector<RTriplet>& trips, const MatrixXd& mat) {
    double s = 0.0;
    for (const auto& e : trips) s += e.v * mat(e.r, e.c);
    return s;
  };
  // (A(X))_i = sum_j <A_ij, X_j>
  auto apply_A = [&](const std::vector<MatrixXd>& mats) {
    VectorXd out = VectorXd::Zero(m);
    for (std::size_t j = 0; j < nblk; ++j) {
      const auto& blk = sdp.blocks[j];
      for (std::size_t i = 0; i < blk.vars.size(); ++i)
        out[blk.vars[i]] += inner(blk.A[i], mats[j]);
    }
    return out;
  };
  auto apply_At_block = [&](std::size_t j, const VectorXd& w, MatrixXd& out) {
    const auto& blk = sdp.blocks[j];
    out.setZero();
    for (std::size_t i = 0; i < blk.vars.size(); ++i) {
      const double wi = w[blk.vars[i]];
      if (wi == 0.0) continue;
      for (const auto& e : blk.A[i]) out(e.r, e.c) += wi * e.v;
    }
  };

  MatrixXd M(m, m);
  std::vector<MatrixXd> dXa(nblk), dZa(nblk), dX(nblk), dZ(nblk), G(nblk);
  double best_merit = std::numeric_limits<double>::infinity();
  IpmResult best;
  int stall = 0;

  auto record = [&](double pinf, double dinf, double relgap, double pobj, double dobj, int it) {
    const double merit = std::max({pinf, dinf, relgap});
    if (merit < best_merit) {
      best_merit = merit;
      best.y = y;
      best.t = t;
      best.X = X;
      best.primal_obj = pobj;
      best.dual_obj = dobj;
      best.rel_gap = relgap;
      best.primal_infeas = pinf;
      best.dual_infeas = dinf;
      best.iterations = it;
      stall = 0;
    } else {
      ++stall;
    }
  };

  for (int iter = 0; iter < opt.max_iter; ++iter) {
    // Residuals.
    VectorXd rp = sdp.b - apply_A(X);
    if (p > 0) rp -= H.transpose() * t;
    double dinf = 0.0;
    for (std::size_t j = 0; j < nblk; ++j) {
      const auto& blk = sdp.blocks[j];
      MatrixXd Aty(static_cast<Eigen::Index>(blk.dim), static_cast<Eigen::Index>(blk.dim));
      apply_At_block(j, y, Aty);
      Rd[j] = blk.C - Aty - Z[j];
      dinf = std::max(dinf, Rd[j].norm() / (1.0 + blk.C.norm()));
    }
    VectorXd rg = p > 0 ? VectorXd(g - H * y) : VectorXd();
    if (p > 0) dinf = std::max(dinf, rg.cwiseAbs().maxCoeff() / (1.0 + g.cwiseAbs().maxCoeff()));
    const double pinf = rp.norm() / (1.0 + sdp.b.norm());

    double gap = 0.0, pobj = p > 0 ? g.dot(t) : 0.0;
    for (std::size_t j = 0; j < nblk; ++j) {
      gap += (X[j].array() * Z[j].array()).sum();
      pobj += (sdp.blocks[j].C.array() * X[j].array()).sum();
    }
    const double dobj = sdp.b.dot(y);
    const double mu = gap / static_cast<double>(ntot);
    const double relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

    if (opt.verbose)
      std::fprintf(stderr, "it %3d  mu %.3e  pinf %.3e  dinf %.3e  gap %.3e  dobj %.12g\n", iter,
                   mu, pinf, dinf, relgap, dobj);

    record(pinf, dinf, relgap, pobj, dobj, iter);
    if (pinf <= opt.feas_tol && dinf <= opt.feas_tol && relgap <= opt.gap_tol) {
      res = best;
      res.status = SolveStatus::Optimal;
      res.iterations = iter;
      return res;
    }
    if (std::abs(dobj) > 1e13 && dinf <= opt.feas_tol) {
      res = best;
      res.status = SolveStatus::Unbounded;
      res.message = "objective diverges along feasible directions";
      return res;
    }
    if (stall > 12) {
      res = best;
      res.status = SolveStatus::NumericalTrouble;
      res.message = "no progress over 12 iterations";
      return res;
    }

    // Z inverses via Cholesky.
    bool chol_ok = true;
    for (std::size_t j = 0; j < nblk; ++j) {
      Eigen::LLT<MatrixXd> llt(Z[j]);
      if (llt.info() != Eigen::Success) { chol_ok = false; break; }
      const auto n = static_cast<Eigen::Index>(sdp.blocks[j].dim);
      Zinv[j] = llt.solve(MatrixXd::Identity(n, n));
      Zinv[j] = ((Zinv[j] + Zinv[j].transpose()) / 2.0).eval();
    }
    if (!chol_ok) {
      res = best;
      res.status = SolveStatus::NumericalTrouble;
      res.message = "slack block lost positive definiteness";
      return res;
    }

    // Schur complement M_ik = tr(A_i X A_k Z^{-1}), accumulated per block.
    auto form_schur = [&]() {
      M.setZero();
      for (std::size_t j = 0; j < nblk; ++j) {
        const auto& blk = sdp.blocks[j];
        const auto n = static_cast<Eigen::Index>(blk.dim);
        MatrixXd V(n, n);
        for (std::size_t i = 0; i < blk.vars.size(); ++i) {
          V.setZero();
          for (const auto& e : blk.A[i]) V.noalias() += e.v * (Zinv[j].col(e.r) * X[j].row(e.c));
          const int gi = blk.vars[i];
          for (std::size_t k = i; k < blk.vars.size(); ++k) {
            double s = 0.0;
            for (const auto& e : blk.A[k]) s += e.v * V(e.c, e.r);
            M(gi, blk.vars[k]) += s;
          }
        }
      }
      M = M.selfadjointView<Eigen::Upper>();
    };

    // Factor in place; rebuild with an escalating ridge on failure (the
    // failed factorization clobbers M).
    form_schur();
    double ridge = 1e-13 * (1.0 + M.diagonal().cwiseAbs().maxCoeff());
    Eigen::LLT<Eigen::Ref<MatrixXd>> llt(M);
    for (int attempts = 0; llt.info() != Eigen::Success && attempts < 8; ++attempts) {
      form_schur();
      M.diagonal().array() += ridge;
      new (&llt) Eigen::LLT<Eigen::Ref<MatrixXd>>(M);
      ridge *= 100.0;
    }
    if (llt.info() != Eigen::Success) {
      res = best;
      res.status = SolveStatus::NumericalTrouble;
      res.message = "Schur complement factorization failed";
      return res;
    }

    MatrixXd MU;
    Eigen::LDLT<MatrixXd> Gldlt;
    if (p > 0) {
      MU = llt.solve(H.transpose());
      Gldlt.compute(H * MU);
    }
    auto solve_kkt = [&](const VectorXd& rhat, const VectorXd& rgv, VectorXd& dy, VectorXd& dt) {
      VectorXd w = llt.solve(rhat);
      if (p > 0) {
        dt = Gldlt.solve(H * w - rgv);
        dy = w - MU * dt;
      } else {
        dy = w;
        dt.resize(0);
      }
    };

    auto build_direction = [&](double sigma_mu, bool with_corr, VectorXd& dy, VectorXd& dt,
                               std::vector<MatrixXd>& dXo, std::vector<MatrixXd>& dZo) {
      VectorXd rhat = rp;
      for (std::size_t j = 0; j < nblk; ++j) {
        G[j].noalias() = -(X[j] * Rd[j]) * Zinv[j];
        if (with_corr) G[j].noalias() -= (dXa[j] * dZa[j]) * Zinv[j];
        G[j] -= X[j];
        if (sigma_mu != 0.0) G[j] += sigma_mu * Zinv[j];
        const auto& blk = sdp.blocks[j];
        for (std::size_t i = 0; i < blk.vars.size(); ++i)
          rhat[blk.vars[i]] -= inner(blk.A[i], G[j]);
      }
      solve_kkt(rhat, rg, dy, dt);
      for (std::size_t j = 0; j < nblk; ++j) {
        MatrixXd Atdy(static_cast<Eigen::Index>(sdp.blocks[j].dim),
                      static_cast<Eigen::Index>(sdp.blocks[j].dim));
        apply_At_block(j, dy, Atdy);
        dZo[j] = Rd[j] - Atdy;
        MatrixXd raw = G[j] - (X[j] * (dZo[j] - Rd[j])) * Zinv[j];
        dXo[j] = (raw + raw.transpose()) / 2.0;
      }
    };

    // Predictor.
    VectorXd dy_a, dt_a;
    build_direction(0.0, false, dy_a, dt_a, dXa, dZa);
    double ap = 1e30, ad = 1e30;
    for (std::size_t j = 0; j < nblk; ++j) {
      ap = std::min(ap, ipm_detail::max_step(X[j], dXa[j]));
      ad = std::min(ad, ipm_detail::max_step(Z[j], dZa[j]));
    }
    const double gamma = iter < 2 ? 0.9 : 0.98;
    const double apa = std::min(1.0, gamma * ap), ada = std::min(1.0, gamma * ad);
    double gap_aff = 0.0;
    for (std::size_t j = 0; j < nblk; ++j)
      gap_aff += ((X[j] + apa * dXa[j]).array() * (Z[j] + ada * dZa[j]).array()).sum();
    const double mu_aff = gap_aff / static_cast<double>(ntot);
    double sigma = std::pow(std::min(1.0, std::max(mu_aff / mu, 0.0)), 3);
    sigma = std::min(1.0, std::max(sigma, 1e-8));

    // Corrector.
    VectorXd dy, dt;
    build_direction(sigma * mu, true, dy, dt, dX, dZ);
    ap = 1e30;
    ad = 1e30;
    for (std::size_t j = 0; j < nblk; ++j) {
      ap = std::min(ap, ipm_detail::max_step(X[j], dX[j]));
      ad = std::min(ad, ipm_detail::max_step(Z[j], dZ[j]));
    }
    const double alpha_p = std::min(1.0, gamma * ap), alpha_d = std::min(1.0, gamma * ad);
    if (alpha_p < 1e-10 && alpha_d < 1e-10) {
      res = best;
      res.status = SolveStatus::NumericalTrouble;
      res.message = "step length collapsed";
      return res;
    }
    for (std::size_t j = 0; j < nblk; ++j) {
      X[j] += alpha_p * dX[j];
      X[j] = ((X[j] + X[j].transpose()) / 2.0).eval();
      Z[j] += alpha_d * dZ[j];
      Z[j] = ((Z[j] + Z[j].transpose()) / 2.0).eval();
    }
    y += alpha_d * dy;
    if (p > 0) t += alpha_d * dt;
  }

  res = best;
  res.status = SolveStatus::NumericalTrouble;
  res.message = "iteration limit reached";
  res.iterations = opt.max_iter;
  return res;
}

}  // namespace pptdisc
