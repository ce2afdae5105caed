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

#include "pptdisc/program.hpp"

namespace pptdisc {

struct RTriplet {
  int r = 0, c = 0;
  double v = 0.0;
};

/// One PSD block of the real symmetric standard form
///   Z_j(y) = C_j - sum_i y_i A_ij >= 0.
struct RealBlock {
  std::size_t dim = 1;
  std::string name;
  Eigen::MatrixXd C;
  std::vector<int> vars;
  std::vector<std::vector<RTriplet>> A;
};

/// Real symmetric conic standard form, the solver-backend contract:
/// maximize b.y subject to the blocks above and H y = g.
struct RealSdp {
  int num_vars = 0;
  std::vector<RealBlock> blocks;
  Eigen::MatrixXd H;
  Eigen::VectorXd g;
  Eigen::VectorXd b;
};

/// [[Re H, -Im H], [Im H, Re H]]; PSD iff H is.
inline Eigen::MatrixXd embed_hermitian(const Eigen::MatrixXcd& h) {
  const auto n = h.rows();
  Eigen::MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.bottomRightCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  return out;
}

/// Inverse of the embedding: (top-left + bottom-right)/2 +
/// i (bottom-left - top-right)/2.
inline Eigen::MatrixXcd unembed_hermitian(const Eigen::MatrixXd& e) {
  const auto n = e.rows() / 2;
  Eigen::MatrixXcd out(n, n);
  out.real() = (e.topLeftCorner(n, n) + e.bottomRightCorner(n, n)) / 2.0;
  out.imag() = (e.bottomLeftCorner(n, n) - e.topRightCorner(n, n)) / 2.0;
  return out;
}

namespace detail {

inline Eigen::VectorXd internal_objective(const CompiledProgram& cp) {
  return cp.sense == Sense::Maximize ? cp.obj : Eigen::VectorXd(-cp.obj);
}

}  // namespace detail

/// Embeds every complex n x n PSD block as a real 2n x 2n block. Optimal
/// values agree because the variable space is untouched.
inline RealSdp real_embed(const CompiledProgram& cp) {
  RealSdp out;
  out.num_vars = cp.num_params;
  out.H = cp.eq_A;
  out.g = cp.eq_rhs;
  out.b = detail::internal_objective(cp);
  for (const auto& blk : cp.blocks) {
    RealBlock rb;
    rb.dim = 2 * blk.dim;
    rb.name = blk.name;
    rb.C = embed_hermitian(blk.constant);
    rb.vars = blk.vars;
    const int n = static_cast<int>(blk.dim);
    for (const auto& trips : blk.coeffs) {
      std::vector<RTriplet> rt;
      for (const auto& e : trips) {
        // Solver-side coefficient is -F (block reads C - sum y A).
        const double re = -e.v.real(), im = -e.v.imag();
        if (re != 0.0) {
          rt.push_back({e.r, e.c, re});
          rt.push_back({e.r + n, e.c + n, re});
        }
        if (im != 0.0) {
          rt.push_back({e.r + n, e.c, im});
          rt.push_back({e.r, e.c + n, -im});
        }
      }
      rb.A.push_back(std::move(rt));
    }
    out.blocks.push_back(std::move(rb));
  }
  return out;
}

/// Passthrough for all-real compiled programs: blocks keep their dimension.
inline RealSdp realize(const CompiledProgram& cp) {
  if (!cp.all_real)
    throw std::invalid_argument("realize: program carries complex data; use real_embed");
  RealSdp out;
  out.num_vars = cp.num_params;
  out.H = cp.eq_A;
  out.g = cp.eq_rhs;
  out.b = detail::internal_objective(cp);
  for (const auto& blk : cp.blocks) {
    RealBlock rb;
    rb.dim = blk.dim;
    rb.name = blk.name;
    rb.C = blk.constant.real();
    rb.vars = blk.vars;
    for (const auto& trips : blk.coeffs) {
      std::vector<RTriplet> rt;
      rt.reserve(trips.size());
      for (const auto& e : trips)
        if (e.v.real() != 0.0) rt.push_back({e.r, e.c, -e.v.real()});
      rb.A.push_back(std::move(rt));
    }
    out.blocks.push_back(std::move(rb));
  }
  return out;
}

}  // namespace pptdisc
