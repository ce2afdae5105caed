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

#include <json.hpp>

#include "pptdisc/discrimination.hpp"
#include "pptdisc/parallel.hpp"

namespace pptdisc {

/// Outcome of a hierarchy scan over the entanglement dimension k.
struct CostReport {
  struct Row {
    int k = 0;
    double value = 0.0;
    double gap = 0.0;  // global_value - value
  };
  double global_value = 0.0;
  std::vector<Row> per_k;
  std::optional<double> cost_bits;  // log2 of the saturating k, if found
  int k_max_used = 0;
  double eq_tol = 1e-5;
};

/// Hierarchy convergence bound on k: 2 d_in^2 d_out - 1.
inline long saturation_bound(const ChoiOperator& choi) {
  const long din = static_cast<long>(choi.d_in());
  const long dout = static_cast<long>(choi.d_out());
  return 2 * din * din * dout - 1;
}

/// |psucc_ppt_k - global benchmark| at a fixed k; the min-t disparity
/// program has the same optimum, so the difference of the two solved values
/// is used directly.
inline double gap_at_k(const ChoiOperator& jn, const ChoiOperator& jm, double lambda, int k,
                       const SolveOptions& opts = {}) {
  const double global = psucc_global(ChannelEnsemble::binary(jn, jm, lambda), opts).value;
  const double val = psucc_ppt_k(DiscriminationInstance::binary(jn, jm, lambda, k), opts).value;
  return std::abs(global - val);
}

/// One-shot PPT entanglement cost: scans k = 1, 2, ... until the
/// k-injectable PPT success probability reaches the global benchmark within
/// eq_tol, stopping at min(k_max, saturation bound). The benchmark is
/// cross-checked against the diamond dual before the scan.
inline CostReport ent_cost_ppt(const ChoiOperator& jn, const ChoiOperator& jm, double lambda,
                               double eq_tol = 1e-5, long k_max = -1,
                               const SolveOptions& opts = {}, WorkerPool* pool = nullptr) {
  if (eq_tol <= opts.gap_tol)
    throw std::invalid_argument("eq_tol must exceed the solver gap tolerance");
  CostReport report;
  report.eq_tol = eq_tol;
  const long bound = saturation_bound(jn);
  const long cap = k_max < 0 ? bound : std::min(k_max, bound);
  report.k_max_used = static_cast<int>(cap);

  const double global = psucc_global(ChannelEnsemble::binary(jn, jm, lambda), opts).value;
  const double dual = diamond_dual(jn, jm, lambda, opts);
  if (std::abs(global - dual) > 1e-6)
    throw std::runtime_error("global benchmark and diamond dual disagree: " +
                             std::to_string(global) + " vs " + std::to_string(dual));
  report.global_value = global;

  auto value_at = [&](long k) {
    return psucc_ppt_k(DiscriminationInstance::binary(jn, jm, lambda, static_cast<int>(k)), opts)
        .value;
  };

  const std::size_t wave = pool ? std::max<std::size_t>(1, pool->size()) : 1;
  long k = 1;
  while (k <= cap && !report.cost_bits) {
    const long hi = std::min<long>(cap, k + static_cast<long>(wave) - 1);
    std::vector<double> values;
    if (pool && hi > k) {
      values = pool->map_indexed(static_cast<std::size_t>(hi - k + 1),
                                 [&](std::size_t i) { return value_at(k + static_cast<long>(i)); });
    } else {
      for (long kk = k; kk <= hi; ++kk) values.push_back(value_at(kk));
    }
    for (long kk = k; kk <= hi; ++kk) {
      const double v = values[static_cast<std::size_t>(kk - k)];
      const double gap = global - v;
      report.per_k.push_back({static_cast<int>(kk), v, gap});
      if (std::abs(gap) <= eq_tol) {
        report.cost_bits = std::log2(static_cast<double>(kk));
        break;
      }
    }
    k = hi + 1;
  }

  if (!report.cost_bits && cap == bound)
    throw std::runtime_error(
        "hierarchy failed to saturate at its convergence bound k = " + std::to_string(bound) +
        " (largest gap " + std::to_string(report.per_k.back().gap) + "); this contradicts the "
        "saturation guarantee and indicates a numerical problem");
  return report;
}

inline nlohmann::json to_json(const CostReport& r) {
  nlohmann::json per_k = nlohmann::json::array();
  for (const auto& row : r.per_k)
    per_k.push_back({{"k", row.k}, {"value", row.value}, {"gap", row.gap}});
  nlohmann::json j{{"global_value", r.global_value},
                   {"per_k", per_k},
                   {"k_max_used", r.k_max_used},
                   {"eq_tol", r.eq_tol}};
  if (r.cost_bits)
    j["cost_bits"] = *r.cost_bits;
  else
    j["cost_bits"] = nullptr;
  return j;
}

/// CSV with columns k, value, gap.
inline std::string to_csv(const CostReport& r) {
  std::string out = "k,value,gap\n";
  char buf[96];
  for (const auto& row : r.per_k) {
    std::snprintf(buf, sizeof buf, "%d,%.9g,%.9g\n", row.k, row.value, row.gap);
    out += buf;
  }
  return out;
}

}  // namespace pptdisc
