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
#include <string>

#include "pptdisc/labeled_matrix.hpp"

namespace pptdisc {

/// JSON layout: {"registers": [{"label": .., "dim": ..}, ...],
///               "re": row-major real part, "im": row-major imaginary part}.
/// Doubles survive the round trip bit-exactly (shortest-representation
/// printing plus exact parsing).
inline nlohmann::json to_json(const LabeledMatrix& m) {
  nlohmann::json regs = nlohmann::json::array();
  for (const auto& r : m.system().registers()) regs.push_back({{"label", r.label}, {"dim", r.dim}});
  const auto n = static_cast<Eigen::Index>(m.dim());
  std::vector<double> re, im;
  re.reserve(static_cast<std::size_t>(n * n));
  im.reserve(static_cast<std::size_t>(n * n));
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      re.push_back(m.mat()(r, c).real());
      im.push_back(m.mat()(r, c).imag());
    }
  return nlohmann::json{{"registers", regs}, {"re", re}, {"im", im}};
}

inline LabeledMatrix labeled_matrix_from_json(const nlohmann::json& j) {
  std::vector<Register> regs;
  for (const auto& r : j.at("registers"))
    regs.push_back({r.at("label").get<std::string>(), r.at("dim").get<std::size_t>()});
  RegisterSystem sys(std::move(regs));
  const auto n = static_cast<Eigen::Index>(sys.total_dim());
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (re.size() != static_cast<std::size_t>(n * n) || im.size() != static_cast<std::size_t>(n * n))
    throw std::invalid_argument("labeled matrix JSON: entry count does not match registers");
  Eigen::MatrixXcd mat(n, n);
  std::size_t idx = 0;
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c, ++idx)
      mat(r, c) = Complex(re[idx].get<double>(), im[idx].get<double>());
  return LabeledMatrix(std::move(sys), std::move(mat));
}

}  // namespace pptdisc
