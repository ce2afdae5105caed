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

#include <catch2/catch_amalgamated.hpp>
#include <cstring>

#include "pptdisc/serialization.hpp"
#include "support/random_ops.hpp"

using namespace pptdisc;

TEST_CASE("labeled matrix JSON round trip is bit exact", "[serialization]") {
  std::mt19937 rng(31);
  RegisterSystem sys({{"A0", 2}, {"B0", 3}});
  LabeledMatrix m(sys, testing::random_ginibre(6, 6, rng));

  const std::string text = to_json(m).dump();
  LabeledMatrix back = labeled_matrix_from_json(nlohmann::json::parse(text));

  REQUIRE(back.system() == m.system());
  for (Eigen::Index r = 0; r < 6; ++r)
    for (Eigen::Index c = 0; c < 6; ++c) {
      const double re1 = m.mat()(r, c).real(), re2 = back.mat()(r, c).real();
      const double im1 = m.mat()(r, c).imag(), im2 = back.mat()(r, c).imag();
      CHECK(std::memcmp(&re1, &re2, sizeof(double)) == 0);
      CHECK(std::memcmp(&im1, &im2, sizeof(double)) == 0);
    }
}

TEST_CASE("labeled matrix JSON validates shape", "[serialization]") {
  nlohmann::json j = {{"registers", {{{"label", "A"}, {"dim", 2}}}},
                      {"re", {1.0, 0.0, 0.0}},
                      {"im", {0.0, 0.0, 0.0}}};
  CHECK_THROWS_AS(labeled_matrix_from_json(j), std::invalid_argument);
}
