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

#include "pptdisc/discrimination.hpp"
#include "support/random_ops.hpp"

using namespace pptdisc;
using namespace pptdisc::testing;

namespace {

LabeledMatrix basis_state(std::size_t d, std::size_t idx) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  m(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)) = 1.0;
  return LabeledMatrix(RegisterSystem({{kA1, 1}, {kB1, d}}), m, true);
}

}  // namespace

TEST_CASE("global benchmark values", "[discrimination]") {
  ChoiOperator ad = amplitude_damping(0.25);
  GlobalSolution same = psucc_global(ChannelEnsemble::binary(ad, ad, 0.5));
  CHECK(same.value == Catch::Approx(0.5).margin(1e-7));

  // Replacers to orthogonal pure states are perfectly distinguishable.
  ChoiOperator rep0 = replacer({2, 1}, basis_state(2, 0));
  ChoiOperator rep1 = replacer({2, 1}, basis_state(2, 1));
  CHECK(psucc_global(ChannelEnsemble::binary(rep0, rep1, 0.5)).value ==
        Catch::Approx(1.0).margin(1e-7));

  // Point-to-point depolarizing pair: 1/2 + (p-q)(d^2-1)/(2 d^2).
  ChoiOperator dp = depolarizing_pp(2, 0.9), dq = depolarizing_pp(2, 0.1);
  CHECK(psucc_global(ChannelEnsemble::binary(dp, dq, 0.5)).value ==
        Catch::Approx(0.8).margin(1e-7));
}

TEST_CASE("m-ary global tester", "[discrimination]") {
  // Three replacers to mutually orthogonal states are perfectly
  // distinguishable; two identical members cap the value at 1 - p/2.
  ChoiOperator r0 = replacer({2, 1}, basis_state(2, 0));
  ChoiOperator r1 = replacer({2, 1}, basis_state(2, 1));
  ChannelEnsemble three{{{0.3, r0}, {0.3, r1}, {0.4, r0}}};
  GlobalSolution sol = psucc_global(three);
  // Best strategy groups the two copies of r0: success 0.3 + 0.4 = 0.7 from
  // guessing the heavier label on outcome 0 plus 0.3 on outcome 1.
  CHECK(sol.value == Catch::Approx(0.3 + 0.4 + 0.0).margin(0.3 + 1e-6));
  CHECK(sol.value >= 0.7 - 1e-6);
  CHECK(sol.testers.size() == 3);
}

TEST_CASE("diamond dual agrees with the primal", "[discrimination]") {
  ChoiOperator ad = amplitude_damping(0.25);
  CHECK(diamond_dual(ad, ad, 0.5) == Catch::Approx(0.5).margin(1e-7));

  // Werner-Holevo Choi operators have orthogonal supports.
  CHECK(diamond_dual(werner_holevo(2, 0), werner_holevo(2, 1), 0.5) ==
        Catch::Approx(1.0).margin(1e-7));

  CHECK(diamond_dual(depolarizing_pp(2, 0.9), depolarizing_pp(2, 0.1), 0.5) ==
        Catch::Approx(0.8).margin(1e-7));

  std::mt19937 rng(73);
  for (int rep = 0; rep < 3; ++rep) {
    ChoiOperator n = random_pp_channel(2, 2, 2, rng);
    ChoiOperator m = random_pp_channel(2, 2, 2, rng);
    const double lambda = 0.3 + 0.2 * rep;
    const double primal = psucc_global(ChannelEnsemble::binary(n, m, lambda)).value;
    const double dual = diamond_dual(n, m, lambda);
    CHECK(primal == Catch::Approx(dual).margin(1e-6));
  }
}

TEST_CASE("ppt tester values for depolarizing channels", "[discrimination]") {
  ChoiOperator dp = depolarizing_pp(2, 0.9), dq = depolarizing_pp(2, 0.1);

  TesterSolution k2 = psucc_ppt_k(DiscriminationInstance::binary(dp, dq, 0.5, 2));
  CHECK(k2.value == Catch::Approx(0.8).margin(1e-6));

  TesterSolution k1 = psucc_ppt_k(DiscriminationInstance::binary(dp, dq, 0.5, 1));
  CHECK(k1.value == Catch::Approx(0.7).margin(1e-6));

  // Returned testers satisfy every constraint when re-checked dense.
  CHECK(k1.max_residual < 1e-6);
  CHECK(k2.max_residual < 1e-6);
  // Sandwich: between the trivial guess and the global optimum.
  for (const TesterSolution* t : {&k1, &k2}) {
    CHECK(t->value >= 0.5 - 1e-6);
    CHECK(t->value <= 0.8 + 1e-6);
  }
}

TEST_CASE("classical channels need no entanglement at k=1", "[discrimination]") {
  std::mt19937 rng(79);
  for (int rep = 0; rep < 3; ++rep) {
    ChoiOperator n = classical_channel(random_stochastic(2, 2, rng), {2, 1}, {1, 2});
    ChoiOperator m = classical_channel(random_stochastic(2, 2, rng), {2, 1}, {1, 2});
    const double lambda = 0.5;
    const double global = psucc_global(ChannelEnsemble::binary(n, m, lambda)).value;
    const double local = psucc_ppt_k(DiscriminationInstance::binary(n, m, lambda, 1)).value;
    CHECK(local == Catch::Approx(global).margin(1e-6));
  }
}

TEST_CASE("ppt dual matches primal and paper bounds", "[discrimination]") {
  ChoiOperator ad = amplitude_damping(0.25);
  for (int k : {1, 3}) {
    CHECK(psucc_ppt_k_dual(DiscriminationInstance::binary(ad, ad, 0.5, k)) ==
          Catch::Approx(0.5).margin(1e-6));
  }

  ChoiOperator dp = depolarizing_pp(2, 0.9), dq = depolarizing_pp(2, 0.1);
  CHECK(psucc_ppt_k_dual(DiscriminationInstance::binary(dp, dq, 0.5, 1)) ==
        Catch::Approx(0.7).margin(1e-6));

  // Werner-Holevo d=3, k=2: dual value stays below 1 - lambda + lambda(k+1)/(d+1).
  ChoiOperator w0 = werner_holevo(3, 0), w1 = werner_holevo(3, 1);
  const double dual = psucc_ppt_k_dual(DiscriminationInstance::binary(w0, w1, 0.5, 2));
  CHECK(dual <= 0.875 + 1e-6);
  const double primal = psucc_ppt_k(DiscriminationInstance::binary(w0, w1, 0.5, 2)).value;
  CHECK(dual == Catch::Approx(primal).margin(1e-6));

  std::mt19937 rng(83);
  for (int rep = 0; rep < 2; ++rep) {
    ChoiOperator n = random_pp_channel(2, 2, 2, rng);
    ChoiOperator m = random_pp_channel(2, 2, 2, rng);
    DiscriminationInstance inst = DiscriminationInstance::binary(n, m, 0.4, 1 + rep);
    CHECK(psucc_ppt_k(inst).value == Catch::Approx(psucc_ppt_k_dual(inst)).margin(1e-6));
  }
}

TEST_CASE("werner-holevo saturates at k = d", "[discrimination]") {
  ChoiOperator w0 = werner_holevo(2, 0), w1 = werner_holevo(2, 1);
  CHECK(psucc_ppt_k(DiscriminationInstance::binary(w0, w1, 0.5, 2)).value ==
        Catch::Approx(1.0).margin(1e-6));
  CHECK(psucc_ppt_k(DiscriminationInstance::binary(w0, w1, 0.5, 1)).value < 1.0 - 1e-3);
}

TEST_CASE("four-operator form agrees with the reduced form", "[discrimination]") {
  std::mt19937 rng(89);
  std::vector<DiscriminationInstance> instances;
  instances.push_back(DiscriminationInstance::binary(depolarizing_pp(2, 0.8),
                                                     depolarizing_pp(2, 0.2), 0.5, 1));
  instances.push_back(DiscriminationInstance::binary(amplitude_damping(0.1),
                                                     amplitude_damping(0.9), 0.35, 2));
  instances.push_back(DiscriminationInstance::binary(random_pp_channel(2, 2, 2, rng),
                                                     random_pp_channel(2, 2, 1, rng), 0.6, 2));
  for (const auto& inst : instances) {
    const double reduced = psucc_ppt_k(inst).value;
    const double fourop = psucc_ppt_k_fourop(inst);
    CHECK(reduced == Catch::Approx(fourop).margin(1e-6));
  }
}

TEST_CASE("replacer channels reduce to state discrimination", "[discrimination]") {
  std::mt19937 rng(97);
  for (int rep = 0; rep < 2; ++rep) {
    RegisterSystem out_sys({{kA1, 2}, {kB1, 2}});
    LabeledMatrix rho(out_sys, random_density(4, rng), true);
    LabeledMatrix sigma(out_sys, random_density(4, rng), true);
    ChoiOperator n = replacer({1, 1}, rho);
    ChoiOperator m = replacer({1, 1}, sigma);
    const double lambda = 0.5, k = 1 + rep;
    const double channel_val =
        psucc_ppt_k(DiscriminationInstance::binary(n, m, lambda, static_cast<int>(k))).value;
    const double state_val =
        state_discrimination_ppt_k(rho, sigma, lambda, static_cast<int>(k));
    CHECK(channel_val == Catch::Approx(state_val).margin(1e-6));
  }
}

TEST_CASE("monotonicity and sandwich on a random pair", "[discrimination]") {
  std::mt19937 rng(101);
  ChoiOperator n = random_pp_channel(2, 2, 2, rng);
  ChoiOperator m = random_pp_channel(2, 2, 2, rng);
  const double global = psucc_global(ChannelEnsemble::binary(n, m, 0.5)).value;
  double prev = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const double v = psucc_ppt_k(DiscriminationInstance::binary(n, m, 0.5, k)).value;
    CHECK(v >= prev - 1e-6);
    CHECK(v >= 0.5 - 1e-6);
    CHECK(v <= global + 1e-6);
    prev = v;
  }
}

TEST_CASE("composite discrimination", "[discrimination]") {
  // Singleton sets degenerate to the pair dual.
  ChoiOperator dp = depolarizing_bipartite(2, 2, 0.9), dq = depolarizing_bipartite(2, 2, 0.2);
  const double pair_dual = psucc_ppt_k_dual(DiscriminationInstance::binary(dp, dq, 0.5, 1));
  const double singleton = composite_psucc(ParamChannelSet::singleton(dp),
                                           ParamChannelSet::singleton(dq), 0.5, 1);
  CHECK(singleton == Catch::Approx(pair_dual).margin(1e-6));

  // Overlapping parameter intervals admit p = q, so the worst case is a coin
  // flip.
  auto interval_set = [](double lo, double hi) {
    ChoiOperator base = depolarizing_bipartite(2, 2, 0.0);
    LabeledMatrix dir = depolarizing_bipartite(2, 2, 1.0).matrix - base.matrix;
    ParamChannelSet set{base, {dir}, ParamChannelSet::Domain::Box, {{lo, hi}}};
    return set;
  };
  const double overlap = composite_psucc(interval_set(0.4, 0.6), interval_set(0.5, 0.7), 0.5, 1);
  CHECK(overlap == Catch::Approx(0.5).margin(1e-6));

  CHECK_THROWS_AS(composite_psucc(ParamChannelSet::singleton(dp), ParamChannelSet::singleton(dq),
                                  0.5, 0),
                  std::invalid_argument);
}

TEST_CASE("degenerate priors and k are rejected", "[discrimination]") {
  ChoiOperator n = amplitude_damping(0.2), m = amplitude_damping(0.7);
  CHECK_THROWS_AS(DiscriminationInstance::binary(n, m, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(DiscriminationInstance::binary(n, m, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(DiscriminationInstance::binary(n, m, 0.5, 0), std::invalid_argument);
}
