// Copyright 2026 The chancap authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "chancap/capacity.hpp"
#include "chancap/rng.hpp"

#include "oracles.hpp"

using namespace chancap;

namespace {

BipartiteState bell_state() {
  Vector v(4);
  v << Complex(1.0 / std::sqrt(2.0)), Complex(0.0), Complex(0.0),
      Complex(1.0 / std::sqrt(2.0));
  return BipartiteState(DensityMatrix(Matrix(v * v.adjoint())), 2, 2);
}

BipartiteState mixed_four() {
  return BipartiteState(DensityMatrix(maximally_mixed(4)), 2, 2);
}

// Deterministic ten-parameter states for cross-checks.
BipartiteState sample_ten_param(std::uint64_t seed) {
  Rng rng(seed);
  for (;;) {
    std::vector<double> params;
    const auto box = family_box(StateFamily::kTenParam);
    for (const auto& [lo, hi] : box) params.push_back(rng.uniform(lo, hi));
    if (auto state = family_state(StateFamily::kTenParam, params)) return *state;
  }
}

}  // namespace

TEST_CASE("EncodingEnsemble validates weights and shapes") {
  CHECK_THROWS_AS(EncodingEnsemble({{0.5, identity_channel(2)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(EncodingEnsemble({{-0.2, identity_channel(2)},
                                    {1.2, identity_channel(2)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(EncodingEnsemble({{0.5, identity_channel(2)},
                                    {0.5, identity_channel(3)}}),
                  std::invalid_argument);
  CHECK(identity_encoding(2).entries().size() == 1);
  CHECK(weyl_encoding(2).entries().size() == 4);
  CHECK(weyl_encoding(2).entries().front().first == doctest::Approx(0.25));
  CHECK(reset_encoding(3).dout() == 3);
}

TEST_CASE("entropy_gain frozen values and sign freedom") {
  CHECK(entropy_gain(erasure(2, 0.5), DensityMatrix(maximally_mixed(2))) ==
        doctest::Approx(0.5).epsilon(1e-13));
  // Resetting a mixed state removes a bit: gains may be negative.
  CHECK(entropy_gain(reset_channel(2), DensityMatrix(maximally_mixed(2))) ==
        doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("extended_entropy_gain reproduces the erasure complement identity") {
  // Complement of erasure(0.5) acting on a Bell pair: H2(0.5) + 0.5*0 + 0.5*1 = 1.5.
  CHECK(extended_entropy_gain(complementary(erasure(2, 0.5)), bell_state()) ==
        doctest::Approx(1.5).epsilon(1e-12));
  // General identity on a handful of random states, for each symmetric eps.
  for (double eps : {0.25, 0.5, 0.75}) {
    const KrausChannel comp = complementary(erasure(2, 1.0 - eps));
    for (std::uint64_t seed : {601u, 602u, 603u}) {
      const BipartiteState rho = sample_ten_param(seed);
      const double s_sw = von_neumann_entropy(rho.state());
      const double s_w = von_neumann_entropy(rho.marginal_b());
      const double want =
          binary_entropy(eps) + (1.0 - eps) * s_sw + eps * s_w - s_sw;
      CHECK(extended_entropy_gain(comp, rho) ==
            doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("holevo matches direct evaluation and clamps at zero") {
  const DensityMatrix r1(oracle::random_density(2, 611));
  const DensityMatrix r2(oracle::random_density(2, 612));
  const Matrix avg = 0.3 * r1.matrix() + 0.7 * r2.matrix();
  const double want = von_neumann_entropy(DensityMatrix(avg)) -
                      0.3 * von_neumann_entropy(r1) - 0.7 * von_neumann_entropy(r2);
  CHECK(holevo({{0.3, r1}, {0.7, r2}}) == doctest::Approx(want).epsilon(1e-12));
  CHECK(holevo({{1.0, r1}}) == 0.0);  // single state: clamped exact zero
  CHECK_THROWS_AS(holevo({}), std::invalid_argument);
  CHECK_THROWS_AS(holevo({{0.6, r1}, {0.6, r2}}), std::invalid_argument);
}

TEST_CASE("F_functional frozen values on the noiseless channel") {
  // Maximally mixed witness pair: F = 1 - (1 - 2) = 2 bits.
  CHECK(F_functional(identity_channel(2), mixed_four(), identity_encoding(2)) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // A pure maximally entangled witness leaves nothing: F = 1 - (1 - 0) = 0.
  CHECK(F_functional(identity_channel(2), bell_state(), identity_encoding(2)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // Erasure at the Bell point also vanishes.
  CHECK(F_functional(erasure(2, 0.25), bell_state(), identity_encoding(2)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(F_functional(erasure(2, 0.25), mixed_four(), identity_encoding(3)),
                  std::invalid_argument);
}

TEST_CASE("chi_covariant_inner frozen values and the integrand cross-check") {
  const BipartiteState i4 = mixed_four();
  CHECK(chi_covariant_inner(erasure(2, 0.25), identity_channel(2), i4) ==
        doctest::Approx(1.5).epsilon(1e-12));
  CHECK(chi_covariant_inner(erasure(2, 0.25), identity_channel(2), bell_state()) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // The erasure integrand closed form agrees with the generic inner objective.
  for (std::uint64_t seed : {621u, 622u, 623u, 624u}) {
    const BipartiteState rho = sample_ten_param(seed);
    CHECK(chi_covariant_inner(erasure(2, 0.25), identity_channel(2), rho) ==
          doctest::Approx(qec_chi_integrand(0.25, 2, identity_channel(2), rho))
              .epsilon(1e-10));
  }
  // Reset encoding pins the one-shot value regardless of the witness state.
  const double c1_direct =
      von_neumann_entropy(apply(erasure(2, 0.25), DensityMatrix(maximally_mixed(2)))) -
      von_neumann_entropy(apply(erasure(2, 0.25),
                                DensityMatrix(Matrix(
                                    (Matrix(2, 2) << 1, 0, 0, 0).finished()))));
  for (const BipartiteState& rho : {mixed_four(), bell_state()}) {
    CHECK(chi_covariant_inner(erasure(2, 0.25), reset_channel(2), rho) ==
          doctest::Approx(c1_direct).epsilon(1e-10));
  }
  CHECK(c1_direct == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("chi_covariant_inner respects the dimension cap and local invariance") {
  for (std::uint64_t seed : {631u, 632u, 633u}) {
    const BipartiteState rho = sample_ten_param(seed);
    CHECK(chi_covariant_inner(depolarizing(2, 0.2), identity_channel(2), rho) <=
          2.0 + 1e-9);
    // Local pre-rotations leave the depolarizing inner objective unchanged.
    const Matrix u = oracle::random_unitary(2, seed + 50);
    const Matrix w = oracle::random_unitary(2, seed + 60);
    const Matrix local = tensor(u, w);
    const BipartiteState rotated(
        DensityMatrix(local * rho.matrix() * local.adjoint()), 2, 2);
    CHECK(chi_covariant_inner(depolarizing(2, 0.2), identity_channel(2), rotated) ==
          doctest::Approx(chi_covariant_inner(depolarizing(2, 0.2),
                                              identity_channel(2), rho))
              .epsilon(1e-8));
  }
}

TEST_CASE("qec_closed_forms frozen grid and internal consistency") {
  const QecClosedForms base = qec_closed_forms(0.25, 2, 0.0);
  CHECK(base.c_e == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(base.c1 == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(qec_closed_forms(0.25, 2, 1.0).chi_l_i == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(qec_closed_forms(0.25, 2, 2.0).chi_l_i == doctest::Approx(0.0).epsilon(1e-15));
  // Linearity in y.
  const double mid = qec_closed_forms(0.1, 2, 1.0).chi_l_i;
  const double lo = qec_closed_forms(0.1, 2, 0.5).chi_l_i;
  const double hi = qec_closed_forms(0.1, 2, 1.5).chi_l_i;
  CHECK(mid == doctest::Approx((lo + hi) / 2.0).epsilon(1e-14));
  CHECK_THROWS_AS(qec_closed_forms(0.25, 2, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(qec_closed_forms(-0.1, 2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(qec_closed_forms(0.25, 1, 0.0), std::invalid_argument);
}

TEST_CASE("depolarizing_closed_forms frozen values") {
  const DepolarizingClosedForms f02 = depolarizing_closed_forms(0.2);
  CHECK(f02.c_e == doctest::Approx(oracle::kDepolarizingCe02).epsilon(1e-13));
  CHECK(f02.c == doctest::Approx(oracle::kDepolarizingC02).epsilon(1e-13));
  CHECK(f02.chi_star(1.0) ==
        doctest::Approx(oracle::kDepolarizingChiStar1).epsilon(1e-13));
  CHECK(f02.chi_star(0.0) == doctest::Approx(f02.c_e).epsilon(1e-15));
  const DepolarizingClosedForms f05 = depolarizing_closed_forms(0.5);
  CHECK(f05.c_e == doctest::Approx(oracle::kDepolarizingCe05).epsilon(1e-13));
  CHECK(f05.c == doctest::Approx(oracle::kDepolarizingC05).epsilon(1e-13));
  CHECK(depolarizing_closed_forms(0.0).c_e == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(depolarizing_closed_forms(1.5), std::invalid_argument);
}

TEST_CASE("state families map boxes into valid states") {
  CHECK(family_param_count(StateFamily::kBellDiagonal) == 4);
  CHECK(family_param_count(StateFamily::kTenParam) == 10);
  CHECK(family_box(StateFamily::kBellDiagonal).size() == 4);
  CHECK(family_box(StateFamily::kTenParam).size() == 10);

  const auto bd = family_state(StateFamily::kBellDiagonal, {0.9, 0.2, 0.3, 0.4});
  REQUIRE(bd.has_value());
  CHECK(std::abs(bd->matrix().trace() - Complex(1.0)) <= 1e-12);
  CHECK(max_abs(bd->marginal_a().matrix() - maximally_mixed(2)) <= 1e-12);

  CHECK_THROWS_AS(family_state(StateFamily::kBellDiagonal, {0.5, 0.5}),
                  std::invalid_argument);

  const auto tp = family_state(StateFamily::kTenParam,
                               {0.5, 0.5, 0.5, 0.1, 0.1, 0.0, 0.0, 1.0, 2.0, 3.0});
  REQUIRE(tp.has_value());
  CHECK(max_abs(tp->marginal_a().matrix() -
                Matrix(0.5 * Matrix::Identity(2, 2))) <= 1e-12);
}

TEST_CASE("optimize_constrained finds the unconstrained Bell corner") {
  const StateObjective mi = [](const BipartiteState& rho) {
    return mutual_information(rho);
  };
  const CapacityResult res =
      optimize_constrained(mi, StateFamily::kBellDiagonal, ConstraintSpec{}, 2000, 5);
  CHECK(res.feasible);
  CHECK(res.value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(res.samples_evaluated >= 2000);
  CHECK(res.seed == 5);
}

TEST_CASE("optimize_constrained tracks the erasure closed form at y=1") {
  const StateObjective objective = [](const BipartiteState& rho) {
    return qec_chi_integrand(0.25, 2, identity_channel(2), rho);
  };
  ConstraintSpec cons;
  cons.clauses.push_back({ConstraintQuantity::kMutualInformation,
                          Comparator::kEqual, 1.0, 0.02});
  const CapacityResult res = optimize_constrained(
      objective, StateFamily::kBellDiagonal, cons, 3000, 11);
  CHECK(res.feasible);
  CHECK(std::abs(res.value - 0.75) <= 0.02);
  CHECK(res.constraint_slacks.size() == 1);
  CHECK(res.constraint_slacks.front() >= -0.02 - 1e-12);
}

TEST_CASE("optimize_constrained reports infeasibility honestly") {
  const StateObjective mi = [](const BipartiteState& rho) {
    return mutual_information(rho);
  };
  // Degenerate budget: no sample, no verdict.
  const CapacityResult empty =
      optimize_constrained(mi, StateFamily::kBellDiagonal, ConstraintSpec{}, 0, 1);
  CHECK_FALSE(empty.feasible);
  CHECK(empty.samples_evaluated == 0);

  // Unsatisfiable threshold: nearest miss reported with its slack.
  ConstraintSpec impossible;
  impossible.clauses.push_back({ConstraintQuantity::kMutualInformation,
                                Comparator::kGreaterEqual, 3.0, 0.02});
  const CapacityResult res = optimize_constrained(
      mi, StateFamily::kBellDiagonal, impossible, 500, 1);
  CHECK_FALSE(res.feasible);
  CHECK(res.constraint_slacks.size() == 1);
  CHECK(res.constraint_slacks.front() < -0.5);  // cannot reach 3 bits
  CHECK_FALSE(res.argmax_params.empty());
}

TEST_CASE("optimize_constrained is bitwise reproducible") {
  const StateObjective objective = [](const BipartiteState& rho) {
    return qec_chi_integrand(0.25, 2, identity_channel(2), rho);
  };
  ConstraintSpec cons;
  cons.clauses.push_back({ConstraintQuantity::kMutualInformation,
                          Comparator::kEqual, 0.5, 0.02});
  const CapacityResult a = optimize_constrained(
      objective, StateFamily::kBellDiagonal, cons, 1500, 42);
  const CapacityResult b = optimize_constrained(
      objective, StateFamily::kBellDiagonal, cons, 1500, 42);
  CHECK(a.value == b.value);
  CHECK(a.samples_evaluated == b.samples_evaluated);
  REQUIRE(a.argmax_params.size() == b.argmax_params.size());
  for (std::size_t i = 0; i < a.argmax_params.size(); ++i) {
    CHECK(a.argmax_params[i] == b.argmax_params[i]);
  }
  REQUIRE(a.constraint_slacks.size() == b.constraint_slacks.size());
  for (std::size_t i = 0; i < a.constraint_slacks.size(); ++i) {
    CHECK(a.constraint_slacks[i] == b.constraint_slacks[i]);
  }
}

TEST_CASE("mc_scan is reproducible and respects the dimension bound") {
  const auto one = mc_scan(identity_channel(2), StateFamily::kTenParam, 1, 9);
  const auto one_again = mc_scan(identity_channel(2), StateFamily::kTenParam, 1, 9);
  REQUIRE(one.size() == 1);
  CHECK(one.front().q == one_again.front().q);
  CHECK(one.front().f == one_again.front().f);

  const auto records = mc_scan(identity_channel(2), StateFamily::kTenParam, 200, 13);
  CHECK(records.size() == 200);
  for (const ScanRecord& r : records) {
    CHECK(std::isfinite(r.q));
    CHECK(r.q >= -1e-12);
    CHECK(r.q <= 2.0 + 1e-9);
    CHECK(r.f <= 2.0 + 1e-9);
  }
}

TEST_CASE("bin_scan summarizes records against a reference line") {
  const std::vector<ScanRecord> records = {
      {0.04, 1.0}, {0.06, 1.2}, {0.52, 0.8}, {0.58, 0.9}, {1.95, 0.3}};
  const auto bins = bin_scan(records, 0.1, [](double q) { return q; });
  REQUIRE(bins.size() == 3);
  CHECK(bins[0].q_bin == doctest::Approx(0.05));
  CHECK(bins[0].count == 2);
  CHECK(bins[0].q_at_max == doctest::Approx(0.06));
  CHECK(bins[0].f_max == doctest::Approx(1.2));
  CHECK(bins[0].chi_star == doctest::Approx(0.06));
  CHECK(bins[0].deviation == doctest::Approx(1.14));
  CHECK(bins[1].q_bin == doctest::Approx(0.55));
  CHECK(bins[1].count == 2);
  CHECK(bins[1].f_max == doctest::Approx(0.9));
  CHECK(bins[2].q_bin == doctest::Approx(1.95));
  CHECK(bins[2].count == 1);
  CHECK_THROWS_AS(bin_scan(records, 0.0, [](double q) { return q; }),
                  std::invalid_argument);
}

TEST_CASE("eve_bound validates its constraint contract") {
  ConstraintSpec no_equality;
  no_equality.clauses.push_back({ConstraintQuantity::kMutualInformation,
                                 Comparator::kGreaterEqual, 1.0, 0.02});
  no_equality.fixed_marginal_w = maximally_mixed(2);
  CHECK_THROWS_AS(eve_bound(identity_channel(2), identity_encoding(2),
                            no_equality, 10, 1),
                  std::invalid_argument);

  ConstraintSpec no_marginal;
  no_marginal.clauses.push_back({ConstraintQuantity::kMutualInformation,
                                 Comparator::kEqual, 1.0, 0.02});
  CHECK_THROWS_AS(eve_bound(identity_channel(2), identity_encoding(2),
                            no_marginal, 10, 1),
                  std::invalid_argument);

  ConstraintSpec ok = no_marginal;
  ok.fixed_marginal_w = maximally_mixed(2);
  CHECK_THROWS_AS(eve_bound(erasure(3, 0.25), identity_encoding(3), ok, 10, 1),
                  std::invalid_argument);
}

TEST_CASE("eve_bound decoupled witness recovers two bits on the clean channel") {
  ConstraintSpec cons;
  cons.clauses.push_back({ConstraintQuantity::kMutualInformation,
                          Comparator::kEqual, 0.0, 0.02});
  cons.fixed_marginal_w = maximally_mixed(2);
  const CapacityResult res =
      eve_bound(identity_channel(2), identity_encoding(2), cons, 2000, 7);
  CHECK(res.feasible);
  CHECK(std::abs(res.value - 2.0) <= 0.02);
  CHECK(res.constraint_slacks.size() == 2);  // clause slack + marginal slack
}

TEST_CASE("eve_bound reports an unreachable rate as infeasible") {
  ConstraintSpec cons;
  cons.clauses.push_back({ConstraintQuantity::kMutualInformation,
                          Comparator::kEqual, 3.0, 0.02});
  cons.fixed_marginal_w = maximally_mixed(2);
  const CapacityResult res =
      eve_bound(identity_channel(2), identity_encoding(2), cons, 300, 7);
  CHECK_FALSE(res.feasible);
}
