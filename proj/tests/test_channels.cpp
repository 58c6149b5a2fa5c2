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

#include <stdexcept>

#include "chancap/channels.hpp"

#include "oracles.hpp"

using namespace chancap;

namespace {

KrausChannel amplitude_damping(double gamma) {
  Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  return KrausChannel(2, 2, {k0, k1});
}

BipartiteState bell_state() {
  Vector v(4);
  v << Complex(1.0 / std::sqrt(2.0)), Complex(0.0), Complex(0.0),
      Complex(1.0 / std::sqrt(2.0));
  return BipartiteState(DensityMatrix(Matrix(v * v.adjoint())), 2, 2);
}

}  // namespace

TEST_CASE("KrausChannel validates the completeness relation") {
  Matrix half = Matrix::Identity(2, 2) * 0.5;
  CHECK_THROWS_AS(KrausChannel(2, 2, {half}), std::invalid_argument);
  CHECK_NOTHROW(KrausChannel(2, 2, {Matrix::Identity(2, 2)}));
  CHECK_THROWS_AS(KrausChannel(2, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(KrausChannel(2, 3, {Matrix::Identity(2, 2)}),
                  std::invalid_argument);
}

TEST_CASE("apply matches the literal Kraus sum") {
  const KrausChannel ch = random_channel(3, 3, 7, 3);
  const DensityMatrix rho(oracle::random_density(3, 8));
  const Matrix want = oracle::naive_apply(ch.kraus(), rho.matrix());
  CHECK(max_abs(apply(ch, rho).matrix() - want) <= 1e-13);
}

TEST_CASE("erasure keeps the input block and routes weight to the flag") {
  const KrausChannel ch = erasure(2, 0.5);
  CHECK(ch.dout() == 3);
  CHECK(ch.kraus().size() == 3);
  const DensityMatrix out = apply(ch, DensityMatrix(maximally_mixed(2)));
  Matrix want = Matrix::Zero(3, 3);
  want(0, 0) = 0.25;
  want(1, 1) = 0.25;
  want(2, 2) = 0.5;
  CHECK(max_abs(out.matrix() - want) <= 1e-13);
  CHECK(von_neumann_entropy(out) ==
        doctest::Approx(oracle::kErasureMixedOut50).epsilon(1e-13));
  CHECK(von_neumann_entropy(apply(erasure(2, 0.25), DensityMatrix(maximally_mixed(2)))) ==
        doctest::Approx(oracle::kErasureMixedOut25).epsilon(1e-13));
  CHECK(von_neumann_entropy(apply(erasure(3, 0.25), DensityMatrix(maximally_mixed(3)))) ==
        doctest::Approx(oracle::kErasureMixedOutD3).epsilon(1e-13));
  CHECK_THROWS_AS(erasure(2, 1.5), std::invalid_argument);
}

TEST_CASE("depolarizing acts as the lam I/d + (1-lam) rho mixture") {
  const double lam = 0.2;
  const KrausChannel ch = depolarizing(2, lam);
  CHECK(ch.kraus().size() == 4);
  const Matrix rho = oracle::random_density(2, 17);
  const Matrix want = lam * maximally_mixed(2) + (1.0 - lam) * rho;
  CHECK(max_abs(apply(ch, DensityMatrix(rho)).matrix() - want) <= 1e-12);

  // Qubit Pauli mixture with weights (1 - 3 lam/4, lam/4, lam/4, lam/4).
  Matrix x = Matrix::Zero(2, 2), y = Matrix::Zero(2, 2), z = Matrix::Zero(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  y(0, 1) = Complex(0.0, -1.0);
  y(1, 0) = Complex(0.0, 1.0);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  const Matrix pauli_mix = (1.0 - 0.75 * lam) * rho +
                           0.25 * lam * (x * rho * x + y * rho * y + z * rho * z);
  CHECK(max_abs(apply(ch, DensityMatrix(rho)).matrix() - pauli_mix) <= 1e-12);

  // The fully mixing edge of the parameter range is valid for qubits.
  CHECK_NOTHROW(depolarizing(2, 4.0 / 3.0));
  CHECK_THROWS_AS(depolarizing(2, 1.4), std::invalid_argument);
  CHECK_THROWS_AS(depolarizing(2, -0.1), std::invalid_argument);

  // Qutrit action follows the same mixture formula.
  const Matrix rho3 = oracle::random_density(3, 18);
  const Matrix want3 = 0.3 * maximally_mixed(3) + 0.7 * rho3;
  CHECK(max_abs(apply(depolarizing(3, 0.3), DensityMatrix(rho3)).matrix() - want3) <=
        1e-12);
}

TEST_CASE("dephasing scales off-diagonals by sqrt(1-gamma)") {
  Matrix plus(2, 2);
  plus << Complex(0.5), Complex(0.5), Complex(0.5), Complex(0.5);
  const DensityMatrix out = apply(dephasing(0.5), DensityMatrix(plus));
  CHECK(std::abs(out.matrix()(0, 1) - Complex(0.5 * std::sqrt(0.5))) <= 1e-13);
  CHECK(std::abs(out.matrix()(0, 0) - Complex(0.5)) <= 1e-13);
  CHECK(von_neumann_entropy(out) ==
        doctest::Approx(oracle::kDephasingPlusEntropy).epsilon(1e-13));
  CHECK_THROWS_AS(dephasing(-0.1), std::invalid_argument);
}

TEST_CASE("reset_channel maps every input to |0><0|") {
  const KrausChannel ch = reset_channel(3);
  const Matrix rho = oracle::random_density(3, 19);
  Matrix want = Matrix::Zero(3, 3);
  want(0, 0) = 1.0;
  CHECK(max_abs(apply(ch, DensityMatrix(rho)).matrix() - want) <= 1e-13);
}

TEST_CASE("apply_extended acts on one side only") {
  const KrausChannel ch = random_channel(2, 2, 23);
  const BipartiteState bell = bell_state();
  const BipartiteState out_a = apply_extended(ch, bell, Side::A);
  // The untouched side keeps its maximally mixed marginal.
  CHECK(max_abs(out_a.marginal_b().matrix() - maximally_mixed(2)) <= 1e-12);
  // Compare against an explicit (ch (x) id) Kraus action.
  Matrix manual = Matrix::Zero(4, 4);
  for (const Matrix& k : ch.kraus()) {
    const Matrix ext = oracle::naive_tensor(k, Matrix::Identity(2, 2));
    manual += ext * bell.matrix() * ext.adjoint();
  }
  CHECK(max_abs(out_a.matrix() - manual) <= 1e-13);

  const BipartiteState out_b = apply_extended(ch, bell, Side::B);
  Matrix manual_b = Matrix::Zero(4, 4);
  for (const Matrix& k : ch.kraus()) {
    const Matrix ext = oracle::naive_tensor(Matrix::Identity(2, 2), k);
    manual_b += ext * bell.matrix() * ext.adjoint();
  }
  CHECK(max_abs(out_b.matrix() - manual_b) <= 1e-13);
  CHECK(max_abs(out_b.marginal_a().matrix() - maximally_mixed(2)) <= 1e-12);

  // Erasure enlarges the acted side; dimensions follow.
  const BipartiteState wide = apply_extended(erasure(2, 0.25), bell, Side::A);
  CHECK(wide.dim_a() == 3);
  CHECK(wide.dim_b() == 2);
}

TEST_CASE("stinespring dilation recovers the channel action") {
  for (const KrausChannel& ch :
       {erasure(2, 0.5), random_channel(2, 3, 29, 4), depolarizing(2, 0.3)}) {
    const StinespringIsometry iso = stinespring(ch);
    CHECK(iso.denv == static_cast<int>(ch.kraus().size()));
    CHECK(max_abs(Matrix(iso.v.adjoint() * iso.v) -
                  Matrix::Identity(ch.din(), ch.din())) <= 1e-12);
    for (int i = 0; i < 20; ++i) {
      const Matrix rho = oracle::random_density(ch.din(), 100 + i);
      const Matrix dilated = iso.v * rho * iso.v.adjoint();
      const Matrix recovered =
          partial_trace(dilated, {iso.dout, iso.denv}, {0});
      CHECK(max_abs(recovered - apply(ch, DensityMatrix(rho)).matrix()) <= 1e-12);
    }
  }
}

TEST_CASE("complementary channel swaps output and environment") {
  const KrausChannel ch = random_channel(2, 3, 37, 4);
  const KrausChannel comp = complementary(ch);
  CHECK(comp.din() == 2);
  CHECK(comp.dout() == 4);  // denv of the original
  // Tracing the other leg of the same dilation gives the complement's action.
  const StinespringIsometry iso = stinespring(ch);
  for (int i = 0; i < 10; ++i) {
    const Matrix rho = oracle::random_density(2, 200 + i);
    const Matrix dilated = iso.v * rho * iso.v.adjoint();
    const Matrix env_leg = partial_trace(dilated, {iso.dout, iso.denv}, {1});
    CHECK(max_abs(env_leg - apply(comp, DensityMatrix(rho)).matrix()) <= 1e-12);
  }
  // Double complement shares pure-input entropies with the original channel.
  for (int i = 0; i < 10; ++i) {
    const Vector k = oracle::random_ket(2, 300 + i);
    const DensityMatrix psi{Matrix(k * k.adjoint())};
    CHECK(von_neumann_entropy(apply(complementary(comp), psi)) ==
          doctest::Approx(von_neumann_entropy(apply(ch, psi))).epsilon(1e-10));
  }
}

TEST_CASE("compose obeys the depolarizing semigroup rule") {
  const double l1 = 0.3, l2 = 0.45;
  const KrausChannel composed = compose(depolarizing(2, l1), depolarizing(2, l2));
  const KrausChannel direct = depolarizing(2, l1 + l2 - l1 * l2);
  for (int i = 0; i < 10; ++i) {
    const DensityMatrix rho(oracle::random_density(2, 400 + i));
    CHECK(max_abs(apply(composed, rho).matrix() - apply(direct, rho).matrix()) <=
          1e-12);
  }
  // Shapes must chain.
  CHECK_THROWS_AS(compose(depolarizing(2, 0.1), erasure(2, 0.1)),
                  std::invalid_argument);
}

TEST_CASE("tensor_product acts factor-wise on product states") {
  const KrausChannel a = dephasing(0.3);
  const KrausChannel b = erasure(2, 0.25);
  const KrausChannel ab = tensor_product(a, b);
  CHECK(ab.din() == 4);
  CHECK(ab.dout() == 6);
  const Matrix ra = oracle::random_density(2, 501);
  const Matrix rb = oracle::random_density(2, 502);
  const Matrix out = apply(ab, DensityMatrix(tensor(ra, rb))).matrix();
  const Matrix want = tensor(apply(a, DensityMatrix(ra)).matrix(),
                             apply(b, DensityMatrix(rb)).matrix());
  CHECK(max_abs(out - want) <= 1e-12);
}

TEST_CASE("random_channel is deterministic and trace preserving") {
  const KrausChannel a = random_channel(2, 2, 77);
  const KrausChannel b = random_channel(2, 2, 77);
  CHECK(a.kraus().size() == b.kraus().size());
  for (std::size_t i = 0; i < a.kraus().size(); ++i) {
    CHECK(max_abs(a.kraus()[i] - b.kraus()[i]) == 0.0);
  }
  const KrausChannel c = random_channel(2, 2, 78);
  CHECK(max_abs(a.kraus()[0] - c.kraus()[0]) > 1e-6);
  CHECK(random_channel(3, 2, 9, 5).kraus().size() == 5);
}

TEST_CASE("weyl_group annihilates traceless operators") {
  const CovariantGroup g2 = weyl_group(2);
  CHECK(g2.unitaries().size() == 4);
  CHECK(g2.annihilation_residual() <= 1e-10);
  const CovariantGroup g3 = weyl_group(3);
  CHECK(g3.unitaries().size() == 9);
  CHECK(g3.annihilation_residual() <= 1e-10);
}

TEST_CASE("twirl preserves trace and weyl-twirl fully mixes") {
  const Matrix rho = oracle::random_density(2, 83);
  const CovariantGroup pair({Matrix::Identity(2, 2), oracle::random_unitary(2, 84)});
  const DensityMatrix averaged = twirl(pair, DensityMatrix(rho));
  CHECK(std::abs(averaged.matrix().trace() - Complex(1.0)) <= 1e-12);
  CHECK(max_abs(twirl(weyl_group(2), DensityMatrix(rho)).matrix() -
                maximally_mixed(2)) <= 1e-12);
}

TEST_CASE("CovariantGroup rejects non-unitary members") {
  CHECK_THROWS_AS(CovariantGroup({Matrix::Identity(2, 2) * 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CovariantGroup({}), std::invalid_argument);
}

TEST_CASE("check_generalized_covariance verdicts") {
  const CovariantGroup g = weyl_group(2);
  CHECK(check_generalized_covariance(depolarizing(2, 0.3), g).covariant);
  CHECK(check_generalized_covariance(dephasing(0.5), g).covariant);
  CHECK(check_generalized_covariance(erasure(2, 0.25), g).covariant);
  CHECK(check_generalized_covariance(identity_channel(2), g).covariant);

  const CovarianceReport bad = check_generalized_covariance(amplitude_damping(0.36), g);
  CHECK_FALSE(bad.covariant);
  CHECK(bad.worst_residual > 1e-3);

  // Only square and one-extra-dimension outputs are supported.
  Matrix embed = Matrix::Zero(4, 2);
  embed(0, 0) = 1.0;
  embed(1, 1) = 1.0;
  const KrausChannel wide(2, 4, {embed});
  CHECK_THROWS_AS(check_generalized_covariance(wide, g), std::invalid_argument);
}
