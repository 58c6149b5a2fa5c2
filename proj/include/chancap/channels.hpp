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

#pragma once

#include <cstdint>
#include <vector>

#include "chancap/states.hpp"

namespace chancap {

// Completely positive trace-preserving map in Kraus form. Construction
// validates shapes and the completeness relation sum_i K_i^dagger K_i = I
// to within 1e-8 (max-norm).
class KrausChannel {
 public:
  KrausChannel(int din, int dout, std::vector<Matrix> kraus,
               double tol = kStateTol);

  int din() const { return din_; }
  int dout() const { return dout_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

 private:
  int din_;
  int dout_;
  std::vector<Matrix> kraus_;
};

// V = sum_i K_i (x) |i>_env, an isometry from din to dout * denv with the
// output factor first.
struct StinespringIsometry {
  Matrix v;
  int din = 0;
  int dout = 0;
  int denv = 0;
};

// Which factor of a bipartite state a channel acts on.
enum class Side { A, B };

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

// (ch (x) I) or (I (x) ch) on a bipartite state.
BipartiteState apply_extended(const KrausChannel& ch, const BipartiteState& rho,
                              Side side = Side::A);

StinespringIsometry stinespring(const KrausChannel& ch);

// Complementary channel read off the canonical dilation: output and
// environment legs swap roles, so the result maps din to denv = #Kraus.
KrausChannel complementary(const KrausChannel& ch);

// second o first (first acts first).
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);

// a (x) b acting on din_a * din_b.
KrausChannel tensor_product(const KrausChannel& a, const KrausChannel& b);

KrausChannel identity_channel(int d);

// Erasure channel: rho -> (1-eps) rho (+) eps |e><e| with the flag state
// appended as output index d (dout = d + 1).
KrausChannel erasure(int d, double eps);

// Depolarizing channel rho -> lam I/d + (1-lam) rho, in generalized-Pauli
// Kraus form. Valid for lam in [0, d^2/(d^2-1)]; for qubits that allows the
// full [0, 4/3] range.
KrausChannel depolarizing(int d, double lam);

// Qubit dephasing: diagonal preserved, off-diagonal entries scaled by
// sqrt(1-gamma).
KrausChannel dephasing(double gamma);

// rho -> |0><0| Tr(rho).
KrausChannel reset_channel(int d);

// Random channel from a seeded Haar-like Stinespring isometry with the given
// environment dimension (default 2).
KrausChannel random_channel(int din, int dout, std::uint64_t seed, int denv = 2);

// Finite list of unitaries used for twirling / covariance checks.
// Construction validates unitarity of every member (1e-8); the annihilation
// property is a separate query because arbitrary lists are allowed.
class CovariantGroup {
 public:
  explicit CovariantGroup(std::vector<Matrix> unitaries, double tol = kStateTol);

  int dim() const { return static_cast<int>(unitaries_.front().rows()); }
  const std::vector<Matrix>& unitaries() const { return unitaries_; }

  // Max-norm residual of (1/|G|) sum_x U_x M U_x^dagger over a spanning set
  // of traceless matrices; 0 means the group averages every traceless
  // operator away (the defining property of a generalized-covariant set).
  double annihilation_residual() const;

 private:
  std::vector<Matrix> unitaries_;
};

// d^2 shift-and-phase (generalized Pauli) unitaries X^a Z^b.
CovariantGroup weyl_group(int d);

// (1/|G|) sum_x U_x rho U_x^dagger.
DensityMatrix twirl(const CovariantGroup& group, const DensityMatrix& rho);

struct CovarianceReport {
  bool covariant = false;
  // Worst max-norm mismatch between Psi(U rho U^dagger) and V Psi(rho)
  // V^dagger over the probe basis, maximized over group members.
  double worst_residual = 0.0;
};

// Hunts for output unitaries V_U with Psi(U rho U^dagger) = V_U Psi(rho)
// V_U^dagger for every group member. Supports square channels and the
// erasure-style dout = din + 1 block shape; anything else is rejected.
// Verdict threshold: residual <= 1e-6.
CovarianceReport check_generalized_covariance(const KrausChannel& ch,
                                              const CovariantGroup& group);

}  // namespace chancap
