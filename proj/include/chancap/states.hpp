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

#include <array>
#include <cstdint>
#include <optional>

#include "chancap/densemath.hpp"

namespace chancap {

// Validation tolerances for state inputs.
inline constexpr double kStateTol = 1e-8;
// Eigenvalues below this are treated as exact zeros inside entropies.
inline constexpr double kEigenvalueFloor = 1e-12;

// Density operator. Construction validates squareness, finiteness, Hermiticity
// (then symmetrizes) and unit trace; positivity is enforced where the spectrum
// is actually computed (entropies, purification) so hot paths do not pay for a
// second factorization.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m, double tol = kStateTol);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }

 private:
  Matrix mat_;
};

class PureState {
 public:
  explicit PureState(Vector amplitudes, double tol = kStateTol);

  int dim() const { return static_cast<int>(amp_.size()); }
  const Vector& amplitudes() const { return amp_; }
  DensityMatrix density() const;

 private:
  Vector amp_;
};

// Bipartite density operator with a fixed A (x) B factor split.
class BipartiteState {
 public:
  BipartiteState(DensityMatrix state, int dim_a, int dim_b);

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  const DensityMatrix& state() const { return state_; }
  const Matrix& matrix() const { return state_.matrix(); }

  DensityMatrix marginal_a() const;
  DensityMatrix marginal_b() const;

 private:
  DensityMatrix state_;
  int dim_a_;
  int dim_b_;
};

// Ten-parameter two-qubit state family. Angles live on [0, 2pi); c1, c3, r1,
// r2 on [0, 1/2]; p1, p2, a on [0, 1] with max(0, p1+p2-1) <= a <= min(p1, p2).
struct TenParamSpec {
  double theta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double c1 = 0.0;
  double c3 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double p1 = 0.5;
  double p2 = 0.5;
  double a = 0.25;
};

// -p log2 p - (1-p) log2 (1-p); endpoints give 0.
double binary_entropy(double p);

// Von Neumann entropy in bits. Eigenvalues are clipped to [0, 1] and values
// below kEigenvalueFloor are dropped; a spectrum dipping below -kStateTol is a
// validation error.
double von_neumann_entropy(const DensityMatrix& rho);

// I(A:B) = S(A) + S(B) - S(AB), clamped at 0 from below.
double mutual_information(const BipartiteState& rho);

// I(A:B|C) = S(AC) + S(BC) - S(ABC) - S(C) on an A (x) B (x) C state.
double conditional_mutual_information(const DensityMatrix& rho, int dim_a,
                                      int dim_b, int dim_c);

// Standard purification on a dim^2 space: |psi> = sum_i sqrt(l_i) |v_i>|i>,
// eigenvalues ascending. Tracing out the second factor recovers rho.
PureState purify(const DensityMatrix& rho);

// Assembles the ten-parameter two-qubit matrix. Returns nothing when the
// assembly fails positivity (min eigenvalue < -1e-10); callers resample.
// The S factor (subsystem A) carries marginal diag(p1, 1-p1) and the W factor
// (subsystem B) diag(p2, 1-p2).
std::optional<BipartiteState> try_ten_param_state(const TenParamSpec& spec);

// Same as try_ten_param_state but a failed assembly throws std::domain_error.
BipartiteState ten_param_state(const TenParamSpec& spec);

// Smallest eigenvalue of the assembled ten-parameter matrix. Negative values
// measure how far the point sits outside the positive cone, which lets
// optimizers grade rejected assemblies instead of treating them as a cliff.
double ten_param_min_eigenvalue(const TenParamSpec& spec);

// Mixture of the four Bell states |Phi+>, |Phi->, |Psi+>, |Psi-> with the
// given probability weights.
BipartiteState bell_diagonal(const std::array<double, 4>& probs);

// Random mixed state: partial trace over a purity_env-dimensional environment
// of a Haar-like random pure state on dim * purity_env. purity_env = 1 draws
// random pure states.
DensityMatrix random_state(int dim, int purity_env, std::uint64_t seed);

}  // namespace chancap
