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
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "chancap/channels.hpp"

namespace chancap {

// Probability-weighted list of encoding operations sharing one input/output
// shape. Weights must be non-negative and sum to 1 within 1e-8.
class EncodingEnsemble {
 public:
  explicit EncodingEnsemble(std::vector<std::pair<double, KrausChannel>> entries,
                            double tol = kStateTol);

  const std::vector<std::pair<double, KrausChannel>>& entries() const {
    return entries_;
  }
  int din() const { return entries_.front().second.din(); }
  int dout() const { return entries_.front().second.dout(); }

 private:
  std::vector<std::pair<double, KrausChannel>> entries_;
};

// Single-operation ensemble holding the identity on d.
EncodingEnsemble identity_encoding(int d);
// Uniform ensemble over the d^2 shift-and-phase unitaries.
EncodingEnsemble weyl_encoding(int d);
// Single-operation ensemble holding reset-to-|0>.
EncodingEnsemble reset_encoding(int d);

// S(phi[rho]) - S(rho).
double entropy_gain(const KrausChannel& ch, const DensityMatrix& rho);

// S((phi (x) I)[rho_ab]) - S(rho_ab), the channel acting on the chosen factor.
double extended_entropy_gain(const KrausChannel& ch, const BipartiteState& rho,
                             Side side = Side::A);

// chi = S(sum_x p_x rho_x) - sum_x p_x S(rho_x), clamped at 0 from below.
double holevo(const std::vector<std::pair<double, DensityMatrix>>& ensemble);

// F[rho_SW, (P_X, eps)] = S(rho_B) - sum_x P_X(x) E_{Phi_x (x) I}[rho_SW],
// where rho_B = sum_x P_X(x) (Psi o eps_x)[rho_S] and Phi_x is the
// complementary channel of Psi o eps_x. The channel side of rho_SW is A.
double F_functional(const KrausChannel& ch, const BipartiteState& rho_sw,
                    const EncodingEnsemble& enc);

// Covariant-channel inner objective: S(Psi(I/d)) minus the extended entropy
// gain of the complement of Psi o eps_op on rho_SW.
double chi_covariant_inner(const KrausChannel& ch, const KrausChannel& eps_op,
                           const BipartiteState& rho_sw);

// Erasure-channel closed forms.
struct QecClosedForms {
  double chi_l_i = 0.0;  // C_E * (1 - y / (2 log2 d))
  double c_e = 0.0;      // (1 - eps) * 2 log2 d
  double c1 = 0.0;       // C_E / 2
};
QecClosedForms qec_closed_forms(double eps, int d, double y);

// Erasure-channel constrained objective at a concrete witness state:
// (1-eps) * (log2 d - E_{eps_op^c (x) I}[rho_SW]).
double qec_chi_integrand(double eps, int d, const KrausChannel& eps_op,
                         const BipartiteState& rho_sw);

// Qubit depolarizing closed forms.
struct DepolarizingClosedForms {
  double c_e = 0.0;
  double c = 0.0;
  // Reference line C_E * (1 - q/2).
  double chi_star(double q) const { return c_e * (1.0 - q / 2.0); }
};
DepolarizingClosedForms depolarizing_closed_forms(double lam);

// Parametric two-qubit witness-state families searched by the optimizer.
enum class StateFamily {
  kBellDiagonal,  // 4 box coords -> -log -> probability simplex
  kTenParam,      // 10 box coords -> TenParamSpec (a mapped into its interval)
};

int family_param_count(StateFamily family);
std::vector<std::pair<double, double>> family_box(StateFamily family);

// Maps box parameters to a state; nothing when the assembly fails positivity.
std::optional<BipartiteState> family_state(StateFamily family,
                                           const std::vector<double>& params);

// Constrained-functional identifiers usable in clauses.
enum class ConstraintQuantity { kMutualInformation };
enum class Comparator { kGreaterEqual, kEqual };

struct ConstraintClause {
  ConstraintQuantity quantity = ConstraintQuantity::kMutualInformation;
  Comparator comparator = Comparator::kGreaterEqual;
  double threshold = 0.0;
  double tolerance = 0.02;  // feasibility band half-width
};

struct ConstraintSpec {
  std::vector<ConstraintClause> clauses;
  // When present, the W marginal must match this target within
  // marginal_tolerance (max-norm).
  std::optional<Matrix> fixed_marginal_w;
  double marginal_tolerance = 1e-3;
};

struct CapacityResult {
  double value = 0.0;
  std::vector<double> argmax_params;
  // Slack per clause (>= -tolerance when feasible); the fixed-marginal
  // requirement, when present, contributes a final entry.
  std::vector<double> constraint_slacks;
  long long samples_evaluated = 0;
  std::uint64_t seed = 0;
  bool feasible = false;
};

using StateObjective = std::function<double(const BipartiteState&)>;

// Uniform box sampling (budget draws, per-index derived seeds, positivity
// rejections resampled in place) followed by a 200-iteration derivative-free
// simplex refinement (reflection 1.0, contraction 0.5) of the feasibility-
// penalized objective (penalty 1e3 * violation). Refinement starts from the
// best feasible sample, or from the best penalized sample when the band was
// never hit; the reported point is the best feasible point seen anywhere.
CapacityResult optimize_constrained(const StateObjective& objective,
                                    StateFamily family,
                                    const ConstraintSpec& cons,
                                    long long budget, std::uint64_t seed);

struct ScanRecord {
  double q = 0.0;  // mutual information of the sampled witness state
  double f = 0.0;  // chi_covariant_inner with identity encoding
};

// n family samples (per-index seeds, order-independent, parallel-safe).
std::vector<ScanRecord> mc_scan(const KrausChannel& ch, StateFamily family,
                                long long n, std::uint64_t seed);

// Bin summary of a scan: per q-bin maximum of F against the reference line.
struct ScanBin {
  double q_bin = 0.0;   // bin center
  long long count = 0;  // samples falling in the bin
  double q_at_max = 0.0;
  double f_max = 0.0;
  double chi_star = 0.0;   // reference line at q_at_max
  double deviation = 0.0;  // f_max - chi_star
};
std::vector<ScanBin> bin_scan(const std::vector<ScanRecord>& records,
                              double bin_width,
                              const std::function<double(double)>& reference);

// Eavesdropper information bound: maximizes F over the ten-parameter family
// under `cons`, which must carry at least one equality clause and a fixed W
// marginal. Qubit channels only.
CapacityResult eve_bound(const KrausChannel& ch, const EncodingEnsemble& enc,
                         const ConstraintSpec& cons, long long budget,
                         std::uint64_t seed);

}  // namespace chancap
