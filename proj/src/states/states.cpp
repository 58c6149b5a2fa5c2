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

#include "chancap/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "chancap/rng.hpp"

namespace chancap {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double entropy_from_spectrum(const Eigen::VectorXd& eigenvalues, double tol) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    double l = eigenvalues(i);
    if (l < -tol) {
      throw std::invalid_argument(
          "von_neumann_entropy: spectrum has eigenvalue " + std::to_string(l) +
          " below -" + std::to_string(tol));
    }
    if (l < 0.0) l = 0.0;
    if (l > 1.0) l = 1.0;
    if (l < kEigenvalueFloor) continue;
    acc -= l * std::log2(l);
  }
  return acc;
}

void check_angle(double v, const char* name) {
  if (!(v >= 0.0 && v < kTwoPi)) {
    throw std::invalid_argument(std::string("TenParamSpec: ") + name +
                                " must lie in [0, 2pi), got " + std::to_string(v));
  }
}

void check_half_box(double v, const char* name) {
  if (!(v >= 0.0 && v <= 0.5)) {
    throw std::invalid_argument(std::string("TenParamSpec: ") + name +
                                " must lie in [0, 1/2], got " + std::to_string(v));
  }
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix m, double tol) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("DensityMatrix: matrix must be square");
  }
  if (m.rows() < 1 || m.rows() > kMaxDim) {
    throw std::invalid_argument("DensityMatrix: dimension must be in [1, " +
                                std::to_string(kMaxDim) + "]");
  }
  if (!all_finite(m)) {
    throw std::invalid_argument("DensityMatrix: matrix has non-finite entries");
  }
  const double herm_dev = max_abs(m - m.adjoint());
  if (herm_dev > tol) {
    throw std::invalid_argument("DensityMatrix: deviates from Hermitian by " +
                                std::to_string(herm_dev) + " (tolerance " +
                                std::to_string(tol) + ")");
  }
  const double trace_dev = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_dev > tol) {
    throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " +
                                std::to_string(trace_dev) + " (tolerance " +
                                std::to_string(tol) + ")");
  }
  mat_ = (m + m.adjoint()) / 2.0;
}

PureState::PureState(Vector amplitudes, double tol) {
  if (amplitudes.size() < 1 || amplitudes.size() > kMaxDim * kMaxDim) {
    throw std::invalid_argument("PureState: dimension out of range");
  }
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
    if (!std::isfinite(amplitudes(i).real()) || !std::isfinite(amplitudes(i).imag())) {
      throw std::invalid_argument("PureState: non-finite amplitude");
    }
  }
  const double norm_dev = std::abs(amplitudes.norm() - 1.0);
  if (norm_dev > tol) {
    throw std::invalid_argument("PureState: norm deviates from 1 by " +
                                std::to_string(norm_dev) + " (tolerance " +
                                std::to_string(tol) + ")");
  }
  amp_ = std::move(amplitudes);
}

DensityMatrix PureState::density() const {
  return DensityMatrix(amp_ * amp_.adjoint());
}

BipartiteState::BipartiteState(DensityMatrix state, int dim_a, int dim_b)
    : state_(std::move(state)), dim_a_(dim_a), dim_b_(dim_b) {
  if (dim_a_ < 1 || dim_b_ < 1 || dim_a_ > kMaxDim || dim_b_ > kMaxDim) {
    throw std::invalid_argument("BipartiteState: factor dimensions out of range");
  }
  if (static_cast<long long>(dim_a_) * dim_b_ != state_.dim()) {
    throw std::invalid_argument(
        "BipartiteState: dim_a * dim_b = " + std::to_string(dim_a_ * dim_b_) +
        " does not match state dimension " + std::to_string(state_.dim()));
  }
}

DensityMatrix BipartiteState::marginal_a() const {
  return DensityMatrix(partial_trace(state_.matrix(), {dim_a_, dim_b_}, {0}));
}

DensityMatrix BipartiteState::marginal_b() const {
  return DensityMatrix(partial_trace(state_.matrix(), {dim_a_, dim_b_}, {1}));
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("binary_entropy: p must lie in [0, 1], got " +
                                std::to_string(p));
  }
  if (p < kEigenvalueFloor || 1.0 - p < kEigenvalueFloor) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const HermitianEigen dec = eigh(rho.matrix());
  return entropy_from_spectrum(dec.eigenvalues, kStateTol);
}

double mutual_information(const BipartiteState& rho) {
  const double s_a = von_neumann_entropy(rho.marginal_a());
  const double s_b = von_neumann_entropy(rho.marginal_b());
  const double s_ab = von_neumann_entropy(rho.state());
  const double mi = s_a + s_b - s_ab;
  return mi < 0.0 ? 0.0 : mi;
}

double conditional_mutual_information(const DensityMatrix& rho, int dim_a,
                                      int dim_b, int dim_c) {
  if (static_cast<long long>(dim_a) * dim_b * dim_c != rho.dim()) {
    throw std::invalid_argument(
        "conditional_mutual_information: dims do not factor the state");
  }
  const std::vector<int> dims{dim_a, dim_b, dim_c};
  const double s_ac =
      von_neumann_entropy(DensityMatrix(partial_trace(rho.matrix(), dims, {0, 2})));
  const double s_bc =
      von_neumann_entropy(DensityMatrix(partial_trace(rho.matrix(), dims, {1, 2})));
  const double s_abc = von_neumann_entropy(rho);
  const double s_c =
      von_neumann_entropy(DensityMatrix(partial_trace(rho.matrix(), dims, {2})));
  return s_ac + s_bc - s_abc - s_c;
}

PureState purify(const DensityMatrix& rho) {
  const int d = rho.dim();
  const HermitianEigen dec = eigh(rho.matrix());
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) {
    double l = dec.eigenvalues(i);
    if (l < -kStateTol) {
      throw std::invalid_argument("purify: state has eigenvalue " +
                                  std::to_string(l) + " below -" +
                                  std::to_string(kStateTol));
    }
    if (l <= 0.0) continue;
    const double w = std::sqrt(l);
    for (int s = 0; s < d; ++s) {
      psi(static_cast<Eigen::Index>(s) * d + i) += w * dec.eigenvectors(s, i);
    }
  }
  psi /= psi.norm();
  return PureState(psi);
}

namespace {

// Assembles the ten-parameter matrix after validating every range bound.
Matrix ten_param_matrix(const TenParamSpec& spec) {
  check_angle(spec.theta, "theta");
  check_angle(spec.alpha, "alpha");
  check_angle(spec.beta, "beta");
  check_half_box(spec.c1, "c1");
  check_half_box(spec.c3, "c3");
  check_half_box(spec.r1, "r1");
  check_half_box(spec.r2, "r2");
  for (auto [v, name] : {std::pair{spec.p1, "p1"}, {spec.p2, "p2"}}) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument(std::string("TenParamSpec: ") + name +
                                  " must lie in [0, 1], got " + std::to_string(v));
    }
  }
  const double lo = std::max(0.0, spec.p1 + spec.p2 - 1.0);
  const double hi = std::min(spec.p1, spec.p2);
  if (!(spec.a >= lo - 1e-15 && spec.a <= hi + 1e-15)) {
    throw std::invalid_argument(
        "TenParamSpec: a must lie in [max(0, p1+p2-1), min(p1, p2)] = [" +
        std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
        std::to_string(spec.a));
  }

  const Complex ea = std::polar(1.0, spec.alpha);
  const Complex eb = std::polar(1.0, spec.beta);
  const Complex et = std::polar(1.0, spec.theta);
  const double a = spec.a, p1 = spec.p1, p2 = spec.p2;
  const double r1 = spec.r1, r2 = spec.r2, c1 = spec.c1, c3 = spec.c3;

  // The matrix in basis |00>, |01>, |10>, |11> where the first slot carries
  // marginal diag(p2, 1-p2) and the second diag(p1, 1-p1).
  Matrix m(4, 4);
  m << Complex(a), c3 * std::conj(ea), c1 * std::conj(eb), Complex(r1),
      c3 * ea, Complex(p2 - a), r2 * et, -c1 * std::conj(eb),
      c1 * eb, r2 * std::conj(et), Complex(p1 - a), -c3 * std::conj(ea),
      Complex(r1), -c1 * eb, -c3 * ea, Complex(1.0 + a - p1 - p2);

  // Reorder so subsystem A is the factor with marginal diag(p1, 1-p1): that
  // factor plays the S role everywhere downstream.
  return permute_systems(m, {2, 2}, {1, 0});
}

}  // namespace

std::optional<BipartiteState> try_ten_param_state(const TenParamSpec& spec) {
  const Matrix m = ten_param_matrix(spec);
  const HermitianEigen dec = eigh(m);
  if (dec.eigenvalues.minCoeff() < -1e-10) return std::nullopt;
  return BipartiteState(DensityMatrix(m), 2, 2);
}

double ten_param_min_eigenvalue(const TenParamSpec& spec) {
  return eigh(ten_param_matrix(spec)).eigenvalues.minCoeff();
}

BipartiteState ten_param_state(const TenParamSpec& spec) {
  auto state = try_ten_param_state(spec);
  if (!state) {
    throw std::domain_error(
        "ten_param_state: assembled matrix is not positive semidefinite "
        "(min eigenvalue < -1e-10); resample the parameters");
  }
  return *state;
}

BipartiteState bell_diagonal(const std::array<double, 4>& probs) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("bell_diagonal: probabilities must lie in [0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kStateTol) {
    throw std::invalid_argument("bell_diagonal: probabilities sum to " +
                                std::to_string(sum) + ", expected 1");
  }
  const double s = 1.0 / std::sqrt(2.0);
  Vector phi_p(4), phi_m(4), psi_p(4), psi_m(4);
  phi_p << s, 0, 0, s;
  phi_m << s, 0, 0, -s;
  psi_p << 0, s, s, 0;
  psi_m << 0, s, -s, 0;
  Matrix m = probs[0] * (phi_p * phi_p.adjoint()) +
             probs[1] * (phi_m * phi_m.adjoint()) +
             probs[2] * (psi_p * psi_p.adjoint()) +
             probs[3] * (psi_m * psi_m.adjoint());
  return BipartiteState(DensityMatrix(m), 2, 2);
}

DensityMatrix random_state(int dim, int purity_env, std::uint64_t seed) {
  if (dim < 1 || dim > kMaxDim) {
    throw std::invalid_argument("random_state: dim must lie in [1, " +
                                std::to_string(kMaxDim) + "]");
  }
  if (purity_env < 1 || purity_env > kMaxDim) {
    throw std::invalid_argument("random_state: purity_env must lie in [1, " +
                                std::to_string(kMaxDim) + "]");
  }
  Rng rng(seed);
  Vector psi(static_cast<Eigen::Index>(dim) * purity_env);
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    psi(i) = Complex(rng.normal(), rng.normal());
  }
  psi /= psi.norm();
  const Matrix full = psi * psi.adjoint();
  return DensityMatrix(partial_trace(full, {dim, purity_env}, {0}));
}

}  // namespace chancap
