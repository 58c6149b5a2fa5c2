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

#include "chancap/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "chancap/rng.hpp"

namespace chancap {

namespace {

constexpr double kCovarianceThreshold = 1e-6;
constexpr double kPi = 3.1415926535897932384626433832795;

Matrix apply_raw(const KrausChannel& ch, const Matrix& rho) {
  Matrix out = Matrix::Zero(ch.dout(), ch.dout());
  for (const Matrix& k : ch.kraus()) {
    out.noalias() += k * rho * k.adjoint();
  }
  return out;
}

// Hermitian operator basis of a d-dimensional system: diagonal units plus
// symmetric / antisymmetric combinations of off-diagonal units.
std::vector<Matrix> hermitian_basis(int d) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    Matrix e = Matrix::Zero(d, d);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Matrix s = Matrix::Zero(d, d);
      s(i, j) = 1.0;
      s(j, i) = 1.0;
      basis.push_back(s);
      Matrix t = Matrix::Zero(d, d);
      t(i, j) = Complex(0.0, 1.0);
      t(j, i) = Complex(0.0, -1.0);
      basis.push_back(t);
    }
  }
  return basis;
}

// Nearest unitary in Frobenius norm (polar factor via SVD).
Matrix polar_unitary(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

KrausChannel::KrausChannel(int din, int dout, std::vector<Matrix> kraus,
                           double tol)
    : din_(din), dout_(dout), kraus_(std::move(kraus)) {
  if (din_ < 1 || din_ > kMaxDim || dout_ < 1 || dout_ > kMaxDim) {
    throw std::invalid_argument("KrausChannel: dimensions must lie in [1, " +
                                std::to_string(kMaxDim) + "]");
  }
  if (kraus_.empty()) {
    throw std::invalid_argument("KrausChannel: at least one Kraus operator required");
  }
  for (const Matrix& k : kraus_) {
    if (k.rows() != dout_ || k.cols() != din_) {
      throw std::invalid_argument(
          "KrausChannel: Kraus operator shape " + std::to_string(k.rows()) + "x" +
          std::to_string(k.cols()) + " does not match dout x din = " +
          std::to_string(dout_) + "x" + std::to_string(din_));
    }
    if (!all_finite(k)) {
      throw std::invalid_argument("KrausChannel: Kraus operator has non-finite entries");
    }
  }
  Matrix acc = Matrix::Zero(din_, din_);
  for (const Matrix& k : kraus_) acc.noalias() += k.adjoint() * k;
  const double dev = max_abs(acc - Matrix::Identity(din_, din_));
  if (dev > tol) {
    throw std::invalid_argument(
        "KrausChannel: completeness relation violated by " + std::to_string(dev) +
        " (tolerance " + std::to_string(tol) + ")");
  }
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.din()) {
    throw std::invalid_argument("apply: state dimension " + std::to_string(rho.dim()) +
                                " does not match channel input " +
                                std::to_string(ch.din()));
  }
  return DensityMatrix(apply_raw(ch, rho.matrix()));
}

BipartiteState apply_extended(const KrausChannel& ch, const BipartiteState& rho,
                              Side side) {
  const int acted = side == Side::A ? rho.dim_a() : rho.dim_b();
  if (acted != ch.din()) {
    throw std::invalid_argument("apply_extended: acted factor dimension " +
                                std::to_string(acted) + " does not match channel input " +
                                std::to_string(ch.din()));
  }
  const int passive = side == Side::A ? rho.dim_b() : rho.dim_a();
  const Matrix id = Matrix::Identity(passive, passive);
  Matrix out = Matrix::Zero(ch.dout() * passive, ch.dout() * passive);
  for (const Matrix& k : ch.kraus()) {
    const Matrix kk = side == Side::A ? tensor(k, id) : tensor(id, k);
    out.noalias() += kk * rho.matrix() * kk.adjoint();
  }
  const int dim_a = side == Side::A ? ch.dout() : rho.dim_a();
  const int dim_b = side == Side::A ? rho.dim_b() : ch.dout();
  return BipartiteState(DensityMatrix(out), dim_a, dim_b);
}

StinespringIsometry stinespring(const KrausChannel& ch) {
  const int denv = static_cast<int>(ch.kraus().size());
  Matrix v = Matrix::Zero(static_cast<Eigen::Index>(ch.dout()) * denv, ch.din());
  for (int e = 0; e < denv; ++e) {
    for (int b = 0; b < ch.dout(); ++b) {
      for (int s = 0; s < ch.din(); ++s) {
        v(static_cast<Eigen::Index>(b) * denv + e, s) = ch.kraus()[e](b, s);
      }
    }
  }
  return StinespringIsometry{std::move(v), ch.din(), ch.dout(), denv};
}

KrausChannel complementary(const KrausChannel& ch) {
  const int denv = static_cast<int>(ch.kraus().size());
  std::vector<Matrix> comp;
  comp.reserve(static_cast<std::size_t>(ch.dout()));
  for (int b = 0; b < ch.dout(); ++b) {
    Matrix l(denv, ch.din());
    for (int e = 0; e < denv; ++e) {
      l.row(e) = ch.kraus()[e].row(b);
    }
    comp.push_back(std::move(l));
  }
  return KrausChannel(ch.din(), denv, std::move(comp));
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (first.dout() != second.din()) {
    throw std::invalid_argument("compose: inner dimensions mismatch (" +
                                std::to_string(first.dout()) + " vs " +
                                std::to_string(second.din()) + ")");
  }
  std::vector<Matrix> kraus;
  kraus.reserve(first.kraus().size() * second.kraus().size());
  for (const Matrix& k2 : second.kraus()) {
    for (const Matrix& k1 : first.kraus()) {
      kraus.push_back(k2 * k1);
    }
  }
  return KrausChannel(first.din(), second.dout(), std::move(kraus));
}

KrausChannel tensor_product(const KrausChannel& a, const KrausChannel& b) {
  std::vector<Matrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const Matrix& ka : a.kraus()) {
    for (const Matrix& kb : b.kraus()) {
      kraus.push_back(tensor(ka, kb));
    }
  }
  return KrausChannel(a.din() * b.din(), a.dout() * b.dout(), std::move(kraus));
}

KrausChannel identity_channel(int d) {
  return KrausChannel(d, d, {Matrix::Identity(d, d)});
}

KrausChannel erasure(int d, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("erasure: eps must lie in [0, 1], got " +
                                std::to_string(eps));
  }
  if (d < 1 || d + 1 > kMaxDim) {
    throw std::invalid_argument("erasure: d out of range");
  }
  std::vector<Matrix> kraus;
  Matrix keep = Matrix::Zero(d + 1, d);
  keep.topRows(d) = std::sqrt(1.0 - eps) * Matrix::Identity(d, d);
  kraus.push_back(std::move(keep));
  for (int j = 0; j < d; ++j) {
    Matrix flag = Matrix::Zero(d + 1, d);
    flag(d, j) = std::sqrt(eps);
    kraus.push_back(std::move(flag));
  }
  return KrausChannel(d, d + 1, std::move(kraus));
}

KrausChannel depolarizing(int d, double lam) {
  const double d2 = static_cast<double>(d) * d;
  const double lam_max = d2 / (d2 - 1.0);
  if (!(lam >= 0.0 && lam <= lam_max + 1e-12)) {
    throw std::invalid_argument("depolarizing: lam must lie in [0, " +
                                std::to_string(lam_max) + "], got " +
                                std::to_string(lam));
  }
  const CovariantGroup weyl = weyl_group(d);
  std::vector<Matrix> kraus;
  kraus.reserve(weyl.unitaries().size());
  const double w_id = 1.0 - lam + lam / d2;
  const double w_rest = lam / d2;
  for (std::size_t x = 0; x < weyl.unitaries().size(); ++x) {
    const double w = x == 0 ? w_id : w_rest;
    if (w <= 0.0) continue;
    kraus.push_back(std::sqrt(w) * weyl.unitaries()[x]);
  }
  return KrausChannel(d, d, std::move(kraus));
}

KrausChannel dephasing(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("dephasing: gamma must lie in [0, 1], got " +
                                std::to_string(gamma));
  }
  // Phase-flip form: off-diagonals shrink by 1 - 2p = sqrt(1 - gamma).
  const double p = (1.0 - std::sqrt(1.0 - gamma)) / 2.0;
  Matrix z(2, 2);
  z << 1.0, 0.0, 0.0, -1.0;
  std::vector<Matrix> kraus;
  kraus.push_back(std::sqrt(1.0 - p) * Matrix::Identity(2, 2));
  if (p > 0.0) kraus.push_back(std::sqrt(p) * z);
  return KrausChannel(2, 2, std::move(kraus));
}

KrausChannel reset_channel(int d) {
  std::vector<Matrix> kraus;
  for (int j = 0; j < d; ++j) {
    Matrix k = Matrix::Zero(d, d);
    k(0, j) = 1.0;
    kraus.push_back(std::move(k));
  }
  return KrausChannel(d, d, std::move(kraus));
}

KrausChannel random_channel(int din, int dout, std::uint64_t seed, int denv) {
  if (din < 1 || dout < 1 || denv < 1 || din > kMaxDim || dout > kMaxDim) {
    throw std::invalid_argument("random_channel: dimensions out of range");
  }
  if (static_cast<long long>(dout) * denv < din) {
    throw std::invalid_argument(
        "random_channel: dout * denv must be >= din for an isometry to exist");
  }
  Rng rng(seed);
  Matrix g(static_cast<Eigen::Index>(dout) * denv, din);
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      g(i, j) = Complex(rng.normal(), rng.normal());
    }
  }
  // Orthonormalize the columns: the Q factor restricted to din columns is a
  // Haar-like isometry.
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix v = qr.householderQ() * Matrix::Identity(g.rows(), din);
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(denv));
  for (int e = 0; e < denv; ++e) {
    Matrix k(dout, din);
    for (int b = 0; b < dout; ++b) {
      k.row(b) = v.row(static_cast<Eigen::Index>(b) * denv + e);
    }
    kraus.push_back(std::move(k));
  }
  return KrausChannel(din, dout, std::move(kraus));
}

CovariantGroup::CovariantGroup(std::vector<Matrix> unitaries, double tol)
    : unitaries_(std::move(unitaries)) {
  if (unitaries_.empty()) {
    throw std::invalid_argument("CovariantGroup: at least one unitary required");
  }
  const Eigen::Index d = unitaries_.front().rows();
  if (d < 1 || d > kMaxDim) {
    throw std::invalid_argument("CovariantGroup: dimension out of range");
  }
  for (const Matrix& u : unitaries_) {
    if (u.rows() != d || u.cols() != d) {
      throw std::invalid_argument("CovariantGroup: members must share one square shape");
    }
    const double dev = max_abs(u.adjoint() * u - Matrix::Identity(d, d));
    if (dev > tol) {
      throw std::invalid_argument("CovariantGroup: member deviates from unitary by " +
                                  std::to_string(dev) + " (tolerance " +
                                  std::to_string(tol) + ")");
    }
  }
}

double CovariantGroup::annihilation_residual() const {
  const int d = dim();
  double worst = 0.0;
  for (const Matrix& m : hermitian_basis(d)) {
    const Matrix traceless = m - (m.trace() / static_cast<double>(d)) *
                                     Matrix::Identity(d, d);
    Matrix acc = Matrix::Zero(d, d);
    for (const Matrix& u : unitaries_) {
      acc.noalias() += u * traceless * u.adjoint();
    }
    acc /= static_cast<double>(unitaries_.size());
    worst = std::max(worst, max_abs(acc));
  }
  return worst;
}

CovariantGroup weyl_group(int d) {
  if (d < 1 || d > kMaxDim) {
    throw std::invalid_argument("weyl_group: d out of range");
  }
  Matrix shift = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) shift((j + 1) % d, j) = 1.0;
  Matrix clock = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    clock(j, j) = std::polar(1.0, 2.0 * kPi * j / d);
  }
  std::vector<Matrix> unitaries;
  unitaries.reserve(static_cast<std::size_t>(d) * d);
  Matrix xa = Matrix::Identity(d, d);
  for (int a = 0; a < d; ++a) {
    Matrix xazb = xa;
    for (int b = 0; b < d; ++b) {
      unitaries.push_back(xazb);
      xazb = xazb * clock;
    }
    xa = shift * xa;
  }
  return CovariantGroup(std::move(unitaries));
}

DensityMatrix twirl(const CovariantGroup& group, const DensityMatrix& rho) {
  if (group.dim() != rho.dim()) {
    throw std::invalid_argument("twirl: group and state dimensions mismatch");
  }
  Matrix acc = Matrix::Zero(rho.dim(), rho.dim());
  for (const Matrix& u : group.unitaries()) {
    acc.noalias() += u * rho.matrix() * u.adjoint();
  }
  return DensityMatrix(acc / static_cast<double>(group.unitaries().size()));
}

CovarianceReport check_generalized_covariance(const KrausChannel& ch,
                                              const CovariantGroup& group) {
  if (group.dim() != ch.din()) {
    throw std::invalid_argument(
        "check_generalized_covariance: group dimension does not match channel input");
  }
  if (ch.dout() != ch.din() && ch.dout() != ch.din() + 1) {
    throw std::invalid_argument(
        "check_generalized_covariance: only square channels and erasure-style "
        "dout = din + 1 outputs are supported");
  }

  const int din = ch.din();
  const int dout = ch.dout();
  const std::vector<Matrix> probes = hermitian_basis(din);

  double worst = 0.0;
  for (const Matrix& u : group.unitaries()) {
    // Probe images before and after conjugating the input by U.
    std::vector<Matrix> a_imgs, b_imgs;
    a_imgs.reserve(probes.size());
    b_imgs.reserve(probes.size());
    for (const Matrix& m : probes) {
      a_imgs.push_back(apply_raw(ch, u * m * u.adjoint()));
      b_imgs.push_back(apply_raw(ch, m));
    }

    // Stack the intertwiner equations A_k V - V B_k = 0 as a linear system in
    // vec(V) (column-major: vec(AV) = (I (x) A) vec V, vec(VB) = (B^T (x) I) vec V)
    // and take the right singular vector of least singular value.
    const Eigen::Index n2 = static_cast<Eigen::Index>(dout) * dout;
    Matrix stacked(static_cast<Eigen::Index>(probes.size()) * n2, n2);
    const Matrix id_out = Matrix::Identity(dout, dout);
    for (std::size_t k = 0; k < probes.size(); ++k) {
      stacked.middleRows(static_cast<Eigen::Index>(k) * n2, n2) =
          tensor(id_out, a_imgs[k]) - tensor(b_imgs[k].transpose(), id_out);
    }
    Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();

    // Intertwiner solutions live in the (near-)null space, which can have
    // dimension > 1 (block channels such as erasure). A single basis vector may
    // sit entirely inside one block and polar-complete to a non-intertwiner, so
    // seed from the uniform sum of all null directions instead.
    const double null_tol = std::max(1e-8 * sv(0), 1e-10);
    std::vector<Eigen::Index> null_cols;
    for (Eigen::Index c = n2 - 1; c >= 0; --c) {
      if (sv(c) <= null_tol) null_cols.push_back(c);
    }
    if (null_cols.empty()) null_cols.push_back(n2 - 1);

    auto unvec = [dout](const Vector& w) {
      Matrix m(dout, dout);
      for (Eigen::Index j = 0; j < dout; ++j) {
        m.col(j) = w.segment(j * dout, dout);
      }
      return m;
    };
    auto to_vec = [dout](const Matrix& m) {
      Vector w(static_cast<Eigen::Index>(dout) * dout);
      for (Eigen::Index j = 0; j < dout; ++j) {
        w.segment(j * dout, dout) = m.col(j);
      }
      return w;
    };
    auto residual_of = [&](const Matrix& cand) {
      double r = 0.0;
      for (std::size_t k = 0; k < probes.size(); ++k) {
        r = std::max(r, max_abs(a_imgs[k] - cand * b_imgs[k] * cand.adjoint()));
      }
      return r;
    };

    Vector seed = Vector::Zero(n2);
    for (Eigen::Index c : null_cols) seed += svd.matrixV().col(c);
    Matrix v = polar_unitary(unvec(seed));
    double res = residual_of(v);

    // Alternating projection between the intertwiner subspace and the unitary
    // manifold, accepted only while the probe residual improves.
    for (int it = 0; it < 50 && res > 1e-12; ++it) {
      const Vector cur = to_vec(v);
      Vector proj = Vector::Zero(n2);
      for (Eigen::Index c : null_cols) {
        const Vector basis = svd.matrixV().col(c);
        proj += basis * (basis.adjoint() * cur);
      }
      const Matrix next = polar_unitary(unvec(proj));
      const double next_res = residual_of(next);
      if (next_res >= res) break;
      v = next;
      res = next_res;
    }

    // Fixed-point polish V <- polar(sum_k A_k V B_k) to squeeze out the last
    // digits once the right orbit is found.
    for (int it = 0; it < 50 && res > 1e-12; ++it) {
      Matrix grad = Matrix::Zero(dout, dout);
      for (std::size_t k = 0; k < probes.size(); ++k) {
        grad.noalias() += a_imgs[k] * v * b_imgs[k];
      }
      const Matrix next = polar_unitary(grad);
      const double next_res = residual_of(next);
      if (next_res >= res) break;
      v = next;
      res = next_res;
    }
    worst = std::max(worst, res);
  }
  return CovarianceReport{worst <= kCovarianceThreshold, worst};
}

}  // namespace chancap
