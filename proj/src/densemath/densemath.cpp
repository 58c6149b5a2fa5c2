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

#include "chancap/densemath.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace chancap {

namespace {

void require_square(const Matrix& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square, got " +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()));
  }
}

void require_finite(const Matrix& a, const char* who) {
  if (!all_finite(a)) {
    throw std::invalid_argument(std::string(who) + ": matrix has non-finite entries");
  }
}

void require_dim_cap(long long dim, const char* who) {
  if (dim < 1) {
    throw std::invalid_argument(std::string(who) + ": dimension must be >= 1");
  }
  if (dim > kMaxDim) {
    throw std::invalid_argument(std::string(who) + ": dimension " +
                                std::to_string(dim) + " exceeds cap " +
                                std::to_string(kMaxDim));
  }
}

// Row/column strides for factor `which` of a tensor-factor list.
long long stride_after(const std::vector<int>& dims, std::size_t which) {
  long long s = 1;
  for (std::size_t k = which + 1; k < dims.size(); ++k) s *= dims[k];
  return s;
}

}  // namespace

double max_abs(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

bool all_finite(const Matrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

Matrix hermitize(const Matrix& a) {
  require_square(a, "hermitize");
  require_finite(a, "hermitize");
  return (a + a.adjoint()) / 2.0;
}

HermitianEigen eigh(const Matrix& h, double tol) {
  require_square(h, "eigh");
  require_finite(h, "eigh");
  const double dev = max_abs(h - h.adjoint());
  if (dev > tol) {
    throw std::invalid_argument("eigh: input deviates from Hermitian by " +
                                std::to_string(dev) + " (tolerance " +
                                std::to_string(tol) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver((h + h.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigh: eigensolver failed to converge");
  }
  return HermitianEigen{solver.eigenvalues(), solver.eigenvectors()};
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  require_finite(a, "tensor");
  require_finite(b, "tensor");
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  require_square(m, "partial_trace");
  require_finite(m, "partial_trace");
  if (dims.empty()) {
    throw std::invalid_argument("partial_trace: dims must be non-empty");
  }
  long long total = 1;
  for (int d : dims) {
    require_dim_cap(d, "partial_trace");
    total *= d;
  }
  if (total != m.rows()) {
    throw std::invalid_argument(
        "partial_trace: product of dims (" + std::to_string(total) +
        ") does not match matrix size (" + std::to_string(m.rows()) + ")");
  }
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || keep[k] >= static_cast<int>(dims.size())) {
      throw std::invalid_argument("partial_trace: keep index out of range");
    }
    if (k > 0 && keep[k] <= keep[k - 1]) {
      throw std::invalid_argument("partial_trace: keep indices must be strictly increasing");
    }
  }

  std::vector<int> traced;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
    bool kept = false;
    for (int kk : keep) kept |= (kk == k);
    if (!kept) traced.push_back(k);
  }

  long long keep_dim = 1;
  for (int k : keep) keep_dim *= dims[k];
  long long traced_dim = 1;
  for (int k : traced) traced_dim *= dims[k];

  std::vector<long long> keep_stride(keep.size()), traced_stride(traced.size());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    keep_stride[k] = stride_after(dims, static_cast<std::size_t>(keep[k]));
  }
  for (std::size_t k = 0; k < traced.size(); ++k) {
    traced_stride[k] = stride_after(dims, static_cast<std::size_t>(traced[k]));
  }

  // Map a composite (kept-part, traced-part) index pair to a full row index.
  auto full_index = [&](long long kept_part, long long traced_part) {
    long long idx = 0;
    long long rem = kept_part;
    for (std::size_t k = keep.size(); k-- > 0;) {
      idx += (rem % dims[keep[k]]) * keep_stride[k];
      rem /= dims[keep[k]];
    }
    rem = traced_part;
    for (std::size_t k = traced.size(); k-- > 0;) {
      idx += (rem % dims[traced[k]]) * traced_stride[k];
      rem /= dims[traced[k]];
    }
    return idx;
  };

  Matrix out = Matrix::Zero(keep_dim, keep_dim);
  for (long long i = 0; i < keep_dim; ++i) {
    for (long long j = 0; j < keep_dim; ++j) {
      Complex acc(0.0, 0.0);
      for (long long t = 0; t < traced_dim; ++t) {
        acc += m(full_index(i, t), full_index(j, t));
      }
      out(i, j) = acc;
    }
  }
  return out;
}

Matrix permute_systems(const Matrix& m, const std::vector<int>& dims,
                       const std::vector<int>& perm) {
  require_square(m, "permute_systems");
  require_finite(m, "permute_systems");
  if (perm.size() != dims.size()) {
    throw std::invalid_argument("permute_systems: perm and dims size mismatch");
  }
  long long total = 1;
  for (int d : dims) {
    require_dim_cap(d, "permute_systems");
    total *= d;
  }
  if (total != m.rows()) {
    throw std::invalid_argument("permute_systems: product of dims does not match matrix size");
  }
  std::vector<bool> seen(dims.size(), false);
  for (int p : perm) {
    if (p < 0 || p >= static_cast<int>(dims.size()) || seen[p]) {
      throw std::invalid_argument("permute_systems: perm is not a permutation");
    }
    seen[p] = true;
  }

  const std::size_t n = dims.size();
  std::vector<long long> in_stride(n);
  for (std::size_t k = 0; k < n; ++k) in_stride[k] = stride_after(dims, k);

  // Decompose an output row index into per-output-slot digits, then rebuild
  // the corresponding input row index.
  std::vector<int> out_dims(n);
  for (std::size_t k = 0; k < n; ++k) out_dims[k] = dims[perm[k]];
  auto to_input = [&](long long out_idx) {
    long long idx = 0;
    long long rem = out_idx;
    for (std::size_t k = n; k-- > 0;) {
      const long long digit = rem % out_dims[k];
      rem /= out_dims[k];
      idx += digit * in_stride[perm[k]];
    }
    return idx;
  };

  Matrix out(total, total);
  std::vector<long long> src(total);
  for (long long i = 0; i < total; ++i) src[i] = to_input(i);
  for (long long i = 0; i < total; ++i) {
    for (long long j = 0; j < total; ++j) {
      out(i, j) = m(src[i], src[j]);
    }
  }
  return out;
}

Matrix maximally_mixed(int dim) {
  require_dim_cap(dim, "maximally_mixed");
  return Matrix::Identity(dim, dim) / static_cast<double>(dim);
}

}  // namespace chancap
