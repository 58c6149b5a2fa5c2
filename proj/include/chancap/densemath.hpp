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

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace chancap {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Hard cap on any single-system dimension handled by the toolkit.
inline constexpr int kMaxDim = 64;

// Tolerance used when validating that an input is Hermitian.
inline constexpr double kHermitianTol = 1e-8;

struct HermitianEigen {
  Eigen::VectorXd eigenvalues;  // ascending
  Matrix eigenvectors;          // columns match eigenvalue order
};

// Largest |entry| of A (max-norm). Zero-sized input gives 0.
double max_abs(const Matrix& a);

// True when every entry of A is finite.
bool all_finite(const Matrix& a);

// (A + A^dagger)/2. Throws std::invalid_argument unless A is square with
// finite entries.
Matrix hermitize(const Matrix& a);

// Eigendecomposition of a Hermitian matrix. The input is symmetrized before
// factorization; inputs farther than `tol` from Hermitian (max-norm) are
// rejected. Eigenvalues come back in ascending order.
HermitianEigen eigh(const Matrix& h, double tol = kHermitianTol);

// Kronecker product, row-major convention: (A (x) B)[i*rB+k, j*cB+l] = A[i,j]B[k,l].
Matrix tensor(const Matrix& a, const Matrix& b);

// Partial trace of a multipartite matrix. `dims` lists per-factor dimensions
// whose product must equal the matrix size; `keep` lists the factor indices to
// retain, in strictly increasing order. Traced factors are summed out by
// direct index contraction.
Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                     const std::vector<int>& keep);

// Reorders tensor factors: entry ordering follows `perm`, where perm[k] is the
// index (into `dims`) of the factor placed at slot k of the output.
Matrix permute_systems(const Matrix& m, const std::vector<int>& dims,
                       const std::vector<int>& perm);

// d x d identity scaled to unit trace.
Matrix maximally_mixed(int dim);

}  // namespace chancap
