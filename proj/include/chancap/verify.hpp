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
#include <string>

#include "chancap/capacity.hpp"

namespace chancap {

// Slack below which a property instance counts as a failure.
inline constexpr double kPropertyTol = 1e-9;

struct PropertyReport {
  std::string name;
  long long instances = 0;
  double min_slack = 0.0;
  long long failures = 0;
  std::uint64_t seed = 0;
};

// Data-processing inequality, unconditional and conditional, on random
// tripartite qubit states under random local channels on A and B.
PropertyReport check_dpi(long long n, std::uint64_t seed);

// Superadditivity of the entropy gain for product channels on two two-qubit
// blocks; every fourth instance uses a product state, where the slack must
// vanish.
PropertyReport check_superadditivity_i(long long n, std::uint64_t seed);

// Superadditivity with a shared reference system R: channels act on A1 and
// A2 of a random three-qubit A1 A2 R state.
PropertyReport check_superadditivity_ii(long long n, std::uint64_t seed);

// Output entropy of a generalized-covariant channel is maximized by the
// maximally mixed input. Refuses (throws) unless the covariance check passes
// for the supplied group.
PropertyReport check_lemma1(const KrausChannel& ch, const CovariantGroup& group,
                            long long n, std::uint64_t seed);

// S(A) + S(B) >= S(AB) on random two-qubit states.
PropertyReport check_subadditivity(long long n, std::uint64_t seed);

}  // namespace chancap
