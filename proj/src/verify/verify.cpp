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

#include "chancap/verify.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "chancap/parallel.hpp"
#include "chancap/rng.hpp"

namespace chancap {

namespace {

void require_positive(long long n, const char* who) {
  if (n < 1) {
    throw std::invalid_argument(std::string(who) + ": n must be >= 1");
  }
}

// Collects per-instance worst slacks into a report. `per_instance` returns
// the minimum slack across the inequalities an instance exercises.
template <typename Fn>
PropertyReport run_check(const char* name, long long n, std::uint64_t seed,
                         Fn&& per_instance) {
  require_positive(n, name);
  std::vector<double> slacks(static_cast<std::size_t>(n));
  parallel_for(n, [&](long long i) {
    slacks[static_cast<std::size_t>(i)] =
        per_instance(Rng::derive(seed, static_cast<std::uint64_t>(i)), i);
  });
  PropertyReport report;
  report.name = name;
  report.instances = n;
  report.seed = seed;
  report.min_slack = *std::min_element(slacks.begin(), slacks.end());
  report.failures =
      std::count_if(slacks.begin(), slacks.end(),
                    [](double s) { return s < -kPropertyTol; });
  return report;
}

}  // namespace

PropertyReport check_dpi(long long n, std::uint64_t seed) {
  return run_check("dpi", n, seed, [](std::uint64_t s, long long) {
    Rng rng(s);
    const DensityMatrix rho_abc = random_state(8, 8, rng.raw());
    const KrausChannel phi_a = random_channel(2, 2, rng.raw());
    const KrausChannel phi_b = random_channel(2, 2, rng.raw());
    const KrausChannel local =
        tensor_product(tensor_product(phi_a, phi_b), identity_channel(2));
    const DensityMatrix sigma_abc = apply(local, rho_abc);

    const std::vector<int> dims{2, 2, 2};
    auto ab_mi = [&](const DensityMatrix& rho) {
      return mutual_information(BipartiteState(
          DensityMatrix(partial_trace(rho.matrix(), dims, {0, 1})), 2, 2));
    };
    const double slack_unconditional = ab_mi(rho_abc) - ab_mi(sigma_abc);
    const double slack_conditional =
        conditional_mutual_information(rho_abc, 2, 2, 2) -
        conditional_mutual_information(sigma_abc, 2, 2, 2);
    return std::min(slack_unconditional, slack_conditional);
  });
}

PropertyReport check_superadditivity_i(long long n, std::uint64_t seed) {
  return run_check("superadditivity_I", n, seed, [](std::uint64_t s, long long i) {
    Rng rng(s);
    const KrausChannel phi_1 = random_channel(4, 4, rng.raw());
    const KrausChannel phi_2 = random_channel(4, 4, rng.raw());
    const bool product_instance = (i % 4) == 0;
    Matrix joint;
    if (product_instance) {
      joint = tensor(random_state(4, 4, rng.raw()).matrix(),
                     random_state(4, 4, rng.raw()).matrix());
    } else {
      joint = random_state(16, 16, rng.raw()).matrix();
    }
    const DensityMatrix rho(joint);
    const DensityMatrix block_1(partial_trace(joint, {4, 4}, {0}));
    const DensityMatrix block_2(partial_trace(joint, {4, 4}, {1}));
    const double slack = entropy_gain(tensor_product(phi_1, phi_2), rho) -
                         entropy_gain(phi_1, block_1) -
                         entropy_gain(phi_2, block_2);
    // Product inputs must sit on the equality line, so a positive excess is
    // just as much a failure there.
    return product_instance ? -std::abs(slack) + 0.0 : slack;
  });
}

PropertyReport check_superadditivity_ii(long long n, std::uint64_t seed) {
  return run_check("superadditivity_II", n, seed, [](std::uint64_t s, long long) {
    Rng rng(s);
    const KrausChannel phi_1 = random_channel(2, 2, rng.raw());
    const KrausChannel phi_2 = random_channel(2, 2, rng.raw());
    const DensityMatrix rho = random_state(8, 8, rng.raw());
    const std::vector<int> dims{2, 2, 2};

    const BipartiteState joint(rho, 4, 2);  // (A1 A2) | R
    const double whole =
        extended_entropy_gain(tensor_product(phi_1, phi_2), joint);
    const BipartiteState part_1(
        DensityMatrix(partial_trace(rho.matrix(), dims, {0, 2})), 2, 2);
    const BipartiteState part_2(
        DensityMatrix(partial_trace(rho.matrix(), dims, {1, 2})), 2, 2);
    return whole - extended_entropy_gain(phi_1, part_1) -
           extended_entropy_gain(phi_2, part_2);
  });
}

PropertyReport check_lemma1(const KrausChannel& ch, const CovariantGroup& group,
                            long long n, std::uint64_t seed) {
  const CovarianceReport cov = check_generalized_covariance(ch, group);
  if (!cov.covariant) {
    throw std::invalid_argument(
        "check_lemma1: channel is not generalized covariant for the supplied "
        "group (worst residual " +
        std::to_string(cov.worst_residual) + ")");
  }
  const double s_mix =
      von_neumann_entropy(apply(ch, DensityMatrix(maximally_mixed(ch.din()))));
  const int d = ch.din();
  return run_check("lemma1", n, seed, [&](std::uint64_t s, long long i) {
    // Alternate full-rank mixed and pure inputs.
    const int env = (i % 2 == 0) ? d : 1;
    const DensityMatrix rho = random_state(d, env, s);
    return s_mix - von_neumann_entropy(apply(ch, rho));
  });
}

PropertyReport check_subadditivity(long long n, std::uint64_t seed) {
  return run_check("subadditivity", n, seed, [](std::uint64_t s, long long) {
    const BipartiteState rho(random_state(4, 4, s), 2, 2);
    return von_neumann_entropy(rho.marginal_a()) +
           von_neumann_entropy(rho.marginal_b()) -
           von_neumann_entropy(rho.state());
  });
}

}  // namespace chancap
