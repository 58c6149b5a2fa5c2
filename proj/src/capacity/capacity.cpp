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

#include "chancap/capacity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "chancap/parallel.hpp"
#include "chancap/rng.hpp"

namespace chancap {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPenaltyWeight = 1e3;
constexpr double kGradedRejectionBase = 1e6;
constexpr double kRejectedScore = 1e9;
constexpr int kRefineIterations = 200;
constexpr double kReflection = 1.0;
constexpr double kContraction = 0.5;
constexpr int kMaxAssemblyAttempts = 100000;

double xlog2x(double p) { return p <= 0.0 ? 0.0 : p * std::log2(p); }

// Draws box parameters for a family; each coordinate uniform over its box.
std::vector<double> sample_box(StateFamily family, Rng& rng) {
  const auto box = family_box(family);
  std::vector<double> params(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) {
    params[i] = rng.uniform(box[i].first, box[i].second);
  }
  return params;
}

// Rejection-resamples until the family map accepts; the rng stream advances
// in place so each sample index stays a self-contained deterministic unit.
std::pair<std::vector<double>, BipartiteState> sample_family_state(
    StateFamily family, Rng& rng) {
  for (int attempt = 0; attempt < kMaxAssemblyAttempts; ++attempt) {
    std::vector<double> params = sample_box(family, rng);
    if (auto state = family_state(family, params)) {
      return {std::move(params), std::move(*state)};
    }
  }
  throw std::runtime_error(
      "sample_family_state: no positive assembly found after " +
      std::to_string(kMaxAssemblyAttempts) + " attempts");
}

struct ClauseEval {
  std::vector<double> slacks;
  double total_violation = 0.0;
  bool feasible = true;
};

ClauseEval evaluate_constraints(const ConstraintSpec& cons,
                                const BipartiteState& rho) {
  ClauseEval eval;
  for (const ConstraintClause& clause : cons.clauses) {
    double q = 0.0;
    switch (clause.quantity) {
      case ConstraintQuantity::kMutualInformation:
        q = mutual_information(rho);
        break;
    }
    double slack = 0.0;
    switch (clause.comparator) {
      case Comparator::kGreaterEqual:
        slack = q - clause.threshold;
        break;
      case Comparator::kEqual:
        slack = -std::abs(q - clause.threshold);
        break;
    }
    eval.slacks.push_back(slack);
    if (slack < -clause.tolerance) {
      eval.feasible = false;
      eval.total_violation += -slack - clause.tolerance;
    }
  }
  if (cons.fixed_marginal_w.has_value()) {
    const double dev = max_abs(rho.marginal_b().matrix() - *cons.fixed_marginal_w);
    eval.slacks.push_back(-dev);
    if (dev > cons.marginal_tolerance) {
      eval.feasible = false;
      eval.total_violation += dev - cons.marginal_tolerance;
    }
  }
  return eval;
}

void validate_constraint_spec(const ConstraintSpec& cons, int dim_w) {
  for (const ConstraintClause& clause : cons.clauses) {
    if (!(clause.tolerance >= 0.0)) {
      throw std::invalid_argument("ConstraintSpec: clause tolerance must be >= 0");
    }
    if (!std::isfinite(clause.threshold)) {
      throw std::invalid_argument("ConstraintSpec: clause threshold must be finite");
    }
  }
  if (cons.fixed_marginal_w.has_value()) {
    if (cons.fixed_marginal_w->rows() != dim_w ||
        cons.fixed_marginal_w->cols() != dim_w) {
      throw std::invalid_argument(
          "ConstraintSpec: fixed W marginal must be " + std::to_string(dim_w) +
          "x" + std::to_string(dim_w));
    }
    if (!(cons.marginal_tolerance > 0.0)) {
      throw std::invalid_argument("ConstraintSpec: marginal tolerance must be > 0");
    }
  }
}

}  // namespace

EncodingEnsemble::EncodingEnsemble(
    std::vector<std::pair<double, KrausChannel>> entries, double tol)
    : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw std::invalid_argument("EncodingEnsemble: at least one entry required");
  }
  const int din = entries_.front().second.din();
  const int dout = entries_.front().second.dout();
  double sum = 0.0;
  for (const auto& [p, op] : entries_) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("EncodingEnsemble: weights must be >= 0");
    }
    if (op.din() != din || op.dout() != dout) {
      throw std::invalid_argument(
          "EncodingEnsemble: all operations must share one input/output shape");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw std::invalid_argument("EncodingEnsemble: weights sum to " +
                                std::to_string(sum) + ", expected 1");
  }
}

EncodingEnsemble identity_encoding(int d) {
  return EncodingEnsemble({{1.0, identity_channel(d)}});
}

EncodingEnsemble weyl_encoding(int d) {
  const CovariantGroup group = weyl_group(d);
  std::vector<std::pair<double, KrausChannel>> entries;
  const double p = 1.0 / static_cast<double>(group.unitaries().size());
  for (const Matrix& u : group.unitaries()) {
    entries.emplace_back(p, KrausChannel(d, d, {u}));
  }
  return EncodingEnsemble(std::move(entries));
}

EncodingEnsemble reset_encoding(int d) {
  return EncodingEnsemble({{1.0, reset_channel(d)}});
}

double entropy_gain(const KrausChannel& ch, const DensityMatrix& rho) {
  return von_neumann_entropy(apply(ch, rho)) - von_neumann_entropy(rho);
}

double extended_entropy_gain(const KrausChannel& ch, const BipartiteState& rho,
                             Side side) {
  return von_neumann_entropy(apply_extended(ch, rho, side).state()) -
         von_neumann_entropy(rho.state());
}

double holevo(const std::vector<std::pair<double, DensityMatrix>>& ensemble) {
  if (ensemble.empty()) {
    throw std::invalid_argument("holevo: ensemble must be non-empty");
  }
  const int dim = ensemble.front().second.dim();
  double sum = 0.0;
  Matrix avg = Matrix::Zero(dim, dim);
  double mean_entropy = 0.0;
  for (const auto& [p, rho] : ensemble) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("holevo: weights must be >= 0");
    }
    if (rho.dim() != dim) {
      throw std::invalid_argument("holevo: ensemble states must share one dimension");
    }
    sum += p;
    avg += p * rho.matrix();
    mean_entropy += p * von_neumann_entropy(rho);
  }
  if (std::abs(sum - 1.0) > kStateTol) {
    throw std::invalid_argument("holevo: weights sum to " + std::to_string(sum) +
                                ", expected 1");
  }
  const double chi = von_neumann_entropy(DensityMatrix(avg)) - mean_entropy;
  return chi < 0.0 ? 0.0 : chi;
}

double F_functional(const KrausChannel& ch, const BipartiteState& rho_sw,
                    const EncodingEnsemble& enc) {
  if (enc.din() != rho_sw.dim_a()) {
    throw std::invalid_argument(
        "F_functional: encoding input does not match the S factor");
  }
  if (enc.dout() != ch.din()) {
    throw std::invalid_argument(
        "F_functional: encoding output does not match the channel input");
  }
  const DensityMatrix rho_s = rho_sw.marginal_a();
  Matrix rho_b = Matrix::Zero(ch.dout(), ch.dout());
  double gain_term = 0.0;
  for (const auto& [p, eps_x] : enc.entries()) {
    if (p <= 0.0) continue;
    const KrausChannel through = compose(ch, eps_x);
    rho_b += p * apply(through, rho_s).matrix();
    gain_term += p * extended_entropy_gain(complementary(through), rho_sw);
  }
  return von_neumann_entropy(DensityMatrix(rho_b)) - gain_term;
}

double chi_covariant_inner(const KrausChannel& ch, const KrausChannel& eps_op,
                           const BipartiteState& rho_sw) {
  if (eps_op.din() != rho_sw.dim_a()) {
    throw std::invalid_argument(
        "chi_covariant_inner: encoding input does not match the S factor");
  }
  if (eps_op.dout() != ch.din()) {
    throw std::invalid_argument(
        "chi_covariant_inner: encoding output does not match the channel input");
  }
  const double s_mix =
      von_neumann_entropy(apply(ch, DensityMatrix(maximally_mixed(ch.din()))));
  return s_mix -
         extended_entropy_gain(complementary(compose(ch, eps_op)), rho_sw);
}

QecClosedForms qec_closed_forms(double eps, int d, double y) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("qec_closed_forms: eps must lie in [0, 1]");
  }
  if (d < 2 || d > kMaxDim) {
    throw std::invalid_argument("qec_closed_forms: d must lie in [2, " +
                                std::to_string(kMaxDim) + "]");
  }
  const double log_d = std::log2(static_cast<double>(d));
  if (!(y >= 0.0 && y <= 2.0 * log_d)) {
    throw std::invalid_argument("qec_closed_forms: y must lie in [0, 2 log2 d]");
  }
  QecClosedForms out;
  out.c_e = (1.0 - eps) * 2.0 * log_d;
  out.c1 = out.c_e / 2.0;
  out.chi_l_i = out.c_e * (1.0 - y / (2.0 * log_d));
  return out;
}

double qec_chi_integrand(double eps, int d, const KrausChannel& eps_op,
                         const BipartiteState& rho_sw) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("qec_chi_integrand: eps must lie in [0, 1]");
  }
  if (eps_op.dout() != d) {
    throw std::invalid_argument(
        "qec_chi_integrand: encoding output does not match the erasure input");
  }
  if (eps_op.din() != rho_sw.dim_a()) {
    throw std::invalid_argument(
        "qec_chi_integrand: encoding input does not match the S factor");
  }
  return (1.0 - eps) * (std::log2(static_cast<double>(d)) -
                        extended_entropy_gain(complementary(eps_op), rho_sw));
}

DepolarizingClosedForms depolarizing_closed_forms(double lam) {
  if (!(lam >= 0.0 && lam <= 4.0 / 3.0 + 1e-12)) {
    throw std::invalid_argument("depolarizing_closed_forms: lam must lie in [0, 4/3]");
  }
  DepolarizingClosedForms out;
  out.c_e = 2.0 + xlog2x(1.0 - 3.0 * lam / 4.0) +
            (3.0 * lam / 4.0) * (lam <= 0.0 ? 0.0 : std::log2(lam / 4.0));
  out.c = 1.0 + xlog2x(1.0 - lam / 2.0) + xlog2x(lam / 2.0);
  return out;
}

int family_param_count(StateFamily family) {
  switch (family) {
    case StateFamily::kBellDiagonal:
      return 4;
    case StateFamily::kTenParam:
      return 10;
  }
  throw std::invalid_argument("family_param_count: unknown family");
}

std::vector<std::pair<double, double>> family_box(StateFamily family) {
  switch (family) {
    case StateFamily::kBellDiagonal:
      return std::vector<std::pair<double, double>>(4, {0.0, 1.0});
    case StateFamily::kTenParam: {
      std::vector<std::pair<double, double>> box;
      box.emplace_back(0.0, 1.0);  // p1
      box.emplace_back(0.0, 1.0);  // p2
      box.emplace_back(0.0, 1.0);  // a, as a fraction of its allowed interval
      for (int i = 0; i < 4; ++i) box.emplace_back(0.0, 0.5);  // r1 r2 c1 c3
      for (int i = 0; i < 3; ++i) box.emplace_back(0.0, kTwoPi);  // theta alpha beta
      return box;
    }
  }
  throw std::invalid_argument("family_box: unknown family");
}

namespace {

TenParamSpec ten_param_spec_from_box(const std::vector<double>& params) {
  TenParamSpec spec;
  spec.p1 = std::clamp(params[0], 0.0, 1.0);
  spec.p2 = std::clamp(params[1], 0.0, 1.0);
  const double lo = std::max(0.0, spec.p1 + spec.p2 - 1.0);
  const double hi = std::min(spec.p1, spec.p2);
  spec.a = lo + std::clamp(params[2], 0.0, 1.0) * (hi - lo);
  spec.r1 = std::clamp(params[3], 0.0, 0.5);
  spec.r2 = std::clamp(params[4], 0.0, 0.5);
  spec.c1 = std::clamp(params[5], 0.0, 0.5);
  spec.c3 = std::clamp(params[6], 0.0, 0.5);
  auto wrap = [](double v) {
    double w = std::fmod(v, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
  };
  spec.theta = wrap(params[7]);
  spec.alpha = wrap(params[8]);
  spec.beta = wrap(params[9]);
  return spec;
}

}  // namespace

std::optional<BipartiteState> family_state(StateFamily family,
                                           const std::vector<double>& params) {
  if (static_cast<int>(params.size()) != family_param_count(family)) {
    throw std::invalid_argument("family_state: wrong parameter count");
  }
  for (double p : params) {
    if (!std::isfinite(p)) {
      throw std::invalid_argument("family_state: parameters must be finite");
    }
  }
  switch (family) {
    case StateFamily::kBellDiagonal: {
      // -log maps uniform box draws to a uniform distribution on the simplex
      // and keeps the corners reachable for the refinement stage.
      std::array<double, 4> w{};
      double sum = 0.0;
      for (int i = 0; i < 4; ++i) {
        const double u = std::clamp(params[i], 1e-300, 1.0);
        w[i] = -std::log(u);
        sum += w[i];
      }
      if (sum <= 0.0) return std::nullopt;
      for (double& x : w) x /= sum;
      return bell_diagonal(w);
    }
    case StateFamily::kTenParam:
      return try_ten_param_state(ten_param_spec_from_box(params));
  }
  throw std::invalid_argument("family_state: unknown family");
}

CapacityResult optimize_constrained(const StateObjective& objective,
                                    StateFamily family,
                                    const ConstraintSpec& cons,
                                    long long budget, std::uint64_t seed) {
  if (budget < 0) {
    throw std::invalid_argument("optimize_constrained: budget must be >= 0");
  }
  if (!objective) {
    throw std::invalid_argument("optimize_constrained: objective must be callable");
  }
  validate_constraint_spec(cons, 2);

  const auto box = family_box(family);
  const int k = family_param_count(family);

  struct Eval {
    double objective = 0.0;
    double penalized = kRejectedScore;
    bool feasible = false;
    std::vector<double> params;
  };

  long long evals = 0;
  auto evaluate = [&](const std::vector<double>& params) {
    Eval e;
    e.params = params;
    ++evals;
    const auto state = family_state(family, params);
    if (!state) {
      // Grade rejected assemblies by their positivity deficit where the
      // family allows it, so the simplex sees a slope back into the cone
      // instead of a flat cliff. Every rejected score stays far above every
      // accepted one.
      if (family == StateFamily::kTenParam) {
        const double min_eig =
            ten_param_min_eigenvalue(ten_param_spec_from_box(params));
        e.penalized =
            kGradedRejectionBase + kPenaltyWeight * std::max(0.0, -min_eig);
      }
      return e;
    }
    const ClauseEval ce = evaluate_constraints(cons, *state);
    e.objective = objective(*state);
    e.feasible = ce.feasible;
    e.penalized = -e.objective + kPenaltyWeight * ce.total_violation;
    return e;
  };

  // Sampling phase: per-index derived seeds, slot-per-index records so the
  // result does not depend on the worker count.
  std::vector<Eval> draws(static_cast<std::size_t>(budget));
  std::atomic<long long> sample_evals{0};
  parallel_for(budget, [&](long long i) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(i)));
    auto [params, state] = sample_family_state(family, rng);
    Eval e;
    e.params = std::move(params);
    const ClauseEval ce = evaluate_constraints(cons, state);
    e.objective = objective(state);
    e.feasible = ce.feasible;
    e.penalized = -e.objective + kPenaltyWeight * ce.total_violation;
    draws[static_cast<std::size_t>(i)] = std::move(e);
    sample_evals.fetch_add(1, std::memory_order_relaxed);
  });
  evals += sample_evals.load();

  const Eval* best_feasible = nullptr;
  const Eval* best_penalized = nullptr;
  for (const Eval& e : draws) {
    if (e.feasible &&
        (best_feasible == nullptr || e.objective > best_feasible->objective)) {
      best_feasible = &e;
    }
    if (best_penalized == nullptr || e.penalized < best_penalized->penalized) {
      best_penalized = &e;
    }
  }

  CapacityResult result;
  result.seed = seed;

  Eval champion;  // best feasible point seen anywhere
  bool have_champion = false;
  auto consider = [&](const Eval& e) {
    if (e.feasible && (!have_champion || e.objective > champion.objective)) {
      champion = e;
      have_champion = true;
    }
  };
  if (best_feasible != nullptr) consider(*best_feasible);

  const Eval* start = best_feasible != nullptr ? best_feasible : best_penalized;
  Eval nearest_miss;
  bool have_nearest = false;
  if (start != nullptr) {
    nearest_miss = *start;
    have_nearest = true;
    auto clamp_to_box = [&](std::vector<double>& p) {
      for (int j = 0; j < k; ++j) {
        p[j] = std::clamp(p[j], box[j].first, box[j].second);
      }
    };
    auto eval_vertex = [&](const std::vector<double>& p) {
      Eval e = evaluate(p);
      consider(e);
      if (e.penalized < nearest_miss.penalized) {
        nearest_miss = e;
      }
      return e.penalized;
    };

    // Simplex descent on the penalized objective, restarted around the best
    // penalized point so far: a moderate simplex, a wide one to escape a
    // premature collapse, then progressively tighter polish rounds that can
    // track thin feasibility slivers near family corners.
    for (const double scale : {0.05, 0.15, 0.02, 0.005, 0.001}) {
      std::vector<std::vector<double>> verts;
      std::vector<double> vals;
      verts.push_back(nearest_miss.params);
      clamp_to_box(verts.back());
      for (int j = 0; j < k; ++j) {
        std::vector<double> v = verts.front();
        const double step = scale * (box[j].second - box[j].first);
        v[j] = v[j] + step <= box[j].second ? v[j] + step : v[j] - step;
        clamp_to_box(v);
        verts.push_back(std::move(v));
      }
      vals.reserve(verts.size());
      for (const auto& v : verts) vals.push_back(eval_vertex(v));

      for (int it = 0; it < kRefineIterations; ++it) {
        std::vector<std::size_t> order(verts.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                           return vals[a] < vals[b];
                         });
        std::vector<std::vector<double>> sorted_verts;
        std::vector<double> sorted_vals;
        for (std::size_t idx : order) {
          sorted_verts.push_back(std::move(verts[idx]));
          sorted_vals.push_back(vals[idx]);
        }
        verts = std::move(sorted_verts);
        vals = std::move(sorted_vals);

        std::vector<double> centroid(static_cast<std::size_t>(k), 0.0);
        for (std::size_t vi = 0; vi + 1 < verts.size(); ++vi) {
          for (int j = 0; j < k; ++j) centroid[j] += verts[vi][j];
        }
        for (int j = 0; j < k; ++j) centroid[j] /= static_cast<double>(k);

        std::vector<double> reflected(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) {
          reflected[j] = centroid[j] + kReflection * (centroid[j] - verts.back()[j]);
        }
        clamp_to_box(reflected);
        const double fr = eval_vertex(reflected);
        if (fr < vals[vals.size() - 2]) {
          verts.back() = std::move(reflected);
          vals.back() = fr;
          continue;
        }
        std::vector<double> contracted(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) {
          contracted[j] = centroid[j] + kContraction * (verts.back()[j] - centroid[j]);
        }
        clamp_to_box(contracted);
        const double fc = eval_vertex(contracted);
        if (fc < vals.back()) {
          verts.back() = std::move(contracted);
          vals.back() = fc;
          continue;
        }
        for (std::size_t vi = 1; vi < verts.size(); ++vi) {
          for (int j = 0; j < k; ++j) {
            verts[vi][j] =
                verts[0][j] + kContraction * (verts[vi][j] - verts[0][j]);
          }
          clamp_to_box(verts[vi]);
          vals[vi] = eval_vertex(verts[vi]);
        }
      }
    }
  }

  result.samples_evaluated = evals;
  if (have_champion) {
    result.feasible = true;
    result.value = champion.objective;
    result.argmax_params = champion.params;
    const auto state = family_state(family, champion.params);
    result.constraint_slacks = evaluate_constraints(cons, *state).slacks;
    return result;
  }

  // No feasible point anywhere: report the nearest miss explicitly.
  result.feasible = false;
  const Eval* miss = have_nearest ? &nearest_miss : best_penalized;
  if (miss != nullptr && !miss->params.empty()) {
    if (const auto state = family_state(family, miss->params)) {
      result.value = miss->objective;
      result.argmax_params = miss->params;
      result.constraint_slacks = evaluate_constraints(cons, *state).slacks;
    }
  }
  return result;
}

std::vector<ScanRecord> mc_scan(const KrausChannel& ch, StateFamily family,
                                long long n, std::uint64_t seed) {
  if (n < 0) {
    throw std::invalid_argument("mc_scan: n must be >= 0");
  }
  const KrausChannel comp = complementary(compose(ch, identity_channel(ch.din())));
  const double s_mix =
      von_neumann_entropy(apply(ch, DensityMatrix(maximally_mixed(ch.din()))));
  std::vector<ScanRecord> records(static_cast<std::size_t>(n));
  parallel_for(n, [&](long long i) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(i)));
    auto [params, state] = sample_family_state(family, rng);
    ScanRecord rec;
    rec.q = mutual_information(state);
    rec.f = s_mix - extended_entropy_gain(comp, state);
    records[static_cast<std::size_t>(i)] = rec;
  });
  return records;
}

std::vector<ScanBin> bin_scan(const std::vector<ScanRecord>& records,
                              double bin_width,
                              const std::function<double(double)>& reference) {
  if (!(bin_width > 0.0)) {
    throw std::invalid_argument("bin_scan: bin width must be > 0");
  }
  if (!reference) {
    throw std::invalid_argument("bin_scan: reference line must be callable");
  }
  std::vector<ScanBin> bins;
  auto bin_of = [&](double q) {
    return static_cast<long long>(std::floor(q / bin_width));
  };
  long long max_bin = -1;
  for (const ScanRecord& r : records) max_bin = std::max(max_bin, bin_of(r.q));
  if (max_bin < 0) return bins;
  std::vector<ScanBin> all(static_cast<std::size_t>(max_bin) + 1);
  std::vector<bool> seen(static_cast<std::size_t>(max_bin) + 1, false);
  for (const ScanRecord& r : records) {
    const auto b = static_cast<std::size_t>(bin_of(r.q));
    ScanBin& bin = all[b];
    ++bin.count;
    if (!seen[b] || r.f > bin.f_max) {
      bin.f_max = r.f;
      bin.q_at_max = r.q;
      seen[b] = true;
    }
  }
  for (std::size_t b = 0; b < all.size(); ++b) {
    if (!seen[b]) continue;
    ScanBin bin = all[b];
    bin.q_bin = (static_cast<double>(b) + 0.5) * bin_width;
    bin.chi_star = reference(bin.q_at_max);
    bin.deviation = bin.f_max - bin.chi_star;
    bins.push_back(bin);
  }
  return bins;
}

CapacityResult eve_bound(const KrausChannel& ch, const EncodingEnsemble& enc,
                         const ConstraintSpec& cons, long long budget,
                         std::uint64_t seed) {
  if (ch.din() != 2) {
    throw std::invalid_argument("eve_bound: only qubit-input channels supported");
  }
  if (enc.din() != 2 || enc.dout() != ch.din()) {
    throw std::invalid_argument(
        "eve_bound: encoding shape must take the qubit S factor to the channel input");
  }
  bool has_equality = false;
  for (const ConstraintClause& clause : cons.clauses) {
    has_equality |= clause.comparator == Comparator::kEqual;
  }
  if (!has_equality) {
    throw std::invalid_argument(
        "eve_bound: constraints must pin the correlation level with at least "
        "one equality clause");
  }
  if (!cons.fixed_marginal_w.has_value()) {
    throw std::invalid_argument("eve_bound: a fixed W marginal is required");
  }
  const StateObjective objective = [&](const BipartiteState& rho) {
    return F_functional(ch, rho, enc);
  };
  return optimize_constrained(objective, StateFamily::kTenParam, cons, budget,
                              seed);
}

}  // namespace chancap
