#pragma once
// Decomposable probability-of-success metrics.
//
// A metric phi is decomposable when phi(t, f) = t^T P_{phi,f} for a
// probability vector P_{phi,f} that does not depend on t. The general
// probability of success weights the per-step distributions of a search by
// alpha and takes the expectation over the random sequence of distributions
// and histories:
//
//   P_{alpha,f} = E[ sum_i alpha_i P_i | f ]
//
// Exact mode computes the expectation by walking the full history tree;
// Monte-Carlo mode averages seeded traces.

#include "algsearch/algorithms.hpp"
#include "algsearch/core.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace algsearch {

// ---------------------------------------------------------------------------
// Alpha weightings
// ---------------------------------------------------------------------------

// Generates the step weights (alpha_1, ..., alpha_L) for a horizon L.
template <Scalar S>
class AlphaWeighting {
 public:
  using Generator = std::function<std::vector<S>(std::size_t)>;

  AlphaWeighting(std::string name, Generator generator) : name_(std::move(name)), generator_(std::move(generator)) {}

  // alpha_i = 1/L: the expected per-query probability of success.
  static AlphaWeighting per_query() {
    return AlphaWeighting("per-query", [](std::size_t L) {
      return std::vector<S>(L, ratio<S>(1, static_cast<std::int64_t>(L)));
    });
  }

  // All mass on the last step.
  static AlphaWeighting final_query() {
    return AlphaWeighting("final-query", [](std::size_t L) {
      std::vector<S> w(L, S(0));
      w.back() = S(1);
      return w;
    });
  }

  // alpha_i proportional to gamma^(L - i); later queries weigh more.
  static AlphaWeighting geometric(S gamma) {
    if (!(gamma > 0)) throw std::invalid_argument("geometric weighting: gamma must be positive");
    return AlphaWeighting("geometric:gamma=" + to_string(gamma), [gamma](std::size_t L) {
      std::vector<S> w(L, S(0));
      S power = 1;
      S total = 0;
      for (std::size_t i = L; i-- > 0;) {
        w[i] = power;
        total += power;
        power *= gamma;
      }
      for (S& x : w) x /= total;
      return w;
    });
  }

  // Explicit weights for one horizon; other horizons are rejected.
  static AlphaWeighting custom(std::vector<S> table) {
    check_weights(table, "custom weighting");
    std::string name = "custom:";
    for (std::size_t i = 0; i < table.size(); ++i) name += (i ? "," : "") + to_string(table[i]);
    return AlphaWeighting(std::move(name), [table = std::move(table)](std::size_t L) {
      if (L != table.size()) {
        throw std::invalid_argument("custom weighting defined for " + std::to_string(table.size()) + " steps, asked for " +
                                    std::to_string(L));
      }
      return table;
    });
  }

  const std::string& name() const { return name_; }

  std::vector<S> weights(std::size_t L) const {
    if (L == 0) throw std::invalid_argument("alpha weighting: horizon must be at least 1");
    std::vector<S> w = generator_(L);
    if (w.size() != L) throw std::invalid_argument("alpha weighting '" + name_ + "' produced the wrong number of weights");
    check_weights(w, "alpha weighting '" + name_ + "'");
    return w;
  }

 private:
  static void check_weights(std::span<const S> w, const std::string& what) {
    if (w.empty()) throw std::invalid_argument(what + ": no weights");
    S total = 0;
    for (const S& x : w) {
      if (x < 0) throw std::invalid_argument(what + ": negative weight");
      total += x;
    }
    if (!nearly_equal<S>(total, S(1), 1e-12)) throw std::invalid_argument(what + ": weights sum to " + to_string(total));
  }

  std::string name_;
  Generator generator_;
};

// "per-query", "final-query", "geometric:gamma=0.5", "custom:0.2,0.3,0.5".
template <Scalar S>
AlphaWeighting<S> parse_alpha(std::string_view text) {
  if (text == "per-query") return AlphaWeighting<S>::per_query();
  if (text == "final-query") return AlphaWeighting<S>::final_query();
  if (text.starts_with("geometric")) {
    std::string_view rest = text.substr(std::string_view("geometric").size());
    if (rest.empty()) return AlphaWeighting<S>::geometric(ratio<S>(1, 2));
    if (!rest.starts_with(":gamma=")) throw std::invalid_argument("expected geometric:gamma=<value>");
    return AlphaWeighting<S>::geometric(parse_scalar<S>(rest.substr(7)));
  }
  if (text.starts_with("custom:")) {
    std::vector<S> table;
    std::string_view rest = text.substr(7);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      table.push_back(parse_scalar<S>(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return AlphaWeighting<S>::custom(std::move(table));
  }
  throw std::invalid_argument("unknown alpha weighting '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Estimation
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kDefaultTreeCap = 1'000'000;

struct EstimationMode {
  enum class Kind { Exact, MonteCarlo };
  Kind kind = Kind::Exact;
  std::size_t runs = 0;
  std::uint64_t seed = 0;
  std::uint64_t tree_cap = kDefaultTreeCap;

  static EstimationMode exact(std::uint64_t cap = kDefaultTreeCap) { return {Kind::Exact, 0, 0, cap}; }
  static EstimationMode monte_carlo(std::size_t runs, std::uint64_t seed) { return {Kind::MonteCarlo, runs, seed, kDefaultTreeCap}; }

  bool is_exact() const { return kind == Kind::Exact; }
  std::string label() const {
    return is_exact() ? std::string("exact") : "monte-carlo(runs=" + std::to_string(runs) + ",seed=" + std::to_string(seed) + ")";
  }
};

template <Scalar S>
struct StrategyEstimate {
  ProbabilityVector<S> vector;
  std::vector<double> std_error;  // all zero in exact mode
};

namespace detail {

inline void require_tree_cap(std::size_t n, std::size_t steps, std::uint64_t cap) {
  if (!checked_power(n, steps, cap)) {
    throw CapError("exact mode: history tree of " + std::to_string(n) + "^" + std::to_string(steps) +
                   " leaves exceeds the cap of " + std::to_string(cap));
  }
}

// Depth-first walk over every sampled-element sequence; `visit` receives the
// branch probability, the step index and that step's distribution.
template <Scalar S, class Visit>
void walk_history_tree(const SearchAlgorithm<S>& alg, const InformationResource& f, std::size_t steps,
                       SearchHistory& history, const S& branch, Visit& visit) {
  const ProbabilityVector<S> p = alg.next(history, f);
  const std::size_t depth = history.size();
  visit(branch, depth, p);
  if (depth + 1 == steps) return;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == 0) continue;
    history.push_back({j, f[j]});
    walk_history_tree(alg, f, steps, history, S(branch * p[j]), visit);
    history.pop_back();
  }
}

}  // namespace detail

template <Scalar S>
StrategyEstimate<S> strategy_vector(const SearchAlgorithm<S>& alg, const InformationResource& f,
                                    const AlphaWeighting<S>& alpha, std::size_t steps, const EstimationMode& mode) {
  if (steps == 0) throw std::invalid_argument("strategy_vector: steps must be at least 1");
  const std::size_t n = f.size();
  const std::vector<S> a = alpha.weights(steps);

  if (mode.is_exact()) {
    detail::require_tree_cap(n, steps, mode.tree_cap);
    std::vector<S> acc(n, S(0));
    auto visit = [&](const S& branch, std::size_t depth, const ProbabilityVector<S>& p) {
      if (a[depth] == 0) return;
      const S scale = branch * a[depth];
      for (std::size_t j = 0; j < n; ++j) {
        if (p[j] != 0) acc[j] += scale * p[j];
      }
    };
    SearchHistory history;
    history.reserve(steps);
    detail::walk_history_tree(alg, f, steps, history, S(1), visit);
    return {ProbabilityVector<S>(std::move(acc)), std::vector<double>(n, 0.0)};
  }

  if (mode.runs == 0) throw std::invalid_argument("monte-carlo mode: runs must be at least 1");
  // Runs are aggregated in run-index order; per-run seeds are derived from
  // (master seed, run index), so the result does not depend on scheduling.
  std::vector<S> sum(n, S(0));
  std::vector<double> mean(n, 0.0);
  std::vector<double> m2(n, 0.0);
  std::vector<S> run_vector(n);
  for (std::size_t r = 0; r < mode.runs; ++r) {
    const SearchTrace<S> trace = run_search(alg, f, steps, derive_seed(mode.seed, r));
    std::fill(run_vector.begin(), run_vector.end(), S(0));
    for (std::size_t i = 0; i < steps; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) run_vector[j] += a[i] * trace.distributions[i][j];
    }
    const double count = static_cast<double>(r + 1);
    for (std::size_t j = 0; j < n; ++j) {
      sum[j] += run_vector[j];
      const double x = to_double(run_vector[j]);
      const double delta = x - mean[j];
      mean[j] += delta / count;
      m2[j] += delta * (x - mean[j]);
    }
  }
  const S runs = S(static_cast<std::int64_t>(mode.runs));
  for (S& x : sum) x /= runs;
  std::vector<double> se(n, std::numeric_limits<double>::infinity());
  if (mode.runs > 1) {
    const double R = static_cast<double>(mode.runs);
    for (std::size_t j = 0; j < n; ++j) se[j] = std::sqrt(m2[j] / (R - 1.0) / R);
  }
  return {ProbabilityVector<S>(std::move(sum)), std::move(se)};
}

// phi(t, f) = t^T P.
template <Scalar S>
S success_probability(const TargetSet& t, const ProbabilityVector<S>& p) {
  if (t.size() != p.size()) {
    throw DimensionError("target over " + std::to_string(t.size()) + " elements scored against a " +
                         std::to_string(p.size()) + "-element distribution");
  }
  S total = 0;
  for (std::uint64_t m = t.mask(); m != 0; m &= m - 1) total += p[static_cast<std::size_t>(std::countr_zero(m))];
  return total;
}

// q_alpha(t, f) evaluated directly as E[sum_i alpha_i P_i(w in t) | f] over the
// history tree, without forming the strategy vector. This is the left-hand
// side of the decomposition and serves as its independent black-box form.
template <Scalar S>
S expected_success(const SearchAlgorithm<S>& alg, const InformationResource& f, const TargetSet& t,
                   const AlphaWeighting<S>& alpha, std::size_t steps, std::uint64_t tree_cap = kDefaultTreeCap) {
  if (steps == 0) throw std::invalid_argument("expected_success: steps must be at least 1");
  if (t.size() != f.size()) throw DimensionError("target and resource cover different search spaces");
  detail::require_tree_cap(f.size(), steps, tree_cap);
  const std::vector<S> a = alpha.weights(steps);
  S total = 0;
  auto visit = [&](const S& branch, std::size_t depth, const ProbabilityVector<S>& p) {
    if (a[depth] == 0) return;
    S hit = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (t.contains(j)) hit += p[j];
    }
    total += branch * a[depth] * hit;
  };
  SearchHistory history;
  detail::walk_history_tree(alg, f, steps, history, S(1), visit);
  return total;
}

template <Scalar S>
S per_query_success(const SearchAlgorithm<S>& alg, const InformationResource& f, const TargetSet& t, std::size_t steps,
                    const EstimationMode& mode) {
  return success_probability(t, strategy_vector(alg, f, AlphaWeighting<S>::per_query(), steps, mode).vector);
}

template <Scalar S>
S final_query_success(const SearchAlgorithm<S>& alg, const InformationResource& f, const TargetSet& t, std::size_t steps,
                      const EstimationMode& mode) {
  return success_probability(t, strategy_vector(alg, f, AlphaWeighting<S>::final_query(), steps, mode).vector);
}

// ---------------------------------------------------------------------------
// Decomposable metrics
// ---------------------------------------------------------------------------

template <Scalar S>
struct DecomposableMetric {
  std::string label;
  std::function<ProbabilityVector<S>(const InformationResource&)> strategy;

  S success(const TargetSet& t, const InformationResource& f) const { return success_probability(t, strategy(f)); }
};

// f -> P_{alpha,f} for one algorithm, weighting, horizon and mode.
template <Scalar S>
DecomposableMetric<S> general_metric(SearchAlgorithm<S> alg, AlphaWeighting<S> alpha, std::size_t steps,
                                     EstimationMode mode) {
  std::string label = alg.name + "|" + alpha.name() + "|steps=" + std::to_string(steps);
  return {std::move(label), [alg = std::move(alg), alpha = std::move(alpha), steps, mode](const InformationResource& f) {
            return strategy_vector(alg, f, alpha, steps, mode).vector;
          }};
}

template <Scalar S>
DecomposableMetric<S> per_query_metric(SearchAlgorithm<S> alg, std::size_t steps, EstimationMode mode) {
  return general_metric(std::move(alg), AlphaWeighting<S>::per_query(), steps, mode);
}

template <Scalar S>
DecomposableMetric<S> final_query_metric(SearchAlgorithm<S> alg, std::size_t steps, EstimationMode mode) {
  return general_metric(std::move(alg), AlphaWeighting<S>::final_query(), steps, mode);
}

// The same vector for every resource.
template <Scalar S>
DecomposableMetric<S> fixed_metric(ProbabilityVector<S> p, std::string label = "fixed") {
  return {std::move(label), [p = std::move(p)](const InformationResource& f) {
            if (f.size() != p.size()) throw DimensionError("fixed metric applied to a resource of a different size");
            return p;
          }};
}

// Convex combination f -> sum_i w_i P_{phi_i,f}. Non-convex weights would
// produce non-decomposable metrics and are rejected.
template <Scalar S>
DecomposableMetric<S> mixture_metric(std::vector<DecomposableMetric<S>> metrics, std::vector<S> weights) {
  if (metrics.empty()) throw std::invalid_argument("mixture_metric: no metrics");
  if (metrics.size() != weights.size()) throw DimensionError("mixture_metric: one weight per metric required");
  S total = 0;
  for (const S& w : weights) {
    if (w < 0) throw std::invalid_argument("mixture_metric: negative weight (non-convex combination)");
    total += w;
  }
  if (!nearly_equal<S>(total, S(1), 1e-12)) {
    throw std::invalid_argument("mixture_metric: weights sum to " + to_string(total) + " (non-convex combination)");
  }
  std::string label = "mixture(";
  for (std::size_t i = 0; i < metrics.size(); ++i) label += (i ? ";" : "") + to_string(weights[i]) + "*" + metrics[i].label;
  label += ")";
  return {std::move(label), [metrics = std::move(metrics), weights = std::move(weights)](const InformationResource& f) {
            std::vector<S> acc(f.size(), S(0));
            for (std::size_t i = 0; i < metrics.size(); ++i) {
              if (weights[i] == 0) continue;
              const ProbabilityVector<S> p = metrics[i].strategy(f);
              if (p.size() != f.size()) throw DimensionError("mixture_metric: component returned a wrong-sized vector");
              for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += weights[i] * p[j];
            }
            return ProbabilityVector<S>(std::move(acc));
          }};
}

// Caches strategy vectors per resource. Copies share the cache.
template <Scalar S>
DecomposableMetric<S> memoize(DecomposableMetric<S> metric) {
  struct Cache {
    std::mutex mutex;
    std::map<InformationResource, ProbabilityVector<S>> entries;
  };
  auto cache = std::make_shared<Cache>();
  std::string label = metric.label;
  return {std::move(label), [cache, inner = std::move(metric.strategy)](const InformationResource& f) {
            {
              std::lock_guard lock(cache->mutex);
              if (auto it = cache->entries.find(f); it != cache->entries.end()) return it->second;
            }
            ProbabilityVector<S> p = inner(f);
            std::lock_guard lock(cache->mutex);
            return cache->entries.emplace(f, std::move(p)).first->second;
          }};
}

// ---------------------------------------------------------------------------
// Decomposability testing
// ---------------------------------------------------------------------------

template <Scalar S>
using SuccessFunctional = std::function<S(const TargetSet&, const InformationResource&)>;

template <Scalar S>
struct DecomposabilityResult {
  bool decomposable = false;
  std::optional<ProbabilityVector<S>> reconstruction;
  std::optional<TargetSet> counterexample;  // first target where additivity fails
};

// Reconstructs v_w = phi({w}, f) and checks phi(t, f) = sum_{w in t} v_w over
// all 2^n targets (the empty target must score 0).
template <Scalar S>
DecomposabilityResult<S> decomposability_check(const SuccessFunctional<S>& phi, const InformationResource& f,
                                               std::size_t cap = kDefaultEnumerationCap, double tol = kTolerance) {
  const std::size_t n = f.size();
  SearchSpace(n).require_enumerable(cap);
  std::vector<S> v(n);
  for (std::size_t w = 0; w < n; ++w) v[w] = phi(TargetSet::singleton(n, w), f);

  DecomposabilityResult<S> result;
  if (ProbabilityVector<S>::validation_error(v)) return result;
  for (const TargetSet& t : enumerate_targets(n, std::nullopt, cap)) {
    S predicted = 0;
    for (std::uint64_t m = t.mask(); m != 0; m &= m - 1) predicted += v[static_cast<std::size_t>(std::countr_zero(m))];
    if (!nearly_equal<S>(phi(t, f), predicted, tol)) {
      result.counterexample = t;
      return result;
    }
  }
  result.decomposable = true;
  result.reconstruction = ProbabilityVector<S>(std::move(v));
  return result;
}

// ---------------------------------------------------------------------------
// Active information
// ---------------------------------------------------------------------------

// I = -log2(p / phi), in bits; -infinity when phi = 0.
template <Scalar S>
double active_information(const S& phi, const S& p) {
  if (!(p > 0) || p > 1) throw std::invalid_argument("active_information: baseline p must lie in (0, 1]");
  if (phi < 0 || phi > 1) throw std::invalid_argument("active_information: success must lie in [0, 1]");
  if (phi == 0) return -std::numeric_limits<double>::infinity();
  if constexpr (is_exact_v<S>) {
    return std::log2(to_double(Rational(phi / p)));
  } else {
    return -std::log2(p / phi);
  }
}

}  // namespace algsearch
