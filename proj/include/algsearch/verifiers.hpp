#pragma once
// Instance verifiers for the conservation laws and famine bounds that hold
// for every decomposable probability-of-success metric, plus the counting
// lemmata they rest on.
//
// Each verifier computes both sides of one bound on a concrete instance and
// returns a VerificationReport. Verifiers refuse instances that fall outside
// the hypotheses of the bound (HypothesisError) instead of passing them.

#include "algsearch/combinatorics.hpp"
#include "algsearch/core.hpp"
#include "algsearch/information.hpp"
#include "algsearch/metrics.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace algsearch {

// One enumerated instance: its encoding, success value and whether it
// clears the threshold.
struct InstanceRow {
  std::string instance;
  double phi = 0.0;
  bool qualifies = false;
};

struct VerificationReport {
  enum class Relation { AtMost, Equal };

  std::string theorem;
  std::string instance;
  std::string mode;
  Relation relation = Relation::AtMost;
  double observed = 0.0;
  double bound = 0.0;
  double slack = 0.0;      // bound - observed
  double tolerance = 0.0;  // zero when decided exactly
  bool passed = false;
  std::vector<std::pair<std::string, std::string>> details;
  std::vector<InstanceRow> rows;

  void add(std::string key, std::string value) { details.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, double value) { details.emplace_back(std::move(key), to_string(value)); }

  std::string summary() const {
    std::string out = std::string(passed ? "PASS" : "FAIL") + " " + theorem + " [" + instance + "] observed=" +
                      to_string(observed) + (relation == Relation::Equal ? " expected=" : " bound=") + to_string(bound) +
                      " slack=" + to_string(slack);
    if (!mode.empty()) out += " mode=" + mode;
    for (const auto& [key, value] : details) out += " " + key + "=" + value;
    return out;
  }
};

namespace detail {

// passed <=> observed <= bound + tolerance, or |observed - bound| <= tolerance.
inline VerificationReport make_report(std::string theorem, std::string instance, VerificationReport::Relation relation,
                                      double observed, double bound, double tolerance, bool passed) {
  VerificationReport r;
  r.theorem = std::move(theorem);
  r.instance = std::move(instance);
  r.relation = relation;
  r.observed = observed;
  r.bound = bound;
  r.slack = bound - observed;
  r.tolerance = tolerance;
  r.passed = passed;
  return r;
}

template <Scalar S>
std::string arithmetic_label() {
  return is_exact_v<S> ? "rational" : "double";
}

inline std::string hex_mask(std::uint64_t mask) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(mask));
  return buf;
}

inline std::string pair_label(const TargetSet& t, const InformationResource& f) {
  return "t=" + hex_mask(t.mask()) + ";f=" + f.hex();
}

inline void require_threshold(double q_min) {
  if (!(q_min > 0.0) || q_min > 1.0) throw std::invalid_argument("q_min must lie in (0, 1]");
}

template <Scalar S>
void require_threshold(const S& q_min) {
  require_threshold(to_double(q_min));
  if (!(q_min > 0)) throw std::invalid_argument("q_min must lie in (0, 1]");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Target families
// ---------------------------------------------------------------------------

struct TargetFamily {
  std::size_t n = 0;
  std::vector<TargetSet> members;

  TargetFamily(std::size_t space, std::vector<TargetSet> targets) : n(space), members(std::move(targets)) {
    std::set<std::uint64_t> distinct;
    for (const TargetSet& t : members) {
      if (t.size() != n) throw DimensionError("target family: member over a different search space");
      if (!distinct.insert(t.mask()).second) throw std::invalid_argument("target family: repeated member");
    }
  }

  static TargetFamily all_of_size(std::size_t n, std::size_t k) { return TargetFamily(n, collect_targets(n, k)); }
};

// Common membership count c when every element of Ω lies in exactly c members.
inline std::optional<std::size_t> permutation_multiplicity(const TargetFamily& family) {
  if (family.members.empty()) throw std::invalid_argument("target family is empty");
  std::vector<std::size_t> counts(family.n, 0);
  for (const TargetSet& t : family.members) {
    for (std::size_t i : t.elements()) ++counts[i];
  }
  for (std::size_t c : counts) {
    if (c != counts.front()) return std::nullopt;
  }
  return counts.front();
}

inline bool is_closed_under_permutation(const TargetFamily& family) { return permutation_multiplicity(family).has_value(); }

// ---------------------------------------------------------------------------
// No free lunch: sum_t sum_f phi_A1(t, f) = sum_t sum_f phi_A2(t, f)
// ---------------------------------------------------------------------------

template <Scalar S>
VerificationReport verify_nfl(const DecomposableMetric<S>& first, const DecomposableMetric<S>& second,
                              const TargetFamily& family, const std::vector<InformationResource>& resources) {
  const auto c = permutation_multiplicity(family);
  if (!c) throw HypothesisError("verify-nfl requires a target family closed under permutation");
  if (resources.empty()) throw std::invalid_argument("verify-nfl: no information resources");
  auto double_sum = [&](const DecomposableMetric<S>& metric) {
    S total = 0;
    for (const InformationResource& f : resources) {
      if (f.size() != family.n) throw DimensionError("verify-nfl: resource over a different search space");
      const ProbabilityVector<S> p = metric.strategy(f);
      for (const TargetSet& t : family.members) total += success_probability(t, p);
    }
    return total;
  };
  const S lhs = double_sum(first);
  const S rhs = double_sum(second);
  const double tol = is_exact_v<S> ? 0.0 : kTolerance * static_cast<double>(family.members.size() * resources.size());
  auto r = detail::make_report("nfl", first.label + " vs " + second.label + " |tau|=" + std::to_string(family.members.size()) +
                                          " |B|=" + std::to_string(resources.size()),
                               VerificationReport::Relation::Equal, to_double(lhs), to_double(rhs), tol,
                               nearly_equal<S>(lhs, rhs, tol));
  r.mode = detail::arithmetic_label<S>();
  r.add("c", std::to_string(*c));
  r.add("sum1", to_string(lhs));
  r.add("sum2", to_string(rhs));
  return r;
}

template <Scalar S>
VerificationReport verify_nfl(const SearchAlgorithm<S>& first, const SearchAlgorithm<S>& second, const TargetFamily& family,
                              const std::vector<InformationResource>& resources, const AlphaWeighting<S>& alpha,
                              std::size_t steps, const EstimationMode& mode) {
  auto report = verify_nfl(general_metric(first, alpha, steps, mode), general_metric(second, alpha, steps, mode), family,
                           resources);
  report.mode += "/" + mode.label();
  return report;
}

// ---------------------------------------------------------------------------
// Fraction of favorable targets: |tau_b| / 2^n <= 2^-b for b >= 3
// ---------------------------------------------------------------------------

// A nonempty target qualifies when its active information reaches b bits,
// evaluated as phi >= p * 2^b (equivalent for p > 0, exact in rational mode).
template <Scalar S>
VerificationReport fraction_favorable_targets(const DecomposableMetric<S>& metric, const InformationResource& f,
                                              std::size_t b, bool collect_rows = false,
                                              std::size_t cap = kDefaultEnumerationCap) {
  if (b < 3) throw HypothesisError("verify-favorable-targets requires b ≥ 3 (got b = " + std::to_string(b) + ")");
  if (b > 62) throw std::invalid_argument("verify-favorable-targets: b too large");
  const std::size_t n = f.size();
  SearchSpace(n).require_enumerable(std::min<std::size_t>(cap, 40));
  const ProbabilityVector<S> p = metric.strategy(f);
  const S amplification = S(static_cast<std::int64_t>(std::uint64_t{1} << b));
  const S size = S(static_cast<std::int64_t>(n));

  // phi(t) = low[t & low_mask] + high[t >> half]: one addition per target.
  const std::size_t half = n / 2;
  auto subset_sums = [&](std::size_t offset, std::size_t width) {
    std::vector<S> sums(std::size_t{1} << width, S(0));
    for (std::size_t m = 1; m < sums.size(); ++m) {
      sums[m] = sums[m & (m - 1)] + p[offset + static_cast<std::size_t>(std::countr_zero(m))];
    }
    return sums;
  };
  const std::vector<S> low = subset_sums(0, half);
  const std::vector<S> high = subset_sums(half, n - half);
  const std::uint64_t low_mask = (std::uint64_t{1} << half) - 1;

  std::uint64_t qualifying = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<InstanceRow> rows;
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    const TargetSet t(n, mask);
    const S phi = low[mask & low_mask] + high[mask >> half];
    const bool q = phi * size >= S(static_cast<std::int64_t>(t.cardinality())) * amplification;
    if (q) ++qualifying;
    if (collect_rows) rows.push_back({detail::pair_label(t, f), to_double(phi), q});
  }
  const double observed = static_cast<double>(qualifying) / static_cast<double>(total);
  const double bound = std::ldexp(1.0, -static_cast<int>(b));
  // Both sides are dyadic rationals with at most 64 bits, so the double comparison is exact.
  auto r = detail::make_report("favorable-targets", metric.label + " f=" + f.hex() + " b=" + std::to_string(b),
                               VerificationReport::Relation::AtMost, observed, bound, 0.0, observed <= bound);
  r.mode = detail::arithmetic_label<S>();
  r.add("qualifying", std::to_string(qualifying));
  r.add("targets", std::to_string(total));
  r.rows = std::move(rows);
  return r;
}

// ---------------------------------------------------------------------------
// Famine of favorable targets: |{T : |T| = k, phi(T,f) >= q_min}| / C(n,k) <= p / q_min
// ---------------------------------------------------------------------------

template <Scalar S>
VerificationReport famine_favorable_targets(const DecomposableMetric<S>& metric, const InformationResource& f, std::size_t k,
                                            const S& q_min, bool collect_rows = false,
                                            std::size_t cap = kDefaultEnumerationCap) {
  detail::require_threshold(q_min);
  const std::size_t n = f.size();
  if (k == 0 || k > n) throw std::invalid_argument("verify-famine-targets: requires 1 <= k <= n");
  const ProbabilityVector<S> p = metric.strategy(f);
  std::uint64_t qualifying = 0;
  std::uint64_t total = 0;
  std::vector<InstanceRow> rows;
  for (const TargetSet& t : enumerate_targets(n, k, cap)) {
    ++total;
    const S phi = success_probability(t, p);
    const bool q = phi >= q_min;
    if (q) ++qualifying;
    if (collect_rows) rows.push_back({detail::pair_label(t, f), to_double(phi), q});
  }
  // count / C(n,k) <= k / (n q_min)  <=>  count * n * q_min <= k * C(n,k)
  const bool passed = S(static_cast<std::int64_t>(qualifying * n)) * q_min <= S(static_cast<std::int64_t>(k * total));
  const double observed = static_cast<double>(qualifying) / static_cast<double>(total);
  const double bound = static_cast<double>(k) / static_cast<double>(n) / to_double(q_min);
  auto r = detail::make_report("famine-targets",
                               metric.label + " f=" + f.hex() + " k=" + std::to_string(k) + " q_min=" + to_string(q_min),
                               VerificationReport::Relation::AtMost, observed, bound, 0.0, passed);
  r.mode = detail::arithmetic_label<S>();
  r.add("qualifying", std::to_string(qualifying));
  r.add("targets", std::to_string(total));
  r.rows = std::move(rows);
  return r;
}

// ---------------------------------------------------------------------------
// Famine of forte: |R_q_min| / |R| <= p / q_min over tau_k x B
// ---------------------------------------------------------------------------

template <Scalar S>
VerificationReport famine_of_forte(const DecomposableMetric<S>& metric, const std::vector<InformationResource>& resources,
                                   std::size_t k, const S& q_min, bool collect_rows = false,
                                   std::size_t cap = kDefaultEnumerationCap) {
  detail::require_threshold(q_min);
  if (resources.empty()) throw std::invalid_argument("verify-forte: no information resources");
  const std::size_t n = resources.front().size();
  if (k == 0 || k > n) throw std::invalid_argument("verify-forte: requires 1 <= k <= n");
  const std::vector<TargetSet> targets = collect_targets(n, k, cap);

  std::uint64_t qualifying = 0;
  std::uint64_t best_per_resource = 0;
  std::vector<InstanceRow> rows;
  for (const InformationResource& f : resources) {
    if (f.size() != n) throw DimensionError("verify-forte: resources over different search spaces");
    const ProbabilityVector<S> p = metric.strategy(f);
    std::uint64_t count = 0;
    for (const TargetSet& t : targets) {
      const S phi = success_probability(t, p);
      const bool q = phi >= q_min;
      if (q) ++count;
      if (collect_rows) rows.push_back({detail::pair_label(t, f), to_double(phi), q});
    }
    qualifying += count;
    best_per_resource = std::max(best_per_resource, count);
  }
  const std::uint64_t pairs = targets.size() * resources.size();
  const bool passed = S(static_cast<std::int64_t>(qualifying * n)) * q_min <= S(static_cast<std::int64_t>(k * pairs));
  const double observed = static_cast<double>(qualifying) / static_cast<double>(pairs);
  const double sup_fraction = static_cast<double>(best_per_resource) / static_cast<double>(targets.size());
  const double bound = static_cast<double>(k) / static_cast<double>(n) / to_double(q_min);
  auto r = detail::make_report("forte",
                               metric.label + " |B|=" + std::to_string(resources.size()) + " k=" + std::to_string(k) +
                                   " q_min=" + to_string(q_min),
                               VerificationReport::Relation::AtMost, observed, bound, 0.0,
                               passed && qualifying * targets.size() <= best_per_resource * pairs);
  r.mode = detail::arithmetic_label<S>();
  r.add("qualifying", std::to_string(qualifying));
  r.add("pairs", std::to_string(pairs));
  r.add("sup_fraction", sup_fraction);
  r.rows = std::move(rows);
  return r;
}

// ---------------------------------------------------------------------------
// Learning under dependence: q <= (I(T;F) + D(P_T || U_T) + 1) / I_Ω
// ---------------------------------------------------------------------------

template <Scalar S>
VerificationReport learning_under_dependence(const JointTF& joint, const DecomposableMetric<S>& metric) {
  const std::size_t n = joint.space_size();
  const std::size_t k = joint.target_cardinality();
  if (k >= n) throw HypothesisError("verify-lud requires k < n (I_Omega = 0 when k = n)");
  if (k == 0) throw HypothesisError("verify-lud requires nonempty targets");

  double q = 0.0;
  for (const JointEntry& e : joint.entries()) {
    if (e.probability == 0.0) continue;
    q += e.probability * to_double(success_probability(e.target, metric.strategy(e.resource)));
  }
  const double info = mutual_information(joint);
  const std::vector<double> p_t = joint.target_marginal_over_family();
  const std::vector<double> u_t(p_t.size(), 1.0 / static_cast<double>(p_t.size()));
  const double divergence = kl_divergence(p_t, u_t);
  const double i_omega = endogenous_information(k, n);
  const double h_uniform = log2_binomial(n, k);
  const double h_cond = conditional_entropy(joint, Conditioning::TargetGivenResource);
  const double bound = (info + divergence + 1.0) / i_omega;
  const double alternative = (h_uniform - h_cond + 1.0) / i_omega;

  auto r = detail::make_report("lud", metric.label + " n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                          " pairs=" + std::to_string(joint.entries().size()),
                               VerificationReport::Relation::AtMost, q, bound, kTolerance, q <= bound + kTolerance);
  r.mode = detail::arithmetic_label<S>();
  r.add("mutual_information", info);
  r.add("kl_to_uniform", divergence);
  r.add("endogenous_information", i_omega);
  r.add("alternative_bound", alternative);
  r.add("forms_agree", std::abs(bound - alternative) <= kTolerance ? "true" : "false");
  return r;
}

// ---------------------------------------------------------------------------
// Famine of favorable information resources:
//   |{f in B : phi(t,f) >= q_min}| / |B| <= (p + Bias(B,t)) / q_min
// ---------------------------------------------------------------------------

template <Scalar S>
VerificationReport famine_favorable_resources(const DecomposableMetric<S>& metric,
                                              const std::vector<InformationResource>& resources, const TargetSet& t,
                                              const S& q_min, bool collect_rows = false) {
  detail::require_threshold(q_min);
  if (resources.empty()) throw std::invalid_argument("verify-famine-resources: empty resource set");
  const std::size_t n = t.size();
  const S p = ratio<S>(static_cast<std::int64_t>(t.cardinality()), static_cast<std::int64_t>(n));
  std::uint64_t qualifying = 0;
  S total_success = 0;
  std::vector<InstanceRow> rows;
  for (const InformationResource& f : resources) {
    if (f.size() != n) throw DimensionError("verify-famine-resources: resource over a different search space");
    const S phi = success_probability(t, metric.strategy(f));
    total_success += phi;
    const bool q = phi >= q_min;
    if (q) ++qualifying;
    if (collect_rows) rows.push_back({detail::pair_label(t, f), to_double(phi), q});
  }
  const S count = S(static_cast<std::int64_t>(resources.size()));
  const S bias_value = total_success / count - p;
  const S bound_exact = (p + bias_value) / q_min;
  const double observed = static_cast<double>(qualifying) / static_cast<double>(resources.size());
  bool passed = false;
  if constexpr (is_exact_v<S>) {
    passed = S(static_cast<std::int64_t>(qualifying)) / count <= bound_exact;
  } else {
    passed = observed <= bound_exact + kTolerance;
  }
  auto r = detail::make_report("famine-resources",
                               metric.label + " t=" + detail::hex_mask(t.mask()) + " |B|=" + std::to_string(resources.size()) +
                                   " q_min=" + to_string(q_min),
                               VerificationReport::Relation::AtMost, observed, to_double(bound_exact),
                               is_exact_v<S> ? 0.0 : kTolerance, passed);
  r.mode = detail::arithmetic_label<S>();
  r.add("bias", to_double(bias_value));
  r.add("qualifying", std::to_string(qualifying));
  r.rows = std::move(rows);
  return r;
}

// ---------------------------------------------------------------------------
// Futility of bias-free search: Bias(D,t) = 0  =>  Pr(w in t; A) = p
// ---------------------------------------------------------------------------

// Bias is computed from strategy vectors; the marginal success from `phi`
// (defaulting to the metric itself), so the identity marginal - p = Bias is
// checked across two evaluation routes when an independent `phi` is given.
template <Scalar S>
VerificationReport futility_check(const DecomposableMetric<S>& metric, const ResourceDistribution<S>& d, const TargetSet& t,
                                  const SuccessFunctional<S>& phi = {}) {
  const S p = ratio<S>(static_cast<std::int64_t>(t.cardinality()), static_cast<std::int64_t>(t.size()));
  const S bias_value = bias(d, t, metric);
  S marginal = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.weights()[i] == 0) continue;
    const S value = phi ? phi(t, d.support()[i]) : success_probability(t, metric.strategy(d.support()[i]));
    marginal += d.weights()[i] * value;
  }
  const bool bias_free = nearly_equal<S>(bias_value, S(0));
  const S expected = bias_free ? p : S(p + bias_value);
  const double tol = is_exact_v<S> ? 0.0 : kTolerance;
  auto r = detail::make_report("futility",
                               metric.label + " t=" + detail::hex_mask(t.mask()) + " |D|=" + std::to_string(d.size()),
                               VerificationReport::Relation::Equal, to_double(marginal), to_double(expected), tol,
                               nearly_equal<S>(marginal, expected, tol) && nearly_equal<S>(S(marginal - p), bias_value, tol));
  r.mode = detail::arithmetic_label<S>();
  r.add("bias", to_string(bias_value));
  r.add("p", to_string(p));
  r.add("bias_free", bias_free ? "true" : "false");
  return r;
}

// ---------------------------------------------------------------------------
// Famine of favorable biasing distributions (Monte Carlo over the simplex):
//   mu({D : Bias(D,t) >= q_min}) / mu(simplex) <= (p + Bias(B,t)) / q_min
// ---------------------------------------------------------------------------

inline constexpr std::size_t kMinSimplexSamples = 10'000;
inline constexpr double kWilsonZ99 = 2.5758293035489;

// Upper end of the Wilson score interval for `successes` out of `trials`.
inline double wilson_upper(std::uint64_t successes, std::uint64_t trials, double z = kWilsonZ99) {
  if (trials == 0) throw std::invalid_argument("wilson_upper: no trials");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = phat + z2 / (2.0 * n);
  const double spread = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  return std::min(1.0, (centre + spread) / (1.0 + z2 / n));
}

template <Scalar S>
VerificationReport favorable_bias_measure(const DecomposableMetric<S>& metric, const std::vector<InformationResource>& resources,
                                          const TargetSet& t, double q_min, std::size_t samples, std::uint64_t seed) {
  detail::require_threshold(q_min);
  if (samples < kMinSimplexSamples) {
    throw std::invalid_argument("verify-bias-measure: needs at least " + std::to_string(kMinSimplexSamples) + " samples");
  }
  if (resources.empty()) throw std::invalid_argument("verify-bias-measure: empty resource set");
  const double p = static_cast<double>(t.cardinality()) / static_cast<double>(t.size());
  std::vector<double> success;
  double mean = 0.0;
  for (const InformationResource& f : resources) {
    success.push_back(to_double(success_probability(t, metric.strategy(f))));
    mean += success.back();
  }
  mean /= static_cast<double>(resources.size());
  const double bias_uniform = mean - p;

  std::uint64_t qualifying = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const std::vector<double> d = simplex_sample(resources.size(), seed, s);
    double value = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) value += d[i] * success[i];
    if (value - p >= q_min) ++qualifying;
  }
  const double observed = static_cast<double>(qualifying) / static_cast<double>(samples);
  const double upper = wilson_upper(qualifying, samples);
  const double bound = (p + bias_uniform) / q_min;
  auto r = detail::make_report("bias-measure",
                               metric.label + " t=" + detail::hex_mask(t.mask()) + " |B|=" + std::to_string(resources.size()) +
                                   " q_min=" + to_string(q_min),
                               VerificationReport::Relation::AtMost, observed, bound, 0.0, upper <= bound);
  r.mode = "monte-carlo(samples=" + std::to_string(samples) + ",seed=" + std::to_string(seed) + ")";
  r.add("wilson_upper_99", upper);
  r.add("bias_uniform", bias_uniform);
  return r;
}

// ---------------------------------------------------------------------------
// Counting lemmata
// ---------------------------------------------------------------------------

// sum_{j<=d} C(n,j) <= (e n / d)^d
inline VerificationReport check_sauer_shelah(std::size_t n, std::size_t d) {
  if (d < 1 || d > n || n > 64) throw std::invalid_argument("sauer-shelah: requires 1 <= d <= n <= 64");
  using Float = boost::multiprecision::cpp_bin_float_50;
  const BigInt observed = binomial_prefix_sum(n, d);
  const Float bound = boost::multiprecision::pow(boost::multiprecision::exp(Float(1)) * Float(n) / Float(d), static_cast<int>(d));
  const Float lhs(observed);
  auto r = detail::make_report("sauer-shelah", "n=" + std::to_string(n) + " d=" + std::to_string(d),
                               VerificationReport::Relation::AtMost, observed.convert_to<double>(), bound.convert_to<double>(),
                               0.0, lhs <= bound);
  r.mode = "exact-integer";
  r.add("sum", observed.str());
  return r;
}

// sum_{j <= floor(n / 2^b)} C(n,j) <= 2^(n-b), for b >= 3 and n >= 2^b.
inline VerificationReport check_binomial_approx(std::size_t n, std::size_t b) {
  if (b < 3) throw HypothesisError("binomial approximation requires b ≥ 3 (got b = " + std::to_string(b) + ")");
  if (b >= 63 || n < (std::size_t{1} << b)) {
    throw HypothesisError("binomial approximation requires n ≥ 2^b (got n = " + std::to_string(n) + ", b = " +
                          std::to_string(b) + ")");
  }
  const BigInt observed = binomial_prefix_sum(n, n >> b);
  const BigInt bound = BigInt(1) << (n - b);
  auto r = detail::make_report("binomial-approx", "n=" + std::to_string(n) + " b=" + std::to_string(b),
                               VerificationReport::Relation::AtMost, observed.convert_to<double>(), bound.convert_to<double>(),
                               0.0, observed <= bound);
  r.mode = "exact-integer";
  r.add("sum", observed.str());
  r.add("power", bound.str());
  return r;
}

// |{k-hot s : s^T P >= eps}| <= C(n-1,k-1) / eps  (C(n,k) when eps = 0).
template <Scalar S>
VerificationReport check_max_satisfying_vectors(std::size_t k, const ProbabilityVector<S>& p, const S& eps,
                                                std::size_t cap = kDefaultEnumerationCap) {
  const std::size_t n = p.size();
  if (k < 1 || k > n) throw std::invalid_argument("max-satisfying-vectors: requires 1 <= k <= n");
  if (eps < 0 || eps > 1) throw std::invalid_argument("max-satisfying-vectors: eps must lie in [0, 1]");
  std::uint64_t count = 0;
  for (const TargetSet& s : enumerate_targets(n, k, cap)) {
    if (success_probability(s, p) >= eps) ++count;
  }
  const BigInt top = binomial(n - 1, k - 1);
  bool passed = false;
  double bound = 0.0;
  if (eps == 0) {
    const BigInt all = binomial(n, k);
    passed = BigInt(count) <= all;
    bound = all.convert_to<double>();
  } else {
    passed = S(static_cast<std::int64_t>(count)) * eps <= to_scalar<S>(top);
    bound = top.convert_to<double>() / to_double(eps);
  }
  auto r = detail::make_report("max-satisfying-vectors",
                               "n=" + std::to_string(n) + " k=" + std::to_string(k) + " eps=" + to_string(eps),
                               VerificationReport::Relation::AtMost, static_cast<double>(count), bound, 0.0, passed);
  r.mode = detail::arithmetic_label<S>();
  return r;
}

// True when observed fractions never increase as the thresholds increase.
inline bool nonincreasing_in_threshold(const std::vector<std::pair<double, double>>& threshold_fraction) {
  auto sorted = threshold_fraction;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].second > sorted[i - 1].second) return false;
  }
  return true;
}

}  // namespace algsearch
