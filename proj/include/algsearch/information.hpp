#pragma once
// Bias of resource distributions towards a target, marginal success, and
// the Shannon quantities used by the learning-under-dependence bound.
// All logarithms are base 2.

#include "algsearch/combinatorics.hpp"
#include "algsearch/core.hpp"
#include "algsearch/metrics.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace algsearch {

// ---------------------------------------------------------------------------
// Resource distributions and bias
// ---------------------------------------------------------------------------

// Finite-support distribution D over information resources.
template <Scalar S>
class ResourceDistribution {
 public:
  ResourceDistribution(std::vector<InformationResource> support, std::vector<S> weights)
      : support_(std::move(support)), weights_(std::move(weights)) {
    if (support_.empty()) throw std::invalid_argument("resource distribution: empty support");
    if (support_.size() != weights_.size()) throw DimensionError("resource distribution: one weight per resource required");
    S total = 0;
    for (const S& w : weights_) {
      if (w < 0) throw std::invalid_argument("resource distribution: negative weight");
      total += w;
    }
    if (!nearly_equal<S>(total, S(1), 1e-12)) throw std::invalid_argument("resource distribution: weights sum to " + to_string(total));
    std::set<InformationResource> distinct(support_.begin(), support_.end());
    if (distinct.size() != support_.size()) throw std::invalid_argument("resource distribution: repeated resource in support");
    for (const InformationResource& f : support_) {
      if (f.size() != support_.front().size()) throw DimensionError("resource distribution: resources over different spaces");
    }
  }

  static ResourceDistribution uniform(std::vector<InformationResource> support) {
    const auto count = static_cast<std::int64_t>(support.size());
    if (count == 0) throw std::invalid_argument("resource distribution: empty support");
    return ResourceDistribution(std::move(support), std::vector<S>(static_cast<std::size_t>(count), ratio<S>(1, count)));
  }

  std::size_t size() const { return support_.size(); }
  std::size_t space_size() const { return support_.front().size(); }
  const std::vector<InformationResource>& support() const { return support_; }
  const std::vector<S>& weights() const { return weights_; }

 private:
  std::vector<InformationResource> support_;
  std::vector<S> weights_;
};

// sum_f D(f) t^T P_{phi,f}: the probability that the metric's sample lands in
// t when the resource is drawn from D.
template <Scalar S>
S marginal_success(const ResourceDistribution<S>& d, const TargetSet& t, const DecomposableMetric<S>& metric) {
  if (t.size() != d.space_size()) throw DimensionError("target and resources cover different search spaces");
  S total = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d.weights()[i] == 0) continue;
    total += d.weights()[i] * success_probability(t, metric.strategy(d.support()[i]));
  }
  return total;
}

// Bias(D, t) = E_D[t^T P_{phi,F}] - k/n.
template <Scalar S>
S bias(const ResourceDistribution<S>& d, const TargetSet& t, const DecomposableMetric<S>& metric) {
  return marginal_success(d, t, metric) -
         ratio<S>(static_cast<std::int64_t>(t.cardinality()), static_cast<std::int64_t>(t.size()));
}

// Bias(B, t): bias under the uniform distribution over a resource list.
template <Scalar S>
S uniform_bias(const std::vector<InformationResource>& resources, const TargetSet& t, const DecomposableMetric<S>& metric) {
  return bias(ResourceDistribution<S>::uniform(resources), t, metric);
}

// ---------------------------------------------------------------------------
// Joint distributions over (target, resource)
// ---------------------------------------------------------------------------

struct JointEntry {
  TargetSet target;
  InformationResource resource;
  double probability = 0.0;
};

// Probability mass over (T, F) pairs; every target has the same cardinality k.
class JointTF {
 public:
  explicit JointTF(std::vector<JointEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("joint distribution: no entries");
    const std::size_t n = entries_.front().target.size();
    k_ = entries_.front().target.cardinality();
    double total = 0.0;
    std::set<std::pair<std::uint64_t, InformationResource>> seen;
    for (const JointEntry& e : entries_) {
      if (!(e.probability >= 0.0) || !std::isfinite(e.probability)) throw std::invalid_argument("joint distribution: invalid mass");
      if (e.target.size() != n || e.resource.size() != n) throw DimensionError("joint distribution: mixed search-space sizes");
      if (e.target.cardinality() != k_) throw std::invalid_argument("joint distribution: targets of different cardinalities");
      if (!seen.emplace(e.target.mask(), e.resource).second) throw std::invalid_argument("joint distribution: repeated (T, F) pair");
      total += e.probability;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("joint distribution: masses sum to " + to_string(total));
  }

  const std::vector<JointEntry>& entries() const { return entries_; }
  std::size_t space_size() const { return entries_.front().target.size(); }
  std::size_t target_cardinality() const { return k_; }

  std::map<std::uint64_t, double> target_marginal() const {
    std::map<std::uint64_t, double> out;
    for (const JointEntry& e : entries_) out[e.target.mask()] += e.probability;
    return out;
  }

  std::map<InformationResource, double> resource_marginal() const {
    std::map<InformationResource, double> out;
    for (const JointEntry& e : entries_) out[e.resource] += e.probability;
    return out;
  }

  // P_T laid out over every k-subset of Ω in enumeration order (zeros included).
  std::vector<double> target_marginal_over_family() const {
    const auto marginal = target_marginal();
    std::vector<double> out;
    for (const TargetSet& t : enumerate_targets(space_size(), k_, kMaxSearchSpace)) {
      auto it = marginal.find(t.mask());
      out.push_back(it == marginal.end() ? 0.0 : it->second);
    }
    return out;
  }

 private:
  std::vector<JointEntry> entries_;
  std::size_t k_ = 0;
};

// Uniformly random joint over every (k-subset, resource) pair; the masses are
// one simplex draw, so some pairs may carry negligible weight.
inline JointTF random_joint(std::size_t n, std::size_t k, const std::vector<InformationResource>& resources,
                            std::uint64_t seed) {
  const std::vector<TargetSet> targets = collect_targets(n, k);
  const std::vector<double> mass = simplex_sample(targets.size() * resources.size(), seed, 0);
  std::vector<JointEntry> entries;
  std::size_t i = 0;
  for (const TargetSet& t : targets) {
    for (const InformationResource& f : resources) entries.push_back({t, f, mass[i++]});
  }
  return JointTF(std::move(entries));
}

// T uniform over singletons, F the indicator table of T (binary alphabet).
inline JointTF informative_joint(std::size_t n) {
  std::vector<JointEntry> entries;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> values(n, 0);
    values[i] = 1;
    entries.push_back({TargetSet::singleton(n, i), InformationResource(std::move(values), 2), 1.0 / static_cast<double>(n)});
  }
  return JointTF(std::move(entries));
}

// T uniform over k-subsets and F uniform over `resources`, independently.
inline JointTF independent_joint(std::size_t n, std::size_t k, const std::vector<InformationResource>& resources) {
  const std::vector<TargetSet> targets = collect_targets(n, k);
  const double mass = 1.0 / static_cast<double>(targets.size() * resources.size());
  std::vector<JointEntry> entries;
  for (const TargetSet& t : targets) {
    for (const InformationResource& f : resources) entries.push_back({t, f, mass});
  }
  return JointTF(std::move(entries));
}

// CSV rows "target,resource,probability": target as a bitmask (decimal or
// 0x-prefixed hex), resource as its hexadecimal encoding. A header row is
// optional.
inline JointTF load_joint_csv(std::istream& in, std::size_t n, std::uint32_t alphabet) {
  std::vector<JointEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 3) throw std::invalid_argument("joint csv line " + std::to_string(line_no) + ": expected 3 columns");
    if (line_no == 1 && cells[0] == "target") continue;
    try {
      const std::uint64_t mask = std::stoull(cells[0], nullptr, 0);
      entries.push_back({TargetSet(n, mask), InformationResource::from_hex(cells[1], n, alphabet), std::stod(cells[2])});
    } catch (const std::exception& e) {
      throw std::invalid_argument("joint csv line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return JointTF(std::move(entries));
}

inline void write_joint_csv(std::ostream& out, const JointTF& joint) {
  out << "target,resource,probability\n";
  for (const JointEntry& e : joint.entries()) {
    char mask[24];
    std::snprintf(mask, sizeof mask, "0x%llx", static_cast<unsigned long long>(e.target.mask()));
    char prob[40];
    std::snprintf(prob, sizeof prob, "%.17g", e.probability);
    out << mask << ',' << e.resource.hex() << ',' << prob << '\n';
  }
}

// ---------------------------------------------------------------------------
// Shannon quantities (bits)
// ---------------------------------------------------------------------------

namespace detail {

inline void require_distribution(std::span<const double> p, const char* what) {
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument(std::string(what) + ": invalid probability");
    total += x;
  }
  if (std::abs(total - 1.0) > kTolerance) throw std::invalid_argument(std::string(what) + ": probabilities do not sum to 1");
}

inline double plogp(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace detail

inline double entropy(std::span<const double> p) {
  detail::require_distribution(p, "entropy");
  double h = 0.0;
  for (double x : p) h -= detail::plogp(x);
  return h;
}

// D(p || q); +infinity when p is not absolutely continuous w.r.t. q.
inline double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DimensionError("kl_divergence: distributions of different lengths");
  detail::require_distribution(p, "kl_divergence");
  detail::require_distribution(q, "kl_divergence");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return d;
}

enum class Conditioning { TargetGivenResource, ResourceGivenTarget };

inline double joint_entropy(const JointTF& joint) {
  double h = 0.0;
  for (const JointEntry& e : joint.entries()) h -= detail::plogp(e.probability);
  return h;
}

inline double target_entropy(const JointTF& joint) {
  double h = 0.0;
  for (const auto& [mask, p] : joint.target_marginal()) h -= detail::plogp(p);
  return h;
}

inline double resource_entropy(const JointTF& joint) {
  double h = 0.0;
  for (const auto& [f, p] : joint.resource_marginal()) h -= detail::plogp(p);
  return h;
}

// H(T|F) = H(T,F) - H(F), or H(F|T) = H(T,F) - H(T).
inline double conditional_entropy(const JointTF& joint, Conditioning direction = Conditioning::TargetGivenResource) {
  const double h = joint_entropy(joint) -
                   (direction == Conditioning::TargetGivenResource ? resource_entropy(joint) : target_entropy(joint));
  return std::max(h, 0.0);
}

// I(T;F) = H(T) - H(T|F).
inline double mutual_information(const JointTF& joint) {
  return target_entropy(joint) - conditional_entropy(joint, Conditioning::TargetGivenResource);
}

// I(T;F) = sum p(t,f) log2 p(t,f) / (p(t) p(f)).
inline double mutual_information_direct(const JointTF& joint) {
  const auto pt = joint.target_marginal();
  const auto pf = joint.resource_marginal();
  double info = 0.0;
  for (const JointEntry& e : joint.entries()) {
    if (e.probability == 0.0) continue;
    info += e.probability * std::log2(e.probability / (pt.at(e.target.mask()) * pf.at(e.resource)));
  }
  return info;
}

// I_Ω = -log2(k / n).
inline double endogenous_information(std::size_t k, std::size_t n) {
  if (k == 0 || k > n) throw std::invalid_argument("endogenous_information: requires 1 <= k <= n");
  return std::log2(static_cast<double>(n) / static_cast<double>(k));
}

// log2 C(n, k): entropy of the uniform distribution over k-subsets.
inline double log2_binomial(std::size_t n, std::size_t k) { return std::log2(binomial(n, k).convert_to<double>()); }

}  // namespace algsearch
