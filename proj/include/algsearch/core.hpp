#pragma once
// Search problem primitives: search space, target sets, information
// resources, probability vectors, the black-box algorithm interface and the
// iterative sampling loop (sample, evaluate, append to history, ask the
// black box for the next distribution).

#include "algsearch/errors.hpp"
#include "algsearch/scalar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace algsearch {

inline constexpr std::size_t kDefaultEnumerationCap = 24;
inline constexpr std::uint64_t kDefaultResourceCap = std::uint64_t{1} << 20;
inline constexpr std::size_t kMaxSearchSpace = 64;

// ---------------------------------------------------------------------------
// SearchSpace
// ---------------------------------------------------------------------------

// Elements are the indices 0..n-1; only |Ω| and index identity matter.
class SearchSpace {
 public:
  explicit SearchSpace(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("search space must be nonempty");
    if (n > kMaxSearchSpace) throw CapError("search space larger than 64 elements");
  }

  std::size_t size() const { return n_; }

  // Exhaustive modes (target enumeration, decomposability checks) need n <= cap.
  void require_enumerable(std::size_t cap = kDefaultEnumerationCap) const {
    if (n_ > cap) {
      throw CapError("search space of " + std::to_string(n_) + " elements exceeds the enumeration cap of " +
                     std::to_string(cap));
    }
  }

 private:
  std::size_t n_;
};

// ---------------------------------------------------------------------------
// TargetSet
// ---------------------------------------------------------------------------

// k-hot indicator over Ω stored as a bitmask (bit i <=> element i).
class TargetSet {
 public:
  TargetSet(std::size_t n, std::uint64_t mask) : n_(n), mask_(mask) {
    if (n == 0 || n > kMaxSearchSpace) throw std::invalid_argument("target set: n must be in [1, 64]");
    if (n < 64 && (mask >> n) != 0) throw std::invalid_argument("target set: mask has bits outside the search space");
  }

  static TargetSet from_indices(std::size_t n, std::span<const std::size_t> indices) {
    std::uint64_t mask = 0;
    for (std::size_t i : indices) {
      if (i >= n) throw std::invalid_argument("target set: element " + std::to_string(i) + " outside search space");
      mask |= std::uint64_t{1} << i;
    }
    return TargetSet(n, mask);
  }
  static TargetSet from_indices(std::size_t n, std::initializer_list<std::size_t> indices) {
    return from_indices(n, std::span<const std::size_t>(indices.begin(), indices.size()));
  }
  static TargetSet singleton(std::size_t n, std::size_t i) { return from_indices(n, {i}); }
  static TargetSet full(std::size_t n) { return TargetSet(n, n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1); }

  std::size_t size() const { return n_; }
  std::size_t cardinality() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  std::uint64_t mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  bool contains(std::size_t i) const { return i < n_ && ((mask_ >> i) & 1U) != 0; }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    return out;
  }

  std::vector<std::uint8_t> indicator() const {
    std::vector<std::uint8_t> out(n_, 0);
    for (std::size_t i : elements()) out[i] = 1;
    return out;
  }

  auto operator<=>(const TargetSet&) const = default;

 private:
  std::size_t n_;
  std::uint64_t mask_;
};

// ---------------------------------------------------------------------------
// InformationResource
// ---------------------------------------------------------------------------

// Bits needed per value of a v-ary alphabet, ceil(log2 v).
inline std::size_t bits_per_value(std::uint32_t alphabet) {
  if (alphabet == 0) throw std::invalid_argument("alphabet size must be positive");
  return alphabet == 1 ? 0 : static_cast<std::size_t>(std::bit_width(alphabet - 1));
}

// Evaluation table f : Ω -> {0, ..., v-1}.
//
// Canonical encoding is a big-endian bit string of length m = n * ceil(log2 v)
// with element 0's value in the most significant bits. Integer order of the
// encoding equals lexicographic order of the table.
class InformationResource {
 public:
  InformationResource(std::vector<std::uint32_t> evaluations, std::uint32_t alphabet)
      : evaluations_(std::move(evaluations)), alphabet_(alphabet) {
    if (alphabet_ == 0) throw std::invalid_argument("alphabet size must be positive");
    if (evaluations_.empty()) throw std::invalid_argument("information resource must cover a nonempty space");
    if (evaluations_.size() > kMaxSearchSpace) throw CapError("information resource larger than 64 elements");
    for (std::uint32_t e : evaluations_) {
      if (e >= alphabet_) throw std::invalid_argument("evaluation " + std::to_string(e) + " outside alphabet");
    }
  }

  // Alphabet defaults to max(evaluations) + 1, at least 2.
  static InformationResource from_values(std::vector<std::uint32_t> evaluations) {
    std::uint32_t top = 1;
    for (std::uint32_t e : evaluations) top = std::max(top, e);
    return InformationResource(std::move(evaluations), top + 1);
  }

  std::size_t size() const { return evaluations_.size(); }
  std::uint32_t alphabet() const { return alphabet_; }
  std::uint32_t operator[](std::size_t i) const { return evaluations_.at(i); }
  std::span<const std::uint32_t> evaluations() const { return evaluations_; }
  std::size_t bit_length() const { return size() * bits_per_value(alphabet_); }

  std::vector<bool> encode() const {
    const std::size_t width = bits_per_value(alphabet_);
    std::vector<bool> bits;
    bits.reserve(bit_length());
    for (std::uint32_t e : evaluations_) {
      for (std::size_t b = width; b-- > 0;) bits.push_back(((e >> b) & 1U) != 0);
    }
    return bits;
  }

  static InformationResource decode(const std::vector<bool>& bits, std::size_t n, std::uint32_t alphabet) {
    const std::size_t width = bits_per_value(alphabet);
    if (bits.size() != n * width) {
      throw std::invalid_argument("resource decode: expected " + std::to_string(n * width) + " bits, got " +
                                  std::to_string(bits.size()));
    }
    std::vector<std::uint32_t> values(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t v = 0;
      for (std::size_t b = 0; b < width; ++b) v = (v << 1) | (bits[i * width + b] ? 1U : 0U);
      values[i] = v;
    }
    return InformationResource(std::move(values), alphabet);
  }

  // Hexadecimal form of the bit string, left-padded with zero bits to a
  // whole number of nibbles. An empty bit string (v = 1) is "0".
  std::string hex() const {
    std::vector<bool> bits = encode();
    const std::size_t pad = (4 - bits.size() % 4) % 4;
    bits.insert(bits.begin(), pad, false);
    if (bits.empty()) return "0";
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (std::size_t i = 0; i < bits.size(); i += 4) {
      const unsigned nibble = (bits[i] ? 8U : 0U) | (bits[i + 1] ? 4U : 0U) | (bits[i + 2] ? 2U : 0U) | (bits[i + 3] ? 1U : 0U);
      out.push_back(kDigits[nibble]);
    }
    return out;
  }

  static InformationResource from_hex(std::string_view hex, std::size_t n, std::uint32_t alphabet) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    if (hex.empty()) throw std::invalid_argument("resource decode: empty hex string");
    std::vector<bool> bits;
    for (char c : hex) {
      unsigned nibble = 0;
      if (c >= '0' && c <= '9') {
        nibble = static_cast<unsigned>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        nibble = static_cast<unsigned>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        nibble = static_cast<unsigned>(c - 'A' + 10);
      } else {
        throw std::invalid_argument("resource decode: bad hex digit '" + std::string(1, c) + "'");
      }
      for (int b = 3; b >= 0; --b) bits.push_back(((nibble >> b) & 1U) != 0);
    }
    const std::size_t m = n * bits_per_value(alphabet);
    while (bits.size() > m) {
      if (bits.front()) throw std::invalid_argument("resource decode: hex value wider than " + std::to_string(m) + " bits");
      bits.erase(bits.begin());
    }
    bits.insert(bits.begin(), m - bits.size(), false);
    return decode(bits, n, alphabet);
  }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < evaluations_.size(); ++i) {
      if (i != 0) out += ',';
      out += std::to_string(evaluations_[i]);
    }
    return out + ")";
  }

  auto operator<=>(const InformationResource&) const = default;

 private:
  std::vector<std::uint32_t> evaluations_;
  std::uint32_t alphabet_;
};

// ---------------------------------------------------------------------------
// ProbabilityVector
// ---------------------------------------------------------------------------

template <Scalar S>
class ProbabilityVector {
 public:
  ProbabilityVector() = default;

  // Validates: nonnegative entries summing to 1 (within 1e-9, exactly for Rational).
  explicit ProbabilityVector(std::vector<S> weights) : weights_(std::move(weights)) {
    if (auto problem = validation_error(weights_)) throw InvalidDistribution(*problem);
  }

  static ProbabilityVector uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform distribution over an empty space");
    return ProbabilityVector(std::vector<S>(n, ratio<S>(1, static_cast<std::int64_t>(n))));
  }

  static ProbabilityVector indicator(std::size_t n, std::size_t i) {
    if (i >= n) throw std::invalid_argument("point mass outside the search space");
    std::vector<S> w(n, S(0));
    w[i] = S(1);
    return ProbabilityVector(std::move(w));
  }

  static std::optional<std::string> validation_error(std::span<const S> weights) {
    if (weights.empty()) return "probability vector is empty";
    S total = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if constexpr (!is_exact_v<S>) {
        if (!std::isfinite(weights[i])) return "probability vector entry " + std::to_string(i) + " is not finite";
      }
      if (weights[i] < 0) return "probability vector entry " + std::to_string(i) + " is negative";
      total += weights[i];
    }
    if (!nearly_equal<S>(total, S(1))) return "probability vector sums to " + algsearch::to_string(total) + ", not 1";
    return std::nullopt;
  }

  std::size_t size() const { return weights_.size(); }
  const S& operator[](std::size_t i) const { return weights_[i]; }
  std::span<const S> weights() const { return weights_; }
  auto begin() const { return weights_.begin(); }
  auto end() const { return weights_.end(); }

  std::vector<double> as_doubles() const {
    std::vector<double> out;
    out.reserve(weights_.size());
    for (const S& w : weights_) out.push_back(to_double(w));
    return out;
  }

  bool operator==(const ProbabilityVector&) const = default;

 private:
  std::vector<S> weights_;
};

// ---------------------------------------------------------------------------
// Histories, algorithms, traces
// ---------------------------------------------------------------------------

struct SearchStep {
  std::size_t index = 0;
  std::uint32_t value = 0;
  bool operator==(const SearchStep&) const = default;
};

using SearchHistory = std::vector<SearchStep>;

// The black box: a pure function of (history, resource). It never sees the
// target; targets are only used to score.
template <Scalar S>
using DistributionRule = std::function<std::vector<S>(std::span<const SearchStep>, const InformationResource&)>;

template <Scalar S>
struct SearchAlgorithm {
  std::string name;
  DistributionRule<S> rule;

  // Applies the rule and validates its output against the resource's space.
  ProbabilityVector<S> next(std::span<const SearchStep> history, const InformationResource& f) const {
    std::vector<S> weights = rule(history, f);
    if (weights.size() != f.size()) {
      throw InvalidDistribution("algorithm '" + name + "' returned " + std::to_string(weights.size()) +
                                " weights for a space of " + std::to_string(f.size()));
    }
    if (auto problem = ProbabilityVector<S>::validation_error(weights)) {
      throw InvalidDistribution("algorithm '" + name + "': " + *problem);
    }
    return ProbabilityVector<S>(std::move(weights));
  }
};

template <Scalar S>
struct SearchTrace {
  std::vector<ProbabilityVector<S>> distributions;
  SearchHistory history;
};

// ---------------------------------------------------------------------------
// Seeded randomness
// ---------------------------------------------------------------------------

// splitmix64 finaliser; used to derive independent per-run / per-cell seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) { return mix64(mix64(master) ^ mix64(index + 1)); }

using Engine = std::mt19937_64;

// Uniform on [0, 1) with 53 random bits. Independent of the standard
// library's distribution implementations, so traces are portable.
inline double uniform01(Engine& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

// Uniform on (0, 1].
inline double uniform01_open_closed(Engine& engine) { return static_cast<double>((engine() >> 11) + 1) * 0x1.0p-53; }

// Uniform point on the probability simplex of dimension `dim` (symmetric
// Dirichlet(1) via normalised exponential variates). Counter-based: sample
// `index` depends only on (seed, index).
inline std::vector<double> simplex_sample(std::size_t dim, std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t base = derive_seed(seed, index);
  std::vector<double> x(dim);
  double total = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const std::uint64_t bits = mix64(base + 0x9e3779b97f4a7c15ULL * (i + 1));
    const double u = static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    x[i] = -std::log(u);
    total += x[i];
  }
  for (double& v : x) v /= total;
  return x;
}

// Table of n values drawn uniformly from {0, ..., alphabet - 1}.
inline InformationResource random_resource(std::size_t n, std::uint32_t alphabet, std::uint64_t seed) {
  if (n == 0 || alphabet == 0) throw std::invalid_argument("random_resource: n and alphabet must be positive");
  Engine engine(seed);
  std::vector<std::uint32_t> values(n);
  for (auto& x : values) x = static_cast<std::uint32_t>(uniform01(engine) * alphabet);
  return InformationResource(std::move(values), alphabet);
}

// Inverse-CDF draw; never returns a zero-weight index.
template <Scalar S>
std::size_t sample_index(const ProbabilityVector<S>& p, Engine& engine) {
  const std::vector<double> w = p.as_doubles();
  double total = 0.0;
  for (double x : w) total += x;
  const double u = uniform01(engine) * total;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] <= 0.0) continue;
    last_positive = i;
    cumulative += w[i];
    if (u < cumulative) return i;
  }
  return last_positive;
}

// ---------------------------------------------------------------------------
// The search loop
// ---------------------------------------------------------------------------

template <Scalar S>
SearchTrace<S> run_search(const SearchAlgorithm<S>& alg, const InformationResource& f, std::size_t steps,
                          std::uint64_t seed) {
  if (steps == 0) throw std::invalid_argument("run_search: steps must be at least 1");
  Engine engine(seed);
  SearchTrace<S> trace;
  trace.distributions.reserve(steps);
  trace.history.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    ProbabilityVector<S> p = alg.next(trace.history, f);
    const std::size_t x = sample_index(p, engine);
    trace.history.push_back({x, f[x]});
    trace.distributions.push_back(std::move(p));
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Enumerations
// ---------------------------------------------------------------------------

// All k-subsets (Gosper's hack, increasing mask order) or all 2^n subsets
// including the empty set.
class TargetRange {
 public:
  class iterator {
   public:
    using value_type = TargetSet;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(const TargetRange* range, std::uint64_t mask, bool done) : range_(range), mask_(mask), done_(done) {}

    TargetSet operator*() const { return TargetSet(range_->n_, mask_); }
    iterator& operator++() {
      const std::uint64_t limit = range_->n_ == 64 ? 0 : (std::uint64_t{1} << range_->n_);
      if (range_->k_) {
        if (mask_ == 0) {
          done_ = true;
          return *this;
        }
        const std::uint64_t c = mask_ & (~mask_ + 1);
        const std::uint64_t r = mask_ + c;
        const std::uint64_t next = (((r ^ mask_) >> 2) / c) | r;
        if (r == 0 || next >= limit) {
          done_ = true;
        } else {
          mask_ = next;
        }
      } else {
        if (mask_ + 1 >= limit) {
          done_ = true;
        } else {
          ++mask_;
        }
      }
      return *this;
    }
    void operator++(int) { ++*this; }
    bool operator==(const iterator& other) const {
      return done_ == other.done_ && (done_ || mask_ == other.mask_);
    }

   private:
    const TargetRange* range_ = nullptr;
    std::uint64_t mask_ = 0;
    bool done_ = true;
  };

  TargetRange(std::size_t n, std::optional<std::size_t> k) : n_(n), k_(k) {}

  iterator begin() const {
    if (k_ && *k_ > n_) return end();
    const std::uint64_t first = k_ ? (*k_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << *k_) - 1) : 0;
    return iterator(this, first, false);
  }
  iterator end() const { return iterator(this, 0, true); }

  std::size_t n() const { return n_; }

 private:
  std::size_t n_;
  std::optional<std::size_t> k_;
};

inline TargetRange enumerate_targets(std::size_t n, std::optional<std::size_t> k = std::nullopt,
                                     std::size_t cap = kDefaultEnumerationCap) {
  if (n == 0) throw std::invalid_argument("enumerate_targets: n must be positive");
  if (n > cap) {
    throw CapError("enumerate_targets: n = " + std::to_string(n) + " exceeds the enumeration cap of " +
                   std::to_string(cap));
  }
  if (k && *k > n) throw std::invalid_argument("enumerate_targets: k exceeds n");
  return TargetRange(n, k);
}

inline std::vector<TargetSet> collect_targets(std::size_t n, std::optional<std::size_t> k = std::nullopt,
                                              std::size_t cap = kDefaultEnumerationCap) {
  std::vector<TargetSet> out;
  for (const TargetSet& t : enumerate_targets(n, k, cap)) out.push_back(t);
  return out;
}

// v^n, or nullopt when it exceeds `limit`.
inline std::optional<std::uint64_t> checked_power(std::uint64_t base, std::size_t exponent, std::uint64_t limit) {
  std::uint64_t value = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && value > limit / base) return std::nullopt;
    value *= base;
  }
  if (value > limit) return std::nullopt;
  return value;
}

// All v^n evaluation tables in increasing order of their integer encoding.
class ResourceRange {
 public:
  class iterator {
   public:
    using value_type = InformationResource;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(const ResourceRange* range, std::uint64_t code) : range_(range), code_(code) {}

    InformationResource operator*() const { return range_->at(code_); }
    iterator& operator++() {
      ++code_;
      return *this;
    }
    void operator++(int) { ++code_; }
    bool operator==(const iterator& other) const { return code_ == other.code_; }

   private:
    const ResourceRange* range_ = nullptr;
    std::uint64_t code_ = 0;
  };

  ResourceRange(std::size_t n, std::uint32_t alphabet, std::uint64_t count) : n_(n), alphabet_(alphabet), count_(count) {}

  InformationResource at(std::uint64_t code) const {
    std::vector<std::uint32_t> values(n_, 0);
    for (std::size_t i = n_; i-- > 0;) {
      values[i] = static_cast<std::uint32_t>(code % alphabet_);
      code /= alphabet_;
    }
    return InformationResource(std::move(values), alphabet_);
  }

  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, count_); }
  std::uint64_t size() const { return count_; }

 private:
  std::size_t n_;
  std::uint32_t alphabet_;
  std::uint64_t count_;
};

inline ResourceRange enumerate_resources(std::size_t n, std::uint32_t alphabet, std::uint64_t cap = kDefaultResourceCap) {
  if (n == 0) throw std::invalid_argument("enumerate_resources: n must be positive");
  if (alphabet == 0) throw std::invalid_argument("enumerate_resources: alphabet must be positive");
  const auto count = checked_power(alphabet, n, cap);
  if (!count) {
    throw CapError("enumerate_resources: " + std::to_string(alphabet) + "^" + std::to_string(n) +
                   " tables exceed the cap of " + std::to_string(cap));
  }
  return ResourceRange(n, alphabet, *count);
}

inline std::vector<InformationResource> collect_resources(std::size_t n, std::uint32_t alphabet,
                                                          std::uint64_t cap = kDefaultResourceCap) {
  std::vector<InformationResource> out;
  for (const InformationResource& f : enumerate_resources(n, alphabet, cap)) out.push_back(f);
  return out;
}

}  // namespace algsearch
