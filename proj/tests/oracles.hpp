#pragma once
// Brute-force reference computations. They use only the raw algorithm rules
// and plain loops, never the library's tree walker, verifiers or entropy code.

#include "algsearch/algsearch.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using algsearch::InformationResource;
using algsearch::Rational;
using algsearch::SearchAlgorithm;
using algsearch::SearchStep;
using algsearch::TargetSet;

// P_{alpha,f} by summing over every one of the n^L element sequences.
template <class S>
std::vector<S> strategy(const SearchAlgorithm<S>& alg, const InformationResource& f, const std::vector<S>& alpha) {
  const std::size_t n = f.size();
  const std::size_t L = alpha.size();
  std::size_t sequences = 1;
  for (std::size_t i = 0; i < L; ++i) sequences *= n;
  std::vector<S> acc(n, S(0));
  std::vector<std::size_t> seq(L);
  for (std::size_t code = 0; code < sequences; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < L; ++i) {
      seq[i] = c % n;
      c /= n;
    }
    S prob = 1;
    std::vector<SearchStep> history;
    std::vector<std::vector<S>> dists;
    for (std::size_t i = 0; i < L; ++i) {
      dists.push_back(alg.rule(history, f));
      prob *= dists.back()[seq[i]];
      history.push_back({seq[i], f[seq[i]]});
    }
    if (prob == 0) continue;
    for (std::size_t i = 0; i < L; ++i) {
      for (std::size_t j = 0; j < n; ++j) acc[j] += prob * alpha[i] * dists[i][j];
    }
  }
  return acc;
}

template <class S>
S dot(const TargetSet& t, const std::vector<S>& p) {
  S total = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if ((t.mask() >> j) & 1u) total += p[j];
  }
  return total;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::vector<std::vector<std::uint64_t>> c(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (std::uint64_t i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (std::uint64_t j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
  }
  return c[n][k];
}

inline std::vector<std::uint64_t> masks_of_size(std::size_t n, std::size_t k) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (static_cast<std::size_t>(__builtin_popcountll(m)) == k) out.push_back(m);
  }
  return out;
}

// I(T;F) straight from the definition sum p(t,f) log2(p(t,f) / p(t) p(f)).
inline double mutual_information(const algsearch::JointTF& joint) {
  std::map<std::uint64_t, double> pt;
  std::map<InformationResource, double> pf;
  for (const auto& e : joint.entries()) {
    pt[e.target.mask()] += e.probability;
    pf[e.resource] += e.probability;
  }
  double info = 0.0;
  for (const auto& e : joint.entries()) {
    if (e.probability > 0.0) {
      info += e.probability * std::log2(e.probability / (pt[e.target.mask()] * pf[e.resource]));
    }
  }
  return info;
}

inline double entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

}  // namespace oracle
