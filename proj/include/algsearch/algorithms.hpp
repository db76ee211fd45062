#pragma once
// A stable of concrete black-box search algorithms.
//
// Every rule is a pure function of (history, resource). Rules that only use
// rational operations are available in both scalar modes; fitness-
// proportional needs exp() and is floating only.

#include "algsearch/core.hpp"

#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace algsearch {

enum class AlgorithmKind {
  Uniform,
  PointMass,
  Greedy,
  FitnessProportional,
  HistoryAvoiding,
  EpsilonGreedy,
  TableArgmax,  // point mass on the lowest-index argmax of the whole table
};

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::Uniform;
  std::size_t index = 0;        // point-mass
  Rational exploit_mass = 1;    // greedy: mass on the best element seen so far
  double temperature = 1.0;     // fitness-proportional
  Rational epsilon = 0;         // epsilon-greedy: uniform mixing rate

  static AlgorithmSpec uniform() { return {}; }
  static AlgorithmSpec point_mass(std::size_t i) {
    AlgorithmSpec s;
    s.kind = AlgorithmKind::PointMass;
    s.index = i;
    return s;
  }
  static AlgorithmSpec greedy(Rational mass = 1) {
    AlgorithmSpec s;
    s.kind = AlgorithmKind::Greedy;
    s.exploit_mass = std::move(mass);
    return s;
  }
  static AlgorithmSpec fitness_proportional(double temperature) {
    AlgorithmSpec s;
    s.kind = AlgorithmKind::FitnessProportional;
    s.temperature = temperature;
    return s;
  }
  static AlgorithmSpec history_avoiding() {
    AlgorithmSpec s;
    s.kind = AlgorithmKind::HistoryAvoiding;
    return s;
  }
  static AlgorithmSpec epsilon_greedy(Rational epsilon) {
    AlgorithmSpec s;
    s.kind = AlgorithmKind::EpsilonGreedy;
    s.epsilon = std::move(epsilon);
    return s;
  }
  static AlgorithmSpec table_argmax() {
    AlgorithmSpec s;
    s.kind = AlgorithmKind::TableArgmax;
    return s;
  }

  void validate() const {
    switch (kind) {
      case AlgorithmKind::Greedy:
        if (exploit_mass <= 0 || exploit_mass > 1) throw std::invalid_argument("greedy: mass must lie in (0, 1]");
        break;
      case AlgorithmKind::FitnessProportional:
        if (!(temperature > 0.0) || !std::isfinite(temperature)) {
          throw std::invalid_argument("fitness-proportional: temperature must be positive");
        }
        break;
      case AlgorithmKind::EpsilonGreedy:
        if (epsilon < 0 || epsilon > 1) throw std::invalid_argument("epsilon-greedy: epsilon must lie in [0, 1]");
        break;
      default:
        break;
    }
  }

  // Canonical "kind:key=value" label, also accepted by parse_algorithm_spec.
  std::string label() const {
    switch (kind) {
      case AlgorithmKind::Uniform:
        return "uniform";
      case AlgorithmKind::PointMass:
        return "point-mass:index=" + std::to_string(index);
      case AlgorithmKind::Greedy:
        return exploit_mass == 1 ? "greedy" : "greedy:mass=" + to_string(exploit_mass);
      case AlgorithmKind::FitnessProportional:
        return "fitness-proportional:temperature=" + to_string(temperature);
      case AlgorithmKind::HistoryAvoiding:
        return "history-avoiding";
      case AlgorithmKind::EpsilonGreedy:
        return "epsilon-greedy:epsilon=" + to_string(epsilon);
      case AlgorithmKind::TableArgmax:
        return "table-argmax";
    }
    return "unknown";
  }
};

namespace detail {

inline std::map<std::string, std::string, std::less<>> parse_parameters(std::string_view text) {
  std::map<std::string, std::string, std::less<>> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw std::invalid_argument("expected key=value parameter, got '" + std::string(item) + "'");
    }
    out.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace detail

// Parses "kind[:key=value,...]", e.g. "point-mass:index=0", "greedy:mass=3/4",
// "epsilon-greedy:epsilon=0.1", "fitness-proportional:temperature=0.5".
inline AlgorithmSpec parse_algorithm_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  auto params = detail::parse_parameters(colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1));
  auto take = [&](std::string_view key) -> std::optional<std::string> {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    std::string value = it->second;
    params.erase(it);
    return value;
  };

  AlgorithmSpec spec;
  if (kind == "uniform") {
    spec = AlgorithmSpec::uniform();
  } else if (kind == "point-mass") {
    const auto index = take("index");
    if (!index) throw std::invalid_argument("point-mass requires index=<element>");
    spec = AlgorithmSpec::point_mass(std::stoul(*index));
  } else if (kind == "greedy") {
    const auto mass = take("mass");
    spec = AlgorithmSpec::greedy(mass ? parse_scalar<Rational>(*mass) : Rational(1));
  } else if (kind == "fitness-proportional") {
    const auto temperature = take("temperature");
    spec = AlgorithmSpec::fitness_proportional(temperature ? parse_scalar<double>(*temperature) : 1.0);
  } else if (kind == "history-avoiding") {
    spec = AlgorithmSpec::history_avoiding();
  } else if (kind == "epsilon-greedy") {
    const auto epsilon = take("epsilon");
    if (!epsilon) throw std::invalid_argument("epsilon-greedy requires epsilon=<rate>");
    spec = AlgorithmSpec::epsilon_greedy(parse_scalar<Rational>(*epsilon));
  } else if (kind == "table-argmax") {
    spec = AlgorithmSpec::table_argmax();
  } else {
    throw std::invalid_argument("unknown algorithm kind '" + std::string(kind) + "'");
  }
  if (!params.empty()) {
    throw std::invalid_argument("unknown parameter '" + params.begin()->first + "' for algorithm '" + std::string(kind) + "'");
  }
  spec.validate();
  return spec;
}

namespace detail {

template <Scalar S>
S convert(const Rational& x) {
  if constexpr (is_exact_v<S>) {
    return x;
  } else {
    return to_double(x);
  }
}

template <Scalar S>
std::vector<S> uniform_weights(std::size_t n) {
  return std::vector<S>(n, ratio<S>(1, static_cast<std::int64_t>(n)));
}

// Best element seen so far: highest value, lowest index among ties.
inline std::size_t best_seen(std::span<const SearchStep> history) {
  std::size_t best = history.front().index;
  std::uint32_t best_value = history.front().value;
  for (const SearchStep& s : history) {
    if (s.value > best_value || (s.value == best_value && s.index < best)) {
      best = s.index;
      best_value = s.value;
    }
  }
  return best;
}

inline std::vector<bool> seen_mask(std::span<const SearchStep> history, std::size_t n) {
  std::vector<bool> seen(n, false);
  for (const SearchStep& s : history) seen.at(s.index) = true;
  return seen;
}

// mass on the best seen element, the rest spread uniformly over unseen
// elements (over every element once all have been seen).
template <Scalar S>
std::vector<S> greedy_weights(std::span<const SearchStep> history, const InformationResource& f, const S& mass) {
  const std::size_t n = f.size();
  if (history.empty()) return uniform_weights<S>(n);
  std::vector<S> w(n, S(0));
  w[best_seen(history)] += mass;
  const S rest = S(1) - mass;
  if (rest == 0) return w;
  const std::vector<bool> seen = seen_mask(history, n);
  const auto unseen = static_cast<std::int64_t>(std::count(seen.begin(), seen.end(), false));
  const S share = rest * (unseen > 0 ? ratio<S>(1, unseen) : ratio<S>(1, static_cast<std::int64_t>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    if (unseen == 0 || !seen[i]) w[i] += share;
  }
  return w;
}

}  // namespace detail

template <Scalar S>
SearchAlgorithm<S> make_algorithm(const AlgorithmSpec& spec) {
  spec.validate();
  SearchAlgorithm<S> alg;
  alg.name = spec.label();
  switch (spec.kind) {
    case AlgorithmKind::Uniform:
      alg.rule = [](std::span<const SearchStep>, const InformationResource& f) { return detail::uniform_weights<S>(f.size()); };
      break;
    case AlgorithmKind::PointMass:
      alg.rule = [i = spec.index](std::span<const SearchStep>, const InformationResource& f) {
        if (i >= f.size()) {
          throw std::invalid_argument("point-mass index " + std::to_string(i) + " outside a search space of " +
                                      std::to_string(f.size()));
        }
        std::vector<S> w(f.size(), S(0));
        w[i] = S(1);
        return w;
      };
      break;
    case AlgorithmKind::Greedy:
      alg.rule = [mass = detail::convert<S>(spec.exploit_mass)](std::span<const SearchStep> h, const InformationResource& f) {
        return detail::greedy_weights<S>(h, f, mass);
      };
      break;
    case AlgorithmKind::FitnessProportional:
      if constexpr (is_exact_v<S>) {
        throw std::invalid_argument("fitness-proportional has no exact rational form; use floating arithmetic");
      } else {
        alg.rule = [temperature = spec.temperature](std::span<const SearchStep>, const InformationResource& f) {
          std::uint32_t top = 0;
          for (std::uint32_t e : f.evaluations()) top = std::max(top, e);
          std::vector<double> w(f.size());
          double total = 0.0;
          for (std::size_t j = 0; j < f.size(); ++j) {
            w[j] = std::exp((static_cast<double>(f[j]) - static_cast<double>(top)) / temperature);
            total += w[j];
          }
          for (double& x : w) x /= total;
          return w;
        };
      }
      break;
    case AlgorithmKind::HistoryAvoiding:
      alg.rule = [](std::span<const SearchStep> h, const InformationResource& f) {
        const std::size_t n = f.size();
        const std::vector<bool> seen = detail::seen_mask(h, n);
        const auto unseen = static_cast<std::int64_t>(std::count(seen.begin(), seen.end(), false));
        if (unseen == 0) return detail::uniform_weights<S>(n);
        std::vector<S> w(n, S(0));
        const S share = ratio<S>(1, unseen);
        for (std::size_t i = 0; i < n; ++i) {
          if (!seen[i]) w[i] = share;
        }
        return w;
      };
      break;
    case AlgorithmKind::EpsilonGreedy:
      alg.rule = [eps = detail::convert<S>(spec.epsilon)](std::span<const SearchStep> h, const InformationResource& f) {
        std::vector<S> w = detail::greedy_weights<S>(h, f, S(1));
        const S share = eps * ratio<S>(1, static_cast<std::int64_t>(f.size()));
        for (S& x : w) x = (S(1) - eps) * x + share;
        return w;
      };
      break;
    case AlgorithmKind::TableArgmax:
      alg.rule = [](std::span<const SearchStep>, const InformationResource& f) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < f.size(); ++j) {
          if (f[j] > f[best]) best = j;
        }
        std::vector<S> w(f.size(), S(0));
        w[best] = S(1);
        return w;
      };
      break;
  }
  return alg;
}

template <Scalar S>
SearchAlgorithm<S> make_algorithm(std::string_view spec) {
  return make_algorithm<S>(parse_algorithm_spec(spec));
}

}  // namespace algsearch
