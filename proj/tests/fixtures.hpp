#pragma once
// Shared test fixtures.

#include "algsearch/algsearch.hpp"

#include <map>
#include <string>
#include <vector>

namespace fixtures {

using namespace algsearch;

// Algorithms defined in both scalar modes.
inline const std::vector<std::string>& exact_algorithms() {
  static const std::vector<std::string> specs{
      "uniform",        "point-mass:index=0",         "greedy",      "greedy:mass=3/4",
      "history-avoiding", "epsilon-greedy:epsilon=1/10", "table-argmax",
  };
  return specs;
}

inline std::vector<std::string> floating_algorithms() {
  std::vector<std::string> specs = exact_algorithms();
  specs.push_back("fitness-proportional:temperature=0.5");
  return specs;
}

// Small resources with n <= 6 over binary and ternary alphabets.
inline std::vector<InformationResource> small_resources() {
  return {
      InformationResource({0, 1, 1}, 2),
      InformationResource({2, 0, 1, 2}, 3),
      InformationResource({0, 1, 0, 0}, 2),
      InformationResource({3, 2, 1, 0}, 4),
      InformationResource({1, 0, 2, 2, 0, 1}, 3),
      InformationResource({0, 0, 1, 0, 1, 1}, 2),
  };
}

// Two resources that are each other's mirror image under i -> n-1-i. A
// greedy rule with lowest-index tie-breaking sees the target {0,1} with
// success p + delta on one and p - delta on the other.
inline InformationResource mirrored_first() { return InformationResource({3, 2, 1, 0}, 4); }
inline InformationResource mirrored_second() { return InformationResource({0, 1, 2, 3}, 4); }
inline TargetSet mirrored_target() { return TargetSet::from_indices(4, {0, 1}); }

// A metric given by an explicit resource -> strategy table.
template <Scalar S>
DecomposableMetric<S> table_metric(std::map<InformationResource, ProbabilityVector<S>> table, std::string label = "table") {
  return {std::move(label), [table = std::move(table)](const InformationResource& f) { return table.at(f); }};
}

// Two resources over n = 4, target {0}: per-resource bias +1/4 and -1/4.
template <Scalar S>
DecomposableMetric<S> plus_minus_quarter_metric() {
  std::map<InformationResource, ProbabilityVector<S>> table;
  table.emplace(InformationResource({0, 0, 0, 1}, 2),
                ProbabilityVector<S>({ratio<S>(1, 2), ratio<S>(1, 6), ratio<S>(1, 6), ratio<S>(1, 6)}));
  table.emplace(InformationResource({0, 0, 1, 0}, 2),
                ProbabilityVector<S>({S(0), ratio<S>(1, 3), ratio<S>(1, 3), ratio<S>(1, 3)}));
  return table_metric<S>(std::move(table), "plus-minus-quarter");
}

inline std::vector<InformationResource> plus_minus_quarter_resources() {
  return {InformationResource({0, 0, 0, 1}, 2), InformationResource({0, 0, 1, 0}, 2)};
}

}  // namespace fixtures
