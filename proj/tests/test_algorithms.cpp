#include "algsearch/algsearch.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace algsearch;

namespace {

std::vector<Rational> rule(const SearchAlgorithm<Rational>& alg, const SearchHistory& h, const InformationResource& f) {
  const auto p = alg.next(h, f);
  return {p.begin(), p.end()};
}

}  // namespace

TEST(AlgorithmSpec, ParsesAndPrintsCanonicalLabels) {
  for (const std::string& text : fixtures::floating_algorithms()) {
    const AlgorithmSpec spec = parse_algorithm_spec(text);
    EXPECT_EQ(parse_algorithm_spec(spec.label()).label(), spec.label()) << text;
  }
  EXPECT_EQ(parse_algorithm_spec("greedy:mass=0.75").label(), "greedy:mass=3/4");
  EXPECT_EQ(parse_algorithm_spec("greedy:mass=1").label(), "greedy");
  EXPECT_EQ(parse_algorithm_spec("point-mass:index=3").index, 3u);
}

TEST(AlgorithmSpec, RejectsBadSpecs) {
  EXPECT_THROW(parse_algorithm_spec("simulated-annealing"), std::invalid_argument);
  EXPECT_THROW(parse_algorithm_spec("point-mass"), std::invalid_argument);
  EXPECT_THROW(parse_algorithm_spec("uniform:index=2"), std::invalid_argument);
  EXPECT_THROW(parse_algorithm_spec("greedy:mass=0"), std::invalid_argument);
  EXPECT_THROW(parse_algorithm_spec("greedy:mass=1.5"), std::invalid_argument);
  EXPECT_THROW(parse_algorithm_spec("epsilon-greedy"), std::invalid_argument);
  EXPECT_THROW(parse_algorithm_spec("epsilon-greedy:epsilon=2"), std::invalid_argument);
  EXPECT_THROW(parse_algorithm_spec("fitness-proportional:temperature=0"), std::invalid_argument);
  EXPECT_THROW(parse_algorithm_spec("greedy:mass"), std::invalid_argument);
}

TEST(Algorithms, Uniform) {
  const auto alg = make_algorithm<Rational>("uniform");
  const InformationResource f({0, 1, 1}, 2);
  EXPECT_EQ(rule(alg, {}, f), std::vector<Rational>(3, Rational(1, 3)));
  EXPECT_EQ(rule(alg, {{2, 1}}, f), std::vector<Rational>(3, Rational(1, 3)));
}

TEST(Algorithms, PointMass) {
  const auto alg = make_algorithm<Rational>("point-mass:index=2");
  const InformationResource f({0, 1, 1}, 2);
  EXPECT_EQ(rule(alg, {}, f), (std::vector<Rational>{0, 0, 1}));
  const InformationResource small({0, 1}, 2);
  EXPECT_THROW(alg.next({}, small), std::invalid_argument);
}

TEST(Algorithms, GreedyPutsMassOnBestSeenWithLowestIndexTies) {
  const auto alg = make_algorithm<Rational>("greedy");
  const InformationResource f({1, 3, 3, 0}, 4);
  EXPECT_EQ(rule(alg, {}, f), std::vector<Rational>(4, Rational(1, 4)));
  EXPECT_EQ(rule(alg, {{3, 0}, {2, 3}, {1, 3}}, f), (std::vector<Rational>{0, 1, 0, 0}));
  EXPECT_EQ(rule(alg, {{0, 1}}, f), (std::vector<Rational>{1, 0, 0, 0}));
}

TEST(Algorithms, PartialGreedySpreadsTheRestOverUnseen) {
  const auto alg = make_algorithm<Rational>("greedy:mass=3/4");
  const InformationResource f({1, 3, 3, 0}, 4);
  EXPECT_EQ(rule(alg, {{1, 3}}, f), (std::vector<Rational>{Rational(1, 12), Rational(3, 4), Rational(1, 12), Rational(1, 12)}));
  // all seen: remainder spread over every element
  const SearchHistory all{{0, 1}, {1, 3}, {2, 3}, {3, 0}};
  EXPECT_EQ(rule(alg, all, f),
            (std::vector<Rational>{Rational(1, 16), Rational(13, 16), Rational(1, 16), Rational(1, 16)}));
}

TEST(Algorithms, HistoryAvoiding) {
  const auto alg = make_algorithm<Rational>("history-avoiding");
  const InformationResource f({0, 0, 0}, 2);
  EXPECT_EQ(rule(alg, {{1, 0}}, f), (std::vector<Rational>{Rational(1, 2), 0, Rational(1, 2)}));
  EXPECT_EQ(rule(alg, {{0, 0}, {1, 0}, {2, 0}}, f), std::vector<Rational>(3, Rational(1, 3)));
}

TEST(Algorithms, EpsilonGreedyMixesGreedyAndUniform) {
  const auto alg = make_algorithm<Rational>("epsilon-greedy:epsilon=1/10");
  const InformationResource f({0, 1, 0, 0}, 2);
  EXPECT_EQ(rule(alg, {{1, 1}}, f),
            (std::vector<Rational>{Rational(1, 40), Rational(37, 40), Rational(1, 40), Rational(1, 40)}));
}

TEST(Algorithms, TableArgmaxIgnoresHistory) {
  const auto alg = make_algorithm<Rational>("table-argmax");
  const InformationResource f({0, 2, 2, 1}, 3);
  EXPECT_EQ(rule(alg, {}, f), (std::vector<Rational>{0, 1, 0, 0}));
  EXPECT_EQ(rule(alg, {{3, 1}}, f), (std::vector<Rational>{0, 1, 0, 0}));
}

TEST(Algorithms, FitnessProportionalIsFloatingOnly) {
  EXPECT_THROW(make_algorithm<Rational>("fitness-proportional"), std::invalid_argument);
  const auto alg = make_algorithm<double>("fitness-proportional:temperature=1");
  const auto p = alg.next({}, InformationResource({0, 1}, 2));
  EXPECT_NEAR(p[1] / p[0], std::exp(1.0), 1e-12);
  // large values do not overflow
  const auto q = make_algorithm<double>("fitness-proportional:temperature=0.001").next({}, InformationResource({0, 1000}, 1001));
  EXPECT_NEAR(q[1], 1.0, 1e-12);
}

TEST(Algorithms, EveryRuleReturnsADistributionInBothModes) {
  for (const InformationResource& f : fixtures::small_resources()) {
    for (const std::string& spec : fixtures::floating_algorithms()) {
      const auto alg = make_algorithm<double>(spec);
      for (std::uint64_t seed = 0; seed < 5; ++seed) EXPECT_NO_THROW(run_search(alg, f, 4, seed)) << spec;
    }
    for (const std::string& spec : fixtures::exact_algorithms()) {
      const auto alg = make_algorithm<Rational>(spec);
      EXPECT_NO_THROW(run_search(alg, f, 3, 1)) << spec;
    }
  }
}

TEST(Algorithms, ModesAgreeOnRationalRules) {
  const InformationResource f({1, 0, 2, 2, 0, 1}, 3);
  const SearchHistory h{{4, 0}, {2, 2}};
  for (const std::string& spec : fixtures::exact_algorithms()) {
    const auto exact = make_algorithm<Rational>(spec).next(h, f);
    const auto approx = make_algorithm<double>(spec).next(h, f);
    for (std::size_t j = 0; j < f.size(); ++j) EXPECT_NEAR(to_double(exact[j]), approx[j], 1e-15) << spec;
  }
}
