#include "algsearch/algsearch.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace algsearch;

namespace {

std::vector<AlphaWeighting<Rational>> exact_alphas() {
  return {AlphaWeighting<Rational>::per_query(), AlphaWeighting<Rational>::final_query(),
          AlphaWeighting<Rational>::geometric(Rational(1, 2))};
}

std::vector<Rational> as_vector(const ProbabilityVector<Rational>& p) { return {p.begin(), p.end()}; }

}  // namespace

TEST(Alpha, NamedWeightingsAreValidForEveryHorizon) {
  for (std::size_t L = 1; L <= 64; ++L) {
    for (const auto& a : exact_alphas()) {
      const auto w = a.weights(L);
      EXPECT_EQ(w.size(), L);
      EXPECT_EQ(std::accumulate(w.begin(), w.end(), Rational(0)), 1) << a.name();
    }
    EXPECT_NO_THROW(AlphaWeighting<double>::geometric(0.9).weights(L));
  }
}

TEST(Alpha, ShapesAndParsing) {
  EXPECT_EQ(AlphaWeighting<Rational>::geometric(Rational(1, 2)).weights(3),
            (std::vector<Rational>{Rational(1, 7), Rational(2, 7), Rational(4, 7)}));
  EXPECT_EQ(AlphaWeighting<Rational>::final_query().weights(3), (std::vector<Rational>{0, 0, 1}));
  EXPECT_EQ(parse_alpha<Rational>("per-query").weights(4), std::vector<Rational>(4, Rational(1, 4)));
  EXPECT_EQ(parse_alpha<Rational>("geometric:gamma=0.5").name(), "geometric:gamma=1/2");
  EXPECT_EQ(parse_alpha<Rational>("custom:0.2,0.3,0.5").weights(3),
            (std::vector<Rational>{Rational(1, 5), Rational(3, 10), Rational(1, 2)}));
  EXPECT_THROW(parse_alpha<Rational>("custom:0.2,0.3,0.5").weights(2), std::invalid_argument);
  EXPECT_THROW(parse_alpha<Rational>("custom:0.2,0.3"), std::invalid_argument);
  EXPECT_THROW(parse_alpha<Rational>("custom:-0.5,1.5"), std::invalid_argument);
  EXPECT_THROW(parse_alpha<Rational>("geometric:gamma=0"), std::invalid_argument);
  EXPECT_THROW(parse_alpha<Rational>("harmonic"), std::invalid_argument);
  EXPECT_THROW(AlphaWeighting<Rational>::per_query().weights(0), std::invalid_argument);
}

TEST(StrategyVector, ExactModeMatchesSequenceOracle) {
  for (const InformationResource& f : fixtures::small_resources()) {
    for (const std::string& spec : fixtures::exact_algorithms()) {
      const auto alg = make_algorithm<Rational>(spec);
      for (std::size_t steps = 1; steps <= 3; ++steps) {
        for (const auto& alpha : exact_alphas()) {
          const auto got = strategy_vector(alg, f, alpha, steps, EstimationMode::exact());
          EXPECT_EQ(as_vector(got.vector), oracle::strategy(alg, f, alpha.weights(steps)))
              << spec << " f=" << f.to_string() << " steps=" << steps << " " << alpha.name();
          for (double se : got.std_error) EXPECT_EQ(se, 0.0);
        }
      }
    }
  }
}

TEST(StrategyVector, GreedyThreeElementExample) {
  const auto alg = make_algorithm<Rational>("greedy");
  const InformationResource f({0, 1, 0}, 2);
  const auto p = strategy_vector(alg, f, AlphaWeighting<Rational>::final_query(), 2, EstimationMode::exact()).vector;
  // Step 1 uniform; step 2 is a point mass on the first query's element.
  EXPECT_EQ(as_vector(p), std::vector<Rational>(3, Rational(1, 3)));
  EXPECT_EQ(as_vector(p), oracle::strategy(alg, f, {Rational(0), Rational(1)}));

  const auto partial = make_algorithm<Rational>("greedy:mass=3/4");
  const TargetSet t = TargetSet::singleton(3, 1);
  const Rational one_step = final_query_success(partial, f, t, 1, EstimationMode::exact());
  const Rational two_steps = final_query_success(partial, f, t, 2, EstimationMode::exact());
  EXPECT_EQ(one_step, Rational(1, 3));
  EXPECT_EQ(two_steps, oracle::dot(t, oracle::strategy(partial, f, {Rational(0), Rational(1)})));
  EXPECT_GE(two_steps, one_step);

  const auto mc = strategy_vector(make_algorithm<double>("greedy:mass=3/4"), f, AlphaWeighting<double>::final_query(), 2,
                                  EstimationMode::monte_carlo(100000, 3));
  const auto exact = strategy_vector(partial, f, AlphaWeighting<Rational>::final_query(), 2, EstimationMode::exact()).vector;
  for (std::size_t j = 0; j < 3; ++j) EXPECT_LE(std::abs(mc.vector[j] - to_double(exact[j])), 3 * mc.std_error[j] + 1e-12);
}

TEST(StrategyVector, UniformAndPointMassAreFixedPoints) {
  const InformationResource f({1, 0, 2, 2, 0}, 3);
  for (const auto& alpha : exact_alphas()) {
    EXPECT_EQ(as_vector(strategy_vector(make_algorithm<Rational>("uniform"), f, alpha, 5, EstimationMode::exact()).vector),
              std::vector<Rational>(5, Rational(1, 5)));
    EXPECT_EQ(strategy_vector(make_algorithm<Rational>("point-mass:index=0"), f, alpha, 4, EstimationMode::exact()).vector,
              ProbabilityVector<Rational>::indicator(5, 0));
  }
}

TEST(StrategyVector, UniformBaselineForEveryTarget) {
  const auto alg = make_algorithm<Rational>("uniform");
  const InformationResource f({0, 1, 1, 0, 1}, 2);
  for (const auto& alpha : exact_alphas()) {
    const auto p = strategy_vector(alg, f, alpha, 3, EstimationMode::exact()).vector;
    for (const TargetSet& t : enumerate_targets(5)) EXPECT_EQ(success_probability(t, p), Rational(t.cardinality(), 5));
  }
}

TEST(StrategyVector, CapsAndErrors) {
  const auto alg = make_algorithm<double>("uniform");
  const InformationResource f({0, 1, 1, 0}, 2);
  EXPECT_THROW(strategy_vector(alg, f, AlphaWeighting<double>::per_query(), 11, EstimationMode::exact()), CapError);
  EXPECT_THROW(strategy_vector(alg, f, AlphaWeighting<double>::per_query(), 0, EstimationMode::exact()), std::invalid_argument);
  EXPECT_THROW(strategy_vector(alg, f, AlphaWeighting<double>::per_query(), 2, EstimationMode::monte_carlo(0, 1)),
               std::invalid_argument);
  EXPECT_NO_THROW(strategy_vector(alg, f, AlphaWeighting<double>::per_query(), 11, EstimationMode::monte_carlo(10, 1)));
}

TEST(StrategyVector, MonteCarloIsSeededAndReportsStandardErrors) {
  const auto alg = make_algorithm<double>("greedy:mass=3/4");
  const InformationResource f({0, 1, 0, 0}, 2);
  const auto a = strategy_vector(alg, f, AlphaWeighting<double>::per_query(), 3, EstimationMode::monte_carlo(500, 9));
  const auto b = strategy_vector(alg, f, AlphaWeighting<double>::per_query(), 3, EstimationMode::monte_carlo(500, 9));
  const auto c = strategy_vector(alg, f, AlphaWeighting<double>::per_query(), 3, EstimationMode::monte_carlo(500, 10));
  EXPECT_EQ(a.vector, b.vector);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_NE(a.vector, c.vector);
  for (double se : a.std_error) EXPECT_GT(se, 0.0);
  const auto single = strategy_vector(alg, f, AlphaWeighting<double>::per_query(), 3, EstimationMode::monte_carlo(1, 9));
  for (double se : single.std_error) EXPECT_TRUE(std::isinf(se));
}

TEST(StrategyVector, MonteCarloInRationalModeStaysNormalized) {
  const auto alg = make_algorithm<Rational>("greedy:mass=3/4");
  const InformationResource f({2, 0, 1, 2}, 3);
  const auto est = strategy_vector(alg, f, AlphaWeighting<Rational>::per_query(), 3, EstimationMode::monte_carlo(200, 4));
  EXPECT_EQ(std::accumulate(est.vector.begin(), est.vector.end(), Rational(0)), 1);
}

TEST(SuccessProbability, Examples) {
  const ProbabilityVector<double> p({0.5, 0.25, 0.125, 0.125});
  EXPECT_DOUBLE_EQ(success_probability(TargetSet::from_indices(4, {0, 1}), p), 0.75);
  EXPECT_DOUBLE_EQ(success_probability(TargetSet::full(4), p), 1.0);
  EXPECT_EQ(success_probability(TargetSet::from_indices(10, {2, 5, 7}), ProbabilityVector<Rational>::uniform(10)), Rational(3, 10));
  EXPECT_THROW(success_probability(TargetSet::full(3), p), DimensionError);
}

TEST(SuccessProbability, LinearOnDisjointTargets) {
  Engine engine(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(uniform01(engine) * 10);
    std::vector<Rational> w(n);
    Rational total = 0;
    for (auto& x : w) {
      x = Rational(static_cast<long>(uniform01(engine) * 100));
      total += x;
    }
    if (total == 0) continue;
    for (auto& x : w) x /= total;
    const ProbabilityVector<Rational> p(w);
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    const std::uint64_t a = static_cast<std::uint64_t>(uniform01(engine) * static_cast<double>(full + 1));
    const std::uint64_t b = static_cast<std::uint64_t>(uniform01(engine) * static_cast<double>(full + 1)) & ~a;
    EXPECT_EQ(success_probability(TargetSet(n, a | b), p),
              success_probability(TargetSet(n, a), p) + success_probability(TargetSet(n, b), p));
  }
}

TEST(ExpectedSuccess, EqualsTargetDotStrategyVector) {
  for (const InformationResource& f : fixtures::small_resources()) {
    for (const std::string& spec : fixtures::exact_algorithms()) {
      const auto alg = make_algorithm<Rational>(spec);
      const auto alpha = AlphaWeighting<Rational>::geometric(Rational(1, 3));
      const auto p = strategy_vector(alg, f, alpha, 3, EstimationMode::exact()).vector;
      for (const TargetSet& t : enumerate_targets(f.size())) {
        EXPECT_EQ(expected_success(alg, f, t, alpha, 3), success_probability(t, p)) << spec;
      }
    }
  }
}

TEST(PerQuery, UniformBaselineAndAlphaEquivalence) {
  const auto alg = make_algorithm<Rational>("uniform");
  const InformationResource f({0, 1, 0, 1, 1, 0, 0, 1, 0, 1}, 2);
  EXPECT_EQ(per_query_success(alg, f, TargetSet::from_indices(10, {1, 4, 9}), 2, EstimationMode::exact()), Rational(3, 10));
  const auto greedy = make_algorithm<Rational>("greedy:mass=3/4");
  const InformationResource g({0, 1, 0}, 2);
  const TargetSet t = TargetSet::singleton(3, 1);
  EXPECT_EQ(per_query_success(greedy, g, t, 2, EstimationMode::exact()),
            success_probability(t, strategy_vector(greedy, g, AlphaWeighting<Rational>::custom({Rational(1, 2), Rational(1, 2)}), 2,
                                                   EstimationMode::exact())
                                       .vector));
  EXPECT_EQ(per_query_success(greedy, g, t, 2, EstimationMode::exact()), oracle::dot(t, oracle::strategy(greedy, g, {Rational(1, 2), Rational(1, 2)})));
  EXPECT_EQ(final_query_success(make_algorithm<Rational>("point-mass:index=0"), g, TargetSet::singleton(3, 0), 3,
                                EstimationMode::exact()),
            1);
}

TEST(Mixture, Examples) {
  const auto pm0 = fixed_metric(ProbabilityVector<Rational>::indicator(4, 0));
  const auto pm1 = fixed_metric(ProbabilityVector<Rational>::indicator(4, 1));
  const InformationResource f({0, 1, 0, 0}, 2);
  const auto mix = mixture_metric<Rational>({pm0, pm1}, {Rational(3, 10), Rational(7, 10)});
  EXPECT_EQ(as_vector(mix.strategy(f)), (std::vector<Rational>{Rational(3, 10), Rational(7, 10), 0, 0}));
  const auto identity = mixture_metric<Rational>({pm0}, {Rational(1)});
  EXPECT_EQ(identity.strategy(f), pm0.strategy(f));
  EXPECT_THROW(mixture_metric<Rational>({pm0, pm1}, {Rational(3, 2), Rational(-1, 2)}), std::invalid_argument);
  EXPECT_THROW(mixture_metric<Rational>({pm0, pm1}, {Rational(1, 2), Rational(1, 4)}), std::invalid_argument);
  EXPECT_THROW(mixture_metric<Rational>({pm0, pm1}, {Rational(1)}), DimensionError);
}

TEST(Mixture, PerQueryFinalQueryAverageEqualsAveragedAlpha) {
  const auto alg = make_algorithm<Rational>("greedy:mass=3/4");
  const InformationResource f({0, 1, 0}, 2);
  const auto mix = mixture_metric<Rational>({per_query_metric(alg, 3, EstimationMode::exact()), final_query_metric(alg, 3, EstimationMode::exact())},
                                            {Rational(1, 2), Rational(1, 2)});
  const auto averaged = AlphaWeighting<Rational>::custom({Rational(1, 6), Rational(1, 6), Rational(2, 3)});
  EXPECT_EQ(mix.strategy(f), strategy_vector(alg, f, averaged, 3, EstimationMode::exact()).vector);
}

TEST(Decomposability, ShippedMetricsPass) {
  const auto alg = make_algorithm<Rational>("greedy:mass=3/4");
  const InformationResource f({2, 0, 1, 2}, 3);
  for (const auto& alpha : exact_alphas()) {
    const SuccessFunctional<Rational> phi = [&](const TargetSet& t, const InformationResource& g) {
      return expected_success(alg, g, t, alpha, 3);
    };
    const auto result = decomposability_check(phi, f);
    ASSERT_TRUE(result.decomposable) << alpha.name();
    EXPECT_EQ(*result.reconstruction, strategy_vector(alg, f, alpha, 3, EstimationMode::exact()).vector);
  }
  const ProbabilityVector<Rational> fixed({Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8)});
  const auto m = fixed_metric(fixed);
  const auto result = decomposability_check<Rational>([&](const TargetSet& t, const InformationResource& g) { return m.success(t, g); }, f);
  EXPECT_TRUE(result.decomposable);
  EXPECT_EQ(*result.reconstruction, fixed);
}

TEST(Decomposability, SquaredSuccessFails) {
  const auto m = per_query_metric(make_algorithm<Rational>("greedy:mass=3/4"), 2, EstimationMode::exact());
  const InformationResource f({0, 1, 1, 0}, 2);
  const SuccessFunctional<Rational> squared = [&](const TargetSet& t, const InformationResource& g) {
    const Rational s = m.success(t, g);
    return s * s;
  };
  const auto result = decomposability_check(squared, f);
  EXPECT_FALSE(result.decomposable);
  EXPECT_FALSE(result.reconstruction.has_value());
}

TEST(Decomposability, NonAdditiveButNormalizedFunctionalReportsCounterexample) {
  const InformationResource f({0, 1, 1, 0}, 2);
  // singletons sum to 1, but pairs are not additive
  const SuccessFunctional<Rational> phi = [](const TargetSet& t, const InformationResource&) {
    if (t.cardinality() <= 1) return Rational(t.cardinality(), 4);
    return Rational(t.cardinality() == 4 ? 1 : 0);
  };
  const auto result = decomposability_check(phi, f);
  EXPECT_FALSE(result.decomposable);
  ASSERT_TRUE(result.counterexample.has_value());
  EXPECT_EQ(result.counterexample->cardinality(), 2u);
}

TEST(Memoize, SharesResultsAcrossCopies) {
  int calls = 0;
  DecomposableMetric<Rational> counting{"counting", [&calls](const InformationResource& f) {
                                          ++calls;
                                          return ProbabilityVector<Rational>::uniform(f.size());
                                        }};
  const auto cached = memoize(counting);
  const auto copy = cached;
  const InformationResource f({0, 1}, 2);
  cached.strategy(f);
  copy.strategy(f);
  EXPECT_EQ(calls, 1);
  copy.strategy(InformationResource({1, 1}, 2));
  EXPECT_EQ(calls, 2);
}

TEST(ActiveInformation, ExamplesAndSign) {
  EXPECT_DOUBLE_EQ(active_information<Rational>(Rational(1, 4), Rational(1, 4)), 0.0);
  EXPECT_DOUBLE_EQ(active_information<Rational>(Rational(1, 2), Rational(1, 4)), 1.0);
  EXPECT_DOUBLE_EQ(active_information<double>(0.125, 0.25), -1.0);
  EXPECT_TRUE(std::isinf(active_information<double>(0.0, 0.25)));
  EXPECT_LT(active_information<double>(0.0, 0.25), 0.0);
  EXPECT_NEAR(active_information<double>(1.0, 0.3), endogenous_information(3, 10), 1e-12);
  EXPECT_THROW(active_information<double>(0.5, 0.0), std::invalid_argument);
  EXPECT_THROW(active_information<double>(1.5, 0.5), std::invalid_argument);
  double previous = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 100; ++i) {
    const double phi = i / 100.0;
    const double info = active_information(phi, 0.3);
    EXPECT_GT(info, previous);
    EXPECT_EQ(info > 0.0, phi > 0.3);
    previous = info;
  }
}
