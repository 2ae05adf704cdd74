#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "queuerl/errors.hpp"
#include "queuerl/tuning/random_search.hpp"
#include "queuerl/tuning/search_space.hpp"

namespace queuerl {
namespace {

AgentParams tiny_params() {
  AgentParams p;
  p.hidden_layers = {8};
  p.batch_size = 4;
  p.num_samples = 4;
  p.num_episodes = 2;
  p.num_timesteps = 4;
  return p;
}

EnvOptions short_steps() {
  EnvOptions o;
  o.events_per_step = 20;
  return o;
}

TEST(SearchSpace, ValidationRules) {
  SearchSpace s;
  s.fields["learning_rate"] = RangeSpec{1e-4, 1e-2, RangeScale::kLog};
  EXPECT_NO_THROW(s.validate());
  s.fields["no_such_field"] = ChoiceSpec{1.0};
  EXPECT_THROW(s.validate(), ConfigError);
  s.fields.erase("no_such_field");
  s.fields["tau"] = RangeSpec{0.5, 0.5, RangeScale::kLinear};
  EXPECT_THROW(s.validate(), ConfigError);
  s.fields["tau"] = RangeSpec{-1.0, 0.5, RangeScale::kLog};
  EXPECT_THROW(s.validate(), ConfigError);
  s.fields["tau"] = ChoiceSpec{};
  EXPECT_THROW(s.validate(), ConfigError);
  s.fields["tau"] = ChoiceSpec{0.1};
  s.trials = 0;
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(SearchSpace, LogRangeIsLogUniform) {
  const FieldSpec spec = RangeSpec{1e-5, 1e-1, RangeScale::kLog};
  std::mt19937_64 rng(8);
  std::vector<double> u;
  for (int i = 0; i < 10'000; ++i) {
    const double x = sample_field(spec, rng);
    ASSERT_GE(x, 1e-5);
    ASSERT_LE(x, 1e-1);
    u.push_back((std::log10(x) + 5.0) / 4.0);
  }
  std::sort(u.begin(), u.end());
  double d = 0.0;
  const double n = static_cast<double>(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max({d, (i + 1) / n - u[i], u[i] - i / n});
  }
  EXPECT_LT(d, 1.628 / std::sqrt(n));  // Kolmogorov-Smirnov, p = 0.01
}

TEST(SearchSpace, SamplesStayInsideTheirDomains) {
  SearchSpace s;
  s.fields["batch_size"] = RangeSpec{8, 64, RangeScale::kLinear};
  s.fields["gamma"] = RangeSpec{0.0, 0.99, RangeScale::kLinear};
  s.fields["epsilon"] = ChoiceSpec{0.1, 0.2, 0.3};
  s.fields["learning_rate"] = RangeSpec{1e-4, 1e-2, RangeScale::kLog};
  std::mt19937_64 rng(4);
  for (int i = 0; i < 2000; ++i) {
    const AgentParams p = s.sample(AgentParams{}, rng);
    EXPECT_GE(p.batch_size, 8);
    EXPECT_LE(p.batch_size, 64);
    EXPECT_GE(p.gamma, 0.0);
    EXPECT_LE(p.gamma, 0.99);
    EXPECT_TRUE(p.epsilon == 0.1 || p.epsilon == 0.2 || p.epsilon == 0.3);
    EXPECT_GE(p.learning_rate, 1e-4);
    EXPECT_LE(p.learning_rate, 1e-2);
  }
}

TEST(SearchSpace, SamplingIsSeedDeterministic) {
  SearchSpace s;
  s.fields["tau"] = RangeSpec{0.001, 0.5, RangeScale::kLog};
  s.fields["num_epochs"] = ChoiceSpec{1, 2, 4};
  std::mt19937_64 a(12);
  std::mt19937_64 b(12);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(s.sample(AgentParams{}, a), s.sample(AgentParams{}, b));
}

TEST(SearchSpace, NumericFieldTableRoundTrips) {
  AgentParams p;
  for (const NumericField& f : agent_numeric_fields()) {
    f.set(p, f.get(p));
    EXPECT_EQ(find_numeric_field(f.name), &f);
  }
  EXPECT_EQ(p, AgentParams{});
  EXPECT_EQ(find_numeric_field("bogus"), nullptr);
}

TEST(RandomSearch, DegenerateSpace) {
  SearchSpace s;
  s.fields["tau"] = ChoiceSpec{0.2};
  s.trials = 3;
  const auto results = random_search(s, testing::mm1_config(0.5, 1.0), short_steps(), tiny_params(), 5);
  ASSERT_EQ(results.size(), 3u);
  std::vector<std::uint64_t> seeds;
  for (const TrialResult& r : results) {
    EXPECT_EQ(r.params, results[0].params);
    EXPECT_EQ(r.params.tau, 0.2);
    seeds.push_back(r.train_seed);
  }
  std::sort(seeds.begin(), seeds.end());
  EXPECT_EQ(seeds, (std::vector<std::uint64_t>{0, 1, 2}));
}

TEST(RandomSearch, SortedAndReproducible) {
  SearchSpace s;
  s.fields["learning_rate"] = RangeSpec{1e-4, 1e-2, RangeScale::kLog};
  s.fields["epsilon"] = RangeSpec{0.05, 0.5, RangeScale::kLinear};
  s.trials = 4;
  const auto a = random_search(s, testing::eleven_node_config(), short_steps(), tiny_params(), 9);
  const auto b = random_search(s, testing::eleven_node_config(), short_steps(), tiny_params(), 9);
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t k = 0; k + 1 < a.size(); ++k) EXPECT_GE(a[k].objective, a[k + 1].objective);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].trial, b[k].trial);
    EXPECT_EQ(a[k].params, b[k].params);
    EXPECT_EQ(a[k].objective, b[k].objective);
  }
}

TEST(RandomSearch, InvalidSpaceRejected) {
  SearchSpace s;
  s.fields["gamma"] = RangeSpec{0.9, 0.1, RangeScale::kLinear};
  EXPECT_THROW(random_search(s, testing::eleven_node_config(), short_steps(), tiny_params(), 1), ConfigError);
}

}  // namespace
}  // namespace queuerl
