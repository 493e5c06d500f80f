#include <gtest/gtest.h>

#include "dstfuse/decision.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace dstfuse;
using test_support::Gen;

TEST(ExpectedUtilities, WorkedExample) {
  const CompactMass m({0.6, 0.3, 0.0}, 0.1);
  const auto u = expected_utilities(m);
  // Oracle: enumerated beliefs of {c} and its complement on the lifted mass.
  const auto oracle = test_support::dense_utilities(test_support::to_dense(m), 3);
  ASSERT_EQ(u.size(), 3u);
  EXPECT_NEAR(u[0], 0.3, 1e-15);
  EXPECT_NEAR(u[1], -0.3, 1e-15);
  EXPECT_NEAR(u[2], -0.9, 1e-15);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_NEAR(u[c], oracle[c], 1e-15);
}

TEST(ExpectedUtilities, VacuousAndCertain) {
  for (double v : expected_utilities(CompactMass::vacuous(4))) EXPECT_EQ(v, 0.0);
  const auto u = expected_utilities(CompactMass({1.0, 0.0, 0.0}, 0.0));
  EXPECT_EQ(u[0], 1.0);
  EXPECT_EQ(u[1], -1.0);
  EXPECT_EQ(u[2], -1.0);
}

TEST(Predict, Examples) {
  const auto r = predict(CompactMass({0.6, 0.3, 0.0}, 0.1));
  EXPECT_EQ(r.predicted_class, 0u);
  EXPECT_FALSE(r.tie);

  const auto v = predict(CompactMass::vacuous(5));
  EXPECT_EQ(v.predicted_class, 0u);
  EXPECT_TRUE(v.tie);

  const auto t = predict(CompactMass({0.0, 0.45, 0.45}, 0.1));
  EXPECT_EQ(t.predicted_class, 1u);
  EXPECT_TRUE(t.tie);
}

TEST(DecisionProperties, AgreesWithGeneralEngineAndIdentities) {
  Gen gen(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = gen.index(2, 8);
    const auto m = gen.compact(n, 0.0);
    const auto u = expected_utilities(m);
    const auto oracle = test_support::dense_utilities(test_support::to_dense(m), n);
    const double s = m.singleton_total();
    double sum = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      EXPECT_NEAR(u[c], oracle[c], 1e-12);
      EXPECT_GE(u[c], -1.0 - 1e-12);
      EXPECT_LE(u[c], 1.0 + 1e-12);
      sum += u[c];
    }
    EXPECT_NEAR(sum, (2.0 - static_cast<double>(n)) * s, 1e-12);

    std::size_t best = 0;
    for (std::size_t c = 1; c < n; ++c)
      if (m.singleton(c) > m.singleton(best)) best = c;
    EXPECT_EQ(predict(m).predicted_class, best);
  }
}
