#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "dstfuse/evidence.hpp"
#include "expect_error.hpp"
#include "generators.hpp"

using namespace dstfuse;
using test_support::Gen;

namespace {

ScoreVector sv(std::vector<double> f, std::string id = "m") { return ScoreVector{std::move(f), std::move(id)}; }

const BuildPolicy kLiteral{BuildMode::Literal, 1e-3};
const BuildPolicy kResidual{BuildMode::ResidualTheta, 1e-3};

}  // namespace

TEST(BuildMass, LiteralDominantClass) {
  // Sum |f| = 4, threshold 2: only class 0 is kept and takes all of 1 - floor.
  const auto m = build_mass(sv({2.0, 1.0, -1.0}), kLiteral);
  EXPECT_NEAR(m.singleton(0), 0.999, 1e-15);
  EXPECT_EQ(m.singleton(1), 0.0);
  EXPECT_EQ(m.singleton(2), 0.0);
  EXPECT_EQ(m.theta(), 1e-3);
}

TEST(BuildMass, NothingPassesThreshold) {
  // Sum |f| = 1, threshold 0.5, max 0.4.
  EXPECT_TRUE(build_mass(sv({0.4, 0.35, 0.25}), kLiteral).is_vacuous());
  EXPECT_TRUE(build_mass(sv({0.4, 0.35, 0.25}), kResidual).is_vacuous());
}

TEST(BuildMass, ResidualTheta) {
  const auto m = build_mass(sv({2.0, 1.0, -1.0}), kResidual);
  EXPECT_DOUBLE_EQ(m.singleton(0), 0.5);
  EXPECT_DOUBLE_EQ(m.theta(), 0.5);
}

TEST(BuildMass, ZeroScoresAreVacuous) {
  EXPECT_TRUE(build_mass(sv({0.0, 0.0, 0.0}), kLiteral).is_vacuous());
  EXPECT_TRUE(build_mass(sv({0.0, 0.0, 0.0}), kResidual).is_vacuous());
}

TEST(BuildMass, ResidualFloorRescales) {
  // All the absolute mass sits on class 1, so the floor has to be carved out of it.
  const auto m = build_mass(sv({0.0, 5.0, 0.0}), kResidual);
  EXPECT_NEAR(m.singleton(1), 0.999, 1e-15);
  EXPECT_EQ(m.theta(), 1e-3);
}

TEST(BuildMass, ExactTieKeepsTwoClasses) {
  const auto m = build_mass(sv({3.0, 3.0, 0.0}), kLiteral);
  EXPECT_NEAR(m.singleton(0), 0.4995, 1e-15);
  EXPECT_NEAR(m.singleton(1), 0.4995, 1e-15);
}

TEST(BuildMass, ZeroFloorReproducesPlainNormalization) {
  const auto m = build_mass(sv({4.0, -1.0, 1.0}), BuildPolicy{BuildMode::Literal, 0.0});
  EXPECT_EQ(m.singleton(0), 1.0);
  EXPECT_EQ(m.theta(), 0.0);
}

TEST(BuildMass, Errors) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_DST_ERROR(build_mass(sv({1.0, nan}), kLiteral), Errc::NonFiniteScore);
  EXPECT_DST_ERROR(build_mass(sv({1.0, inf}), kLiteral), Errc::NonFiniteScore);
  EXPECT_DST_ERROR(build_mass(sv({1.0}), kLiteral), Errc::TooFewClasses);
  EXPECT_DST_ERROR(build_mass(sv({1.0, 0.0}), BuildPolicy{BuildMode::Literal, 0.5}), Errc::InvalidPolicy);
  EXPECT_DST_ERROR(build_mass(sv({1.0, 0.0}), BuildPolicy{BuildMode::Literal, -0.1}), Errc::InvalidPolicy);
}

TEST(BuildEvidence, PerModelMasses) {
  const std::vector<ScoreVector> one{sv({1.0, 0.0})};
  EXPECT_EQ(build_evidence(one, kLiteral).size(), 1u);

  Gen gen(9);
  std::vector<ScoreVector> five;
  for (int j = 0; j < 5; ++j) five.push_back(sv(gen.scores(10), "m" + std::to_string(j)));
  const auto masses = build_evidence(five, kLiteral);
  ASSERT_EQ(masses.size(), 5u);
  for (const auto& m : masses) EXPECT_GE(m.theta(), 1e-3);

  const std::vector<ScoreVector> ragged{sv({1.0, 0.0, 0.0}), sv({1.0, 0.0})};
  EXPECT_DST_ERROR(build_evidence(ragged, kLiteral), Errc::LengthMismatch);
  EXPECT_DST_ERROR(build_evidence(std::span<const ScoreVector>{}, kLiteral), Errc::EmptyList);
}

TEST(BuildMassProperties, KeptMassStructure) {
  Gen gen(101);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = gen.index(2, 12);
    auto f = gen.scores(n);
    if (gen.coin(0.05)) {  // exact two-way tie at the threshold
      std::fill(f.begin(), f.end(), 0.0);
      f[0] = f[n - 1] = gen.uniform(0.5, 2.0);
    }
    const auto kept = dominant_scores(f);
    std::size_t kept_count = 0;
    for (double k : kept) {
      EXPECT_GE(k, 0.0);
      kept_count += k > 0.0;
    }
    EXPECT_LE(kept_count, 2u);
    if (kept_count == 2) {
      std::vector<double> nonzero;
      for (double k : kept)
        if (k > 0.0) nonzero.push_back(k);
      EXPECT_EQ(nonzero[0], nonzero[1]);
    }

    const auto lit = build_mass(sv(f), kLiteral);
    const auto res = build_mass(sv(f), kResidual);
    if (!lit.is_vacuous()) {
      EXPECT_EQ(lit.theta(), 1e-3);
    }
    EXPECT_GE(res.theta(), 1e-3);
  }
}

TEST(BuildMassProperties, PositiveScaleInvariance) {
  Gen gen(202);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = gen.index(2, 12);
    const auto f = gen.scores(n);
    // Powers of two scale exactly; arbitrary factors agree up to rounding.
    const double exact = std::ldexp(1.0, static_cast<int>(gen.index(0, 20)) - 10);
    const double loose = gen.uniform(0.01, 100.0);
    std::vector<double> g(n), h(n);
    for (std::size_t c = 0; c < n; ++c) {
      g[c] = exact * f[c];
      h[c] = loose * f[c];
    }
    const auto base = dominant_scores(f);
    const auto scaled = dominant_scores(g);
    const auto rescaled = dominant_scores(h);
    for (std::size_t c = 0; c < n; ++c) {
      EXPECT_EQ(base[c] > 0.0, scaled[c] > 0.0);
      EXPECT_EQ(base[c] > 0.0, rescaled[c] > 0.0);
    }
    EXPECT_EQ(build_mass(sv(f), kResidual), build_mass(sv(g), kResidual));
    const auto a = build_mass(sv(f), kResidual);
    const auto b = build_mass(sv(h), kResidual);
    for (std::size_t c = 0; c < n; ++c) EXPECT_NEAR(a.singleton(c), b.singleton(c), 1e-12);
    EXPECT_NEAR(a.theta(), b.theta(), 1e-12);
  }
}
