#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "battery.hpp"
#include "ineq/distribution.hpp"
#include "ineq/errors.hpp"
#include "ineq/estimators.hpp"

using namespace ineq;
using namespace ineq::testing;

TEST(Cdf, AtomMassAtZero) { EXPECT_DOUBLE_EQ(two_point(0.5).cdf(0.0), 0.5); }

TEST(Cdf, BelowAtom) { EXPECT_EQ(Distribution::atom(0.5).cdf(0.4), 0.0); }

TEST(Cdf, FigureOneJump) {
  const auto d = figure_one();
  EXPECT_NEAR(d.cdf(0.5), 0.75, 1e-15);
  EXPECT_NEAR(d.cdf_left(0.5), 0.25, 1e-15);
  EXPECT_NEAR(d.cdf(0.2), 0.1, 1e-15);
  EXPECT_EQ(d.cdf(1.0), 1.0);
  EXPECT_EQ(d.cdf(40.0), 1.0);
}

TEST(Cdf, NegativeArgumentIsDomainError) {
  EXPECT_THROW(Distribution::atom(1).cdf(-0.1), DomainError);
  EXPECT_THROW(Distribution::atom(1).cdf(NAN), DomainError);
}

TEST(Cdf, ParametricClosedForms) {
  EXPECT_NEAR(Distribution::exponential(2.0).cdf(1.0), 1 - std::exp(-2.0), 1e-15);
  EXPECT_NEAR(Distribution::gamma(1.0, 0.5).cdf(1.0), 1 - std::exp(-2.0), 1e-14);
  EXPECT_NEAR(Distribution::lognormal(0.0, 1.0).cdf(1.0), 0.5, 1e-15);
  EXPECT_NEAR(Distribution::uniform(1.0, 3.0).cdf(2.5), 0.75, 1e-15);
}

TEST(Quantile, TwoPointAtHalfIsZero) { EXPECT_EQ(two_point(0.5).quantile(0.5), 0.0); }

TEST(Quantile, DiracMass) {
  const auto d = Distribution::atom(2.5);
  EXPECT_EQ(d.quantile(0.0), 0.0);
  EXPECT_EQ(d.quantile(0.7), 2.5);
}

TEST(Quantile, FigureOnePlateau) {
  const auto d = figure_one();
  EXPECT_NEAR(d.quantile(0.5), 0.5, 1e-12);
  EXPECT_NEAR(d.quantile(0.25), 0.5, 1e-12);
  EXPECT_NEAR(d.quantile(0.75), 0.5, 1e-12);
  EXPECT_NEAR(d.quantile(0.2), 0.4, 1e-12);
  EXPECT_NEAR(d.quantile(0.8), 0.6, 1e-12);
}

TEST(Quantile, RejectsOutsideHalfOpenInterval) {
  const auto d = Distribution::uniform(0, 1);
  EXPECT_THROW(d.quantile(1.0), DomainError);
  EXPECT_THROW(d.quantile(-0.1), DomainError);
  EXPECT_THROW(d.quantile(NAN), DomainError);
}

TEST(Quantile, ZeroIsAlwaysZero) {
  for (const auto& m : battery()) EXPECT_EQ(m.d.quantile(0.0), 0.0) << m.name;
}

TEST(Quantile, ParametricClosedForms) {
  EXPECT_NEAR(Distribution::exponential(2.0).quantile(0.5), std::log(2.0) / 2, 1e-14);
  EXPECT_NEAR(Distribution::lognormal(1.0, 0.5).quantile(0.5), std::exp(1.0), 1e-12);
  const auto g = Distribution::gamma(3.0, 0.5);
  EXPECT_NEAR(g.cdf(g.quantile(0.9)), 0.9, 1e-12);
}

TEST(Quantile, MixtureInvertsCdf) {
  const auto d = mixture({{0.5, Distribution::exponential(1.0)}, {0.5, Distribution::gamma(4, 1)}});
  for (double p : {0.01, 0.3, 0.5, 0.77, 0.999}) EXPECT_NEAR(d.cdf(d.quantile(p)), p, 1e-12);
}

TEST(Mean, Examples) {
  EXPECT_EQ(Distribution::atom(3.25).mean(), 3.25);
  EXPECT_DOUBLE_EQ(two_point(0.25).mean(), 0.75);
  EXPECT_DOUBLE_EQ(figure_one().mean(), 0.5);
  EXPECT_NEAR(Distribution::gamma(3, 0.5).mean(), 1.5, 1e-15);
  EXPECT_NEAR(Distribution::lognormal(0, 0.5).mean(), std::exp(0.125), 1e-15);
}

TEST(Mean, IntegralRoutesAgreeOnBattery) {
  for (const auto& m : battery()) {
    const double tol = m.d.is_discrete() ? 1e-8 : 1e-6;
    EXPECT_NEAR(m.d.mean_via_survival(), m.d.mean(), tol) << m.name;
    EXPECT_NEAR(m.d.mean_via_quantile(), m.d.mean(), tol) << m.name;
  }
}

TEST(Mean, DiracAtZeroIsOutsideM) {
  const auto d = Distribution::atom(0.0);
  EXPECT_EQ(d.mean(), 0.0);
  EXPECT_FALSE(d.in_m());
  EXPECT_THROW(d.require_m(), OutsideMError);
}

TEST(IntegralQuantile, Examples) {
  EXPECT_DOUBLE_EQ(two_point(0.5).integral_quantile(0.75), 0.25);
  for (const auto& m : battery()) {
    EXPECT_EQ(m.d.integral_quantile(0.0), 0.0) << m.name;
    EXPECT_NEAR(m.d.integral_quantile(1.0), m.d.mean(), 1e-12 * std::max(1.0, m.d.mean()))
        << m.name;
  }
  EXPECT_THROW(two_point(0.5).integral_quantile(1.5), DomainError);
}

TEST(IntegralQuantile, UniformClosedForm) {
  const auto d = Distribution::uniform(0, 1);
  for (double p : {0.1, 0.5, 0.9}) EXPECT_NEAR(d.integral_quantile(p), p * p / 2, 1e-12);
}

TEST(PartialMoment, TailComplement) {
  for (const auto& m : battery()) {
    for (double q : {0.0, 0.5, 1.0, 2.0}) {
      EXPECT_NEAR(m.d.partial_moment(q) + m.d.tail_moment(q), m.d.mean(), 1e-12) << m.name;
    }
  }
}

TEST(Rescale, Examples) {
  const auto a = rescale(Distribution::atom(1.0), 3.0);
  ASSERT_TRUE(a.is_discrete());
  EXPECT_EQ(a.atom_locations().size(), 1u);
  EXPECT_EQ(a.atom_locations()[0], 3.0);

  const auto u = rescale(Distribution::uniform(0, 1), 2.0);
  EXPECT_NEAR(u.cdf(1.0), 0.5, 1e-15);
  EXPECT_NEAR(u.quantile(0.9), 1.8, 1e-15);
  EXPECT_NEAR(u.mean(), 1.0, 1e-15);

  EXPECT_EQ(rescale(two_point(0.5), 2.0).quantile(0.75), 2.0);
}

TEST(Rescale, RejectsNonPositiveFactor) {
  EXPECT_THROW(rescale(Distribution::atom(1), 0.0), DomainError);
  EXPECT_THROW(rescale(Distribution::atom(1), -2.0), DomainError);
}

TEST(Rescale, QuantileScalesOnBattery) {
  for (const auto& m : battery()) {
    const auto r = rescale(m.d, 2.5);
    for (double p : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
      const double expected = 2.5 * m.d.quantile(p);
      if (m.d.is_discrete()) {
        EXPECT_EQ(r.quantile(p), expected) << m.name << " p=" << p;
      } else {
        EXPECT_NEAR(r.quantile(p), expected, 1e-10 * std::max(1.0, expected)) << m.name;
      }
    }
  }
}

TEST(Mixture, Examples) {
  const auto d = Distribution::exponential(1.5);
  const auto same = mixture({{1.0, d}});
  for (double x : {0.0, 0.3, 2.0}) EXPECT_EQ(same.cdf(x), d.cdf(x));
  EXPECT_DOUBLE_EQ(
      mixture({{0.5, Distribution::atom(0)}, {0.5, Distribution::atom(1)}}).cdf(0.0), 0.5);
  EXPECT_DOUBLE_EQ(figure_one().cdf(0.5), 0.75);
}

TEST(Mixture, WeightSumViolation) {
  EXPECT_THROW(mixture({{0.5, Distribution::atom(0)}, {0.4, Distribution::atom(1)}}),
               ValidationError);
  EXPECT_THROW(mixture({{1.5, Distribution::atom(0)}, {-0.5, Distribution::atom(1)}}),
               ValidationError);
}

TEST(Mixture, MergesCoincidentAtoms) {
  const auto d = mixture({{0.5, two_point(0.5)}, {0.5, Distribution::atom(1.0)}});
  ASSERT_TRUE(d.is_discrete());
  ASSERT_EQ(d.atom_locations().size(), 2u);
  EXPECT_DOUBLE_EQ(d.atom_weights()[1], 0.75);
}

TEST(Construction, InvalidComponents) {
  EXPECT_THROW(Distribution::atom(-1), ValidationError);
  EXPECT_THROW(Distribution::uniform(1, 1), ValidationError);
  EXPECT_THROW(Distribution::uniform(-1, 1), ValidationError);
  EXPECT_THROW(Distribution::lognormal(0, 0), ValidationError);
  EXPECT_THROW(Distribution::gamma(0, 1), ValidationError);
  EXPECT_THROW(Distribution::exponential(-1), ValidationError);
  EXPECT_THROW(Distribution::from_table({{0.1, 0.5}, {0, 1}, TableMode::step}), ValidationError);
  EXPECT_THROW(Distribution::from_table({{0.0, 0.5}, {1, 0}, TableMode::step}), ValidationError);
  EXPECT_THROW(Distribution::from_table({{0.0, 0.5}, {0, 1}, TableMode::linear}),
               ValidationError);
}

TEST(QuantileTable, StepModeIsLeftContinuous) {
  const auto d = Distribution::from_table({{0.0, 0.2, 0.7}, {0.0, 1.5, 4.0}, TableMode::step});
  EXPECT_TRUE(d.is_discrete());
  EXPECT_EQ(d.quantile(0.2), 0.0);
  EXPECT_EQ(d.quantile(0.2000001), 1.5);
  EXPECT_EQ(d.quantile(0.7), 1.5);
  EXPECT_EQ(d.quantile(0.71), 4.0);
}

TEST(QuantileTable, LinearModeInterpolates) {
  const auto d = Distribution::from_table({{0.0, 0.5, 1.0}, {0.0, 1.0, 3.0}, TableMode::linear});
  EXPECT_NEAR(d.quantile(0.25), 0.5, 1e-12);
  EXPECT_NEAR(d.quantile(0.75), 2.0, 1e-12);
  EXPECT_NEAR(d.mean(), 0.25 + 1.0, 1e-14);
}

TEST(Fsd, Examples) {
  EXPECT_TRUE(fsd_dominates(Distribution::atom(2), Distribution::atom(1), 64));
  EXPECT_FALSE(fsd_dominates(Distribution::atom(1), Distribution::atom(2), 64));
  const auto u = Distribution::uniform(0, 1);
  EXPECT_TRUE(fsd_dominates(u, quantile_approx(u, 4), 64));
  EXPECT_FALSE(fsd_dominates(quantile_approx(u, 4), u, 64));
}

TEST(Fsd, CrossingCdfsNeitherDominates) {
  const auto a = Distribution::uniform(0, 2);
  const auto b = Distribution::atom(1);
  EXPECT_FALSE(fsd_dominates(a, b, 128));
  EXPECT_FALSE(fsd_dominates(b, a, 128));
}

TEST(Sample, Examples) {
  const auto s = sample(Distribution::atom(3), 42, 5);
  EXPECT_EQ(s, std::vector<double>(5, 3.0));

  const auto d = Distribution::gamma(2.0, 1.0);
  EXPECT_EQ(sample(d, 7, 100), sample(d, 7, 100));
  EXPECT_NE(sample(d, 7, 100), sample(d, 8, 100));

  const auto u = sample(Distribution::uniform(0, 1), 2024, 100000);
  const double mean = std::accumulate(u.begin(), u.end(), 0.0) / u.size();
  EXPECT_NEAR(mean, 0.5, 0.01);
}

TEST(Sample, GlivenkoCantelliScale) {
  for (const auto& m : battery()) {
    SampleSet s;
    s.values = sample(m.d, 99, 100000);
    EXPECT_LT(kolmogorov_distance(empirical(s), m.d), 0.01) << m.name;
  }
}

TEST(Structure, BreakpointsIncludeAtomsAndZero) {
  const auto d = figure_one();
  const auto b = d.breakpoints();
  EXPECT_EQ(b.front(), 0.0);
  EXPECT_NE(std::find(b.begin(), b.end(), 0.5), b.end());
  EXPECT_NE(std::find(b.begin(), b.end(), 1.0), b.end());
  EXPECT_EQ(d.support_max(), 1.0);
  EXPECT_FALSE(d.has_unbounded_support());
  EXPECT_TRUE(Distribution::exponential(1).has_unbounded_support());
  EXPECT_LT(1 - Distribution::exponential(1).cdf(Distribution::exponential(1).truncation_point()),
            1e-11);
}

TEST(Structure, DescribeIsNonEmpty) { EXPECT_FALSE(figure_one().describe().empty()); }
