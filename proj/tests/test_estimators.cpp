#include <gtest/gtest.h>

#include <sstream>

#include "battery.hpp"
#include "ineq/errors.hpp"
#include "ineq/estimators.hpp"
#include "ineq/indices.hpp"
#include "ineq/lorenz.hpp"
#include "ineq/wasserstein.hpp"

using namespace ineq;
using namespace ineq::testing;

namespace {
SampleSet of(std::vector<double> v) {
  SampleSet s;
  s.values = std::move(v);
  return s;
}
}  // namespace

TEST(Empirical, MergesDuplicates) {
  const auto d = empirical(of({1, 1, 2}));
  ASSERT_EQ(d.atom_locations().size(), 2u);
  EXPECT_DOUBLE_EQ(d.atom_weights()[0], 2.0 / 3);
  EXPECT_DOUBLE_EQ(d.atom_weights()[1], 1.0 / 3);
}

TEST(Empirical, Singleton) {
  const auto d = empirical(of({5}));
  EXPECT_EQ(d.quantile(0.5), 5.0);
  EXPECT_EQ(d.mean(), 5.0);
}

TEST(Empirical, GlivenkoCantelli) {
  const auto u = Distribution::uniform(0, 1);
  EXPECT_LT(kolmogorov_distance(empirical(SampleSet::synthetic(u, 5, 10000)), u), 0.02);
}

TEST(Empirical, EmptyIsValidationError) { EXPECT_THROW(empirical(of({})), ValidationError); }

TEST(QuantileApprox, Examples) {
  const auto u2 = quantile_approx(Distribution::uniform(0, 1), 2);
  ASSERT_EQ(u2.atom_locations().size(), 2u);
  EXPECT_EQ(u2.atom_locations()[0], 0.0);
  EXPECT_NEAR(u2.atom_locations()[1], 0.5, 1e-15);

  const auto one = quantile_approx(Distribution::gamma(2, 1), 1);
  EXPECT_EQ(one.atom_locations().size(), 1u);
  EXPECT_EQ(one.atom_locations()[0], 0.0);

  const auto dx = quantile_approx(Distribution::atom(3), 5);
  ASSERT_EQ(dx.atom_locations().size(), 2u);
  EXPECT_DOUBLE_EQ(dx.atom_weights()[0], 0.2);
  EXPECT_EQ(dx.atom_locations()[1], 3.0);
}

TEST(QuantileApprox, Errors) {
  EXPECT_THROW(quantile_approx(Distribution::uniform(0, 1), 0), DomainError);
  EXPECT_THROW(quantile_approx(Distribution::atom(0), 4), OutsideMError);
}

TEST(QuantileApprox, Sandwich) {
  for (const auto& m : battery()) {
    for (int l = 1; l <= 256; l *= 2) {
      const auto a = quantile_approx(m.d, l);
      for (int i = 0; i <= 200; ++i) {
        const double x = m.d.truncation_point() * i / 200.0;
        const double gap = a.cdf(x) - m.d.cdf(x);
        EXPECT_GE(gap, 0.0) << m.name << " l=" << l << " x=" << x;
        EXPECT_LE(gap, 1.0 / l) << m.name << " l=" << l << " x=" << x;
      }
    }
  }
}

TEST(QuantileOfSample, Examples) {
  const auto d = quantile_of_sample(of({0, 1, 2, 3}), 2);
  ASSERT_EQ(d.atom_locations().size(), 2u);
  // Q_n(0) = 0 and Q_n(1/2) = 1: the empirical cdf reaches 1/2 at 1.
  EXPECT_EQ(d.atom_locations()[0], 0.0);
  EXPECT_EQ(d.atom_locations()[1], 1.0);

  const auto s = of({4, 1, 3, 2});
  const auto e = quantile_of_sample(s, 4);
  const std::vector<double> expected{0, 1, 2, 3};
  EXPECT_EQ(std::vector<double>(e.atom_locations().begin(), e.atom_locations().end()), expected);

  const auto five = quantile_of_sample(of({5}), 3);
  EXPECT_DOUBLE_EQ(five.atom_weights()[0], 1.0 / 3);
  EXPECT_EQ(five.atom_locations()[1], 5.0);
}

TEST(QuantileOfSample, DominatedByEmpirical) {
  Gen g(11);
  for (int c = 0; c < 50; ++c) {
    const auto s = g.sample_set();
    const int l = g.integer(1, 64);
    EXPECT_TRUE(fsd_dominates(empirical(s), quantile_of_sample(s, l), 128));
  }
}

TEST(Kde, GaussianSingleAtom) {
  const auto d = kde(of({1}), KernelSpec(KernelName::gaussian), 1.0);
  EXPECT_NEAR(d.cdf(1.0), 0.5, 1e-15);
}

TEST(Kde, UniformKernelRamp) {
  const auto d = kde(of({2}), KernelSpec(KernelName::uniform), 1.0);
  EXPECT_NEAR(d.cdf(2.0), 0.5, 1e-15);
  EXPECT_NEAR(d.cdf(3.0), 1.0, 1e-15);
  EXPECT_NEAR(d.cdf(1.0), 0.0, 1e-15);
  EXPECT_NEAR(d.quantile(0.25), 1.5, 1e-12);
}

TEST(Kde, CutInZeroAtom) {
  const auto d = kde(of({0.1, 0.5}), KernelSpec(KernelName::gaussian), 0.5);
  const KernelSpec k(KernelName::gaussian);
  const double at0 = 0.5 * (k.cdf(-0.2) + k.cdf(-1.0));
  EXPECT_NEAR(d.cdf(0.0), at0, 1e-14);
  EXPECT_EQ(d.quantile(at0 * 0.5), 0.0);
  EXPECT_GT(d.quantile(at0 + 1e-6), 0.0);
}

TEST(Kde, CdfFormulaAllKernels) {
  const auto s = of({0.0, 0.3, 1.0, 1.0, 2.5});
  for (auto name : {KernelName::gaussian, KernelName::epanechnikov, KernelName::uniform}) {
    const KernelSpec k(name);
    const auto d = kde(s, k, 0.4);
    for (double t = 0.0; t <= 4.0; t += 0.05) {
      double expected = 0.0;
      for (double x : s.values) expected += k.cdf((t - x) / 0.4);
      EXPECT_NEAR(d.cdf(t), expected / s.values.size(), 1e-10) << k.name_string() << " t=" << t;
    }
    EXPECT_NEAR(d.mean_via_survival(), d.mean(), 1e-8) << k.name_string();
  }
}

TEST(Kde, ShrinkingBandwidthApproachesEmpirical) {
  const auto s = of({0.5, 1.0, 3.0});
  double prev = 1e9;
  for (double h : {1.0, 0.3, 0.1, 0.03, 0.01}) {
    const double d = w1(kde(s, KernelSpec(KernelName::epanechnikov), h), empirical(s));
    EXPECT_LT(d, prev);
    prev = d;
  }
  EXPECT_LT(prev, 0.01);
}

TEST(Kde, Errors) {
  EXPECT_THROW(kde(of({1}), KernelSpec(), 0.0), DomainError);
  EXPECT_THROW(kde(of({1}), KernelSpec(), -1.0), DomainError);
  EXPECT_THROW(KernelSpec::from_name("triangle"), ValidationError);
}

TEST(Kernel, DensityIntegratesToOne) {
  for (auto name : {KernelName::gaussian, KernelName::epanechnikov, KernelName::uniform}) {
    const KernelSpec k(name);
    double s = 0.0, m = 0.0;
    const int n = 200000;
    const double r = k.reach();
    for (int i = 0; i < n; ++i) {
      const double y = -r + (i + 0.5) * 2 * r / n;
      s += k.density(y) * 2 * r / n;
      m += std::abs(y) * k.density(y) * 2 * r / n;
    }
    EXPECT_NEAR(s, 1.0, 1e-6) << k.name_string();
    EXPECT_NEAR(m, k.first_abs_moment(), 1e-6) << k.name_string();
    EXPECT_EQ(KernelSpec::from_name(k.name_string()), k);
  }
}

TEST(EstimateGini, Examples) {
  EXPECT_EQ(estimate_gini(of({1, 1, 1})), 0.0);
  EXPECT_DOUBLE_EQ(estimate_gini(of({0, 1})), 0.5);
  EXPECT_NEAR(estimate_gini(of({1, 2, 3})), 4.0 / 18, 1e-15);
  EXPECT_THROW(estimate_gini(of({0, 0})), OutsideMError);
}

TEST(EstimateHoover, Examples) {
  EXPECT_EQ(estimate_hoover(of({1, 1, 1})), 0.0);
  EXPECT_DOUBLE_EQ(estimate_hoover(of({0, 1})), 0.5);
  EXPECT_DOUBLE_EQ(estimate_hoover(of({0, 0, 1, 3})), 0.5);
  EXPECT_THROW(estimate_hoover(of({0})), OutsideMError);
}

TEST(EstimateLorenz, Examples) {
  const auto s = of({2, 1, 1});
  EXPECT_EQ(estimate_lorenz_at(s, 0.0), 0.0);
  EXPECT_EQ(estimate_lorenz_at(s, 1.0), 1.0);
  EXPECT_NEAR(estimate_lorenz_at(s, 1.0 / 3), 0.25, 1e-15);
  EXPECT_NEAR(estimate_lorenz_at(s, 0.5), 0.375, 1e-15);
  EXPECT_THROW(estimate_lorenz_at(s, 1.5), DomainError);
  EXPECT_THROW(estimate_lorenz_at(of({0, 0}), 0.5), OutsideMError);
}

TEST(Ingestion, ParsesCommentsBlanksAndCommas) {
  std::istringstream in("# header\n1.5\n\n  2e-1 \n3,\n# trailing\n0\n");
  const auto s = read_samples(in, "mem");
  const std::vector<double> expected{1.5, 0.2, 3.0, 0.0};
  EXPECT_EQ(s.values, expected);
  EXPECT_EQ(s.provenance.kind, Provenance::Kind::file);
}

TEST(Ingestion, LineNumberedErrors) {
  auto message = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_samples(in, "mem");
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message("1\n-2\n").find(":2"), std::string::npos);
  EXPECT_NE(message("1\n2\nnan\n").find(":3"), std::string::npos);
  EXPECT_NE(message("inf\n").find(":1"), std::string::npos);
  EXPECT_NE(message("1\nabc\n").find(":2"), std::string::npos);
  EXPECT_NE(message("# nothing\n"), "");
}

TEST(Ingestion, MissingFile) {
  EXPECT_THROW(read_sample_file("/nonexistent/file.csv"), ValidationError);
}

TEST(Synthetic, ProvenanceAndDeterminism) {
  const auto d = Distribution::exponential(1);
  const auto a = SampleSet::synthetic(d, 3, 50);
  EXPECT_EQ(a.values, SampleSet::synthetic(d, 3, 50).values);
  EXPECT_EQ(a.provenance.kind, Provenance::Kind::synthetic);
  EXPECT_EQ(a.provenance.seed, 3u);
}
