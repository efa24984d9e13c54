#include <gtest/gtest.h>

#include "sasred/torus.hpp"
#include "support/random.hpp"

using namespace sasred;
using sasred::testing::Gen;

namespace {

Vec v(std::initializer_list<double> xs) {
  Vec out(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) out[i++] = x;
  return out;
}

TorusAction ex1() { return TorusAction((Mat(2, 4) << 1, 1, 0, 0, 0, 0, 1, 1).finished()); }
TorusAction ex2() { return TorusAction((Mat(2, 4) << -1, 1, 0, 0, 0, 0, 1, 1).finished()); }

}  // namespace

TEST(FundamentalField, Examples) {
  Vec e1 = v({1, 0, 0, 0, 0, 0, 0, 0});
  EXPECT_EQ(ex1().fundamental_field(v({1, 0}), e1), v({0, 1, 0, 0, 0, 0, 0, 0}));
  EXPECT_EQ(ex1().fundamental_field(v({0, 0}), e1), Vec::Zero(8));
  EXPECT_EQ(ex2().fundamental_field(v({1, 0}), e1), v({0, -1, 0, 0, 0, 0, 0, 0}));
}

TEST(Momentum, Examples) {
  Vec e1 = v({1, 0, 0, 0, 0, 0, 0, 0});
  EXPECT_EQ(ex1().momentum(e1), v({1, 0}));
  EXPECT_EQ(ex2().momentum(e1), v({-1, 0}));
  EXPECT_EQ(TorusAction(Mat::Zero(2, 4)).momentum(e1), Vec::Zero(2));
}

TEST(Momentum, PairsWithEtaOfFundamentalFields) {
  auto st = SasakianStructure::round(4);
  Gen gen(31);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    TorusAction a(Mat::Random(3, 4));
    Vec p = gen.unit_point(8);
    Vec r = gen.gaussian(3);
    worst = std::max(worst, std::abs(a.momentum(p).dot(r) - st.eta(p, a.fundamental_field(r, p))));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(Momentum, InvariantAlongOrbitsAndEtaPreserved) {
  auto st = SasakianStructure::round(4);
  Gen gen(32);
  double inv = 0.0, lie = 0.0, tangent = 0.0;
  for (int k = 0; k < 100; ++k) {
    TorusAction a = k % 2 ? ex1() : ex2();
    Vec p = gen.unit_point(8);
    for (int b = 0; b < 2; ++b) {
      Vec r = Vec::Unit(2, b);
      Vec x = a.fundamental_field(r, p);
      tangent = std::max(tangent, std::abs(x.dot(p)));
      inv = std::max(inv, a.momentum_differential(p, x).cwiseAbs().maxCoeff());
      lie = std::max(lie, std::abs(eta_lie_derivative(st, a, r, p, gen.tangent(p))));
    }
  }
  EXPECT_LT(tangent, 1e-12);
  EXPECT_LT(inv, 1e-10);
  EXPECT_LT(lie, 1e-8);
}

TEST(KernelAlgebra, Examples) {
  auto k11 = kernel_algebra(MomentumCovector(v({1, 1})));
  ASSERT_EQ(k11.k(), 1);
  EXPECT_LT((k11.basis.row(0).transpose() - v({-1, 1}) / std::sqrt(2.0)).norm(), 1e-15);
  EXPECT_LT((kernel_algebra(MomentumCovector(v({1, 0}))).basis.row(0).transpose() - v({0, 1})).norm(), 1e-15);
  EXPECT_LT((kernel_algebra(MomentumCovector(v({0, 1}))).basis.row(0).transpose() - v({1, 0})).norm(), 1e-15);
  try {
    kernel_algebra(MomentumCovector(v({0, 0})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroMu);
  }
}

TEST(KernelAlgebra, OrthonormalAndAnnihilatesMu) {
  Gen gen(33);
  for (int k = 0; k < 50; ++k) {
    MomentumCovector mu(gen.gaussian(4));
    auto ka = kernel_algebra(mu);
    ASSERT_EQ(ka.k(), 3);
    EXPECT_LT((ka.basis * mu.mu).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((ka.basis * ka.basis.transpose() - Mat::Identity(3, 3)).norm(), 1e-12);
    EXPECT_EQ(kernel_algebra(mu).basis, ka.basis);
  }
}

TEST(SliceCondition, Examples) {
  EXPECT_TRUE(slice_condition(MomentumCovector(v({1, 1}))).holds);
  EXPECT_EQ(slice_condition(MomentumCovector(v({1, 1}))).rank, 2);
  EXPECT_TRUE(slice_condition(MomentumCovector(v({0, 0}))).holds);
  EXPECT_EQ(slice_condition(MomentumCovector(v({3, -1, 2}))).m, 0);
}

TEST(RayMembership, Examples) {
  MomentumCovector mu(v({1, 1}));
  auto a = ray_membership(v({0.5, 0.5}), mu);
  EXPECT_EQ(a.cls, RayClass::Positive);
  EXPECT_NEAR(a.s, 0.5, 1e-15);
  auto b = ray_membership(v({1, 0}), mu);
  EXPECT_EQ(b.cls, RayClass::Outside);
  EXPECT_NEAR(b.residual, 1.0 / std::sqrt(2.0), 1e-15);
  auto c = ray_membership(v({-1, 0}), MomentumCovector(v({1, 0})));
  EXPECT_EQ(c.cls, RayClass::Negative);
  EXPECT_NEAR(std::abs(c.s), 1.0, 1e-15);
  EXPECT_EQ(ray_membership(v({0, 0}), mu).cls, RayClass::Zero);
}

TEST(RayMembership, ScaleInvariant) {
  Gen gen(34);
  for (int k = 0; k < 200; ++k) {
    Vec mu = gen.gaussian(3);
    Vec j = k % 3 == 0 ? Vec(gen.uniform() * mu) : gen.gaussian(3);
    const double c = std::exp(gen.uniform(-2, 2));
    auto r1 = ray_membership(j, MomentumCovector(mu));
    auto r2 = ray_membership(j, MomentumCovector(c * mu));
    EXPECT_EQ(r1.cls, r2.cls);
    EXPECT_NEAR(r2.s, r1.s / c, 1e-12 * (1 + std::abs(r1.s)));
  }
}

TEST(LocalFreeness, Examples) {
  Gen gen(35);
  // mu = (1,0): K acts on (z2, z3) which vanish on the level set.
  auto k10 = kernel_algebra(MomentumCovector(v({1, 0})));
  Vec slice = Vec::Zero(8);
  slice.head(4) = gen.unit_point(4);
  auto f0 = local_freeness(ex1(), k10, slice);
  EXPECT_EQ(f0.rank, 0);
  EXPECT_TRUE(f0.degenerate);
  // mu = (1,1) on S^3(1/sqrt2) x S^3(1/sqrt2)
  Vec p(8);
  p << gen.unit_point(4) / std::sqrt(2.0), gen.unit_point(4) / std::sqrt(2.0);
  auto f1 = local_freeness(ex1(), kernel_algebra(MomentumCovector(v({1, 1}))), p);
  EXPECT_EQ(f1.rank, 1);
  EXPECT_FALSE(f1.degenerate);
  TorusAction circle((Mat(1, 2) << 1, 1).finished());
  auto f2 = local_freeness(circle, KernelAlgebra{Mat(0, 1)}, gen.unit_point(4));
  EXPECT_EQ(f2.rank, 0);
  EXPECT_FALSE(f2.degenerate);
}

TEST(TorusAction, IntegralityFlag) {
  EXPECT_TRUE(ex1().integral());
  EXPECT_FALSE(TorusAction((Mat(1, 2) << 1, std::sqrt(2.0)).finished()).integral());
}
