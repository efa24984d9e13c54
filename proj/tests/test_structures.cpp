#include <gtest/gtest.h>

#include "sasred/structures.hpp"
#include "support/fd_oracle.hpp"
#include "support/random.hpp"

using namespace sasred;
using sasred::testing::Gen;

namespace {

Vec v4(double a, double b, double c, double d) { return (Vec(4) << a, b, c, d).finished(); }
Vec a123() { return (Vec(3) << 1, 2, 3).finished(); }

// Tangent vector orthogonal (Euclidean) to xi.
Vec horizontal(Gen& gen, const Vec& p) {
  Vec v = gen.tangent(p);
  Vec ip = complex_mult(p);
  return v - v.dot(ip) * ip;
}

}  // namespace

TEST(Eta, RoundAndWeightedExamples) {
  auto round = SasakianStructure::round(2);
  Gen gen(11);
  Vec p = gen.unit_point(4);
  EXPECT_NEAR(round.eta(p, round.reeb(p)), 1.0, 1e-15);
  EXPECT_NEAR(round.eta(p, horizontal(gen, p)), 0.0, 1e-15);

  auto w = SasakianStructure::weighted((Vec(2) << 1, 2).finished());
  Vec e1 = v4(1, 0, 0, 0);
  Vec x = gen.tangent(e1);
  EXPECT_NEAR(w.eta(e1, x), round.eta(e1, x), 1e-15);
}

TEST(Reeb, Examples) {
  auto round = SasakianStructure::round(2);
  EXPECT_EQ(round.reeb(v4(1, 0, 0, 0)), v4(0, 1, 0, 0));
  auto w = SasakianStructure::weighted((Vec(2) << 1, 2).finished());
  EXPECT_EQ(w.reeb(v4(1, 0, 0, 0)), v4(0, 1, 0, 0));
  Vec p = v4(0, 0, 1, 0);
  EXPECT_EQ(w.reeb(p), v4(0, 0, 0, 2));
  EXPECT_NEAR(w.eta(p, w.reeb(p)), 1.0, 1e-15);
}

TEST(WeightedMetric, UnitWeightsGiveRoundMetric) {
  auto w = SasakianStructure::weighted(Vec::Ones(3));
  Gen gen(12);
  for (int k = 0; k < 50; ++k) {
    Vec p = gen.unit_point(6);
    Vec x = gen.tangent(p), y = gen.tangent(p);
    EXPECT_NEAR(weighted_metric(w, p, x, y), x.dot(y), 1e-9);
    EXPECT_NEAR(w.g(p, x, y), x.dot(y), 1e-12);
  }
}

TEST(WeightedMetric, JetFormMatchesClosedForm) {
  auto w = SasakianStructure::weighted(a123());
  Gen gen(13);
  for (int k = 0; k < 50; ++k) {
    Vec p = gen.unit_point(6);
    Vec x = gen.tangent(p), y = gen.tangent(p);
    const double jet = weighted_metric(w, p, x, y);
    EXPECT_NEAR(jet, w.g(p, x, y), 1e-10);
    EXPECT_NEAR(jet, weighted_metric(w, p, y, x), 1e-10);
    Vec r = w.reeb(p);
    EXPECT_NEAR(weighted_metric(w, p, r, r), 1.0, 1e-10);
    Vec xc = x - w.eta(p, x) * r;
    EXPECT_NEAR(w.g(p, r, xc), 0.0, 1e-10);
  }
}

TEST(WeightedMetric, NegativeOrientationKeepsTheMetric) {
  auto pos = SasakianStructure::weighted(a123());
  auto neg = SasakianStructure::weighted(a123(), Orientation::Negative);
  Gen gen(14);
  Vec p = gen.unit_point(6);
  Vec x = gen.tangent(p), y = gen.tangent(p);
  EXPECT_NEAR(weighted_metric(neg, p, x, y), weighted_metric(pos, p, x, y), 1e-10);
  EXPECT_NEAR(neg.eta(p, neg.reeb(p)), 1.0, 1e-14);
}

TEST(WeightedMetric, BadWeightsAreRejected) {
  try {
    SasakianStructure::weighted((Vec(2) << -1, 1).finished());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateContact);
  }
  try {
    SasakianStructure::weighted((Vec(2) << 2, 1).finished());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ValidationError);
  }
}

TEST(Phi, RoundExamples) {
  auto st = SasakianStructure::round(4);
  Gen gen(15);
  for (int k = 0; k < 20; ++k) {
    Vec p = gen.unit_point(8);
    PointTensors t(st, p);
    EXPECT_LT(t.phi(t.xi()).norm(), 1e-9);
    Vec x = horizontal(gen, p);
    EXPECT_LT((t.phi(x) - tangential_project(p, complex_mult(x))).norm(), 1e-9);
    EXPECT_LT((phi(st, p, x) - t.phi(x)).norm(), 1e-12);
  }
}

TEST(AlmostContact, IdentitiesOnBothStructures) {
  Gen gen(16);
  struct Case {
    SasakianStructure st;
    double tol;
  };
  std::vector<Case> cases = {{SasakianStructure::round(4), 1e-8}, {SasakianStructure::weighted(a123()), 1e-5}};
  for (const auto& c : cases) {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      Vec p = gen.unit_point(c.st.ambient_dim());
      PointTensors t(c.st, p);
      worst = std::max(worst, almost_contact_residuals(t, gen.tangent(p), gen.tangent(p)).worst());
    }
    EXPECT_LT(worst, c.tol) << c.st.name();
  }
}

TEST(Killing, RoundWeightedAndNegativeControl) {
  Gen gen(17);
  auto round = SasakianStructure::round(3);
  auto w = SasakianStructure::weighted(a123());
  double worst_r = 0.0, worst_w = 0.0;
  for (int k = 0; k < 100; ++k) {
    Vec p = gen.unit_point(6);
    Vec x = gen.tangent(p), y = gen.tangent(p);
    worst_r = std::max(worst_r, killing_residual(PointTensors(round, p), x, y));
    worst_w = std::max(worst_w, killing_residual(PointTensors(w, p), x, y));
  }
  EXPECT_LT(worst_r, 1e-9);
  EXPECT_LT(worst_w, 1e-5);

  // q -> P_q e_1 is a gradient field, far from Killing.
  auto control = round.with_reeb(TangentField::from_generic("projected-e1", extension_field(Vec::Unit(6, 0))));
  int large = 0;
  for (int k = 0; k < 20; ++k) {
    Vec p = gen.unit_point(6);
    Vec x = gen.unit_tangent(p);
    large += killing_residual(PointTensors(control, p), x, x) > 1e-2;
  }
  EXPECT_GE(large, 18);
}

TEST(Sasakian, RoundSphereResidual) {
  auto st = SasakianStructure::round(4);
  Gen gen(18);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    Vec p = gen.unit_point(8);
    worst = std::max(worst, sasakian_residual(PointTensors(st, p), gen.tangent(p), gen.tangent(p)));
  }
  EXPECT_LT(worst, 1e-7);
}

TEST(Sasakian, WeightedResidualAndFiniteDifferenceCrossCheck) {
  Gen gen(19);
  for (const Vec& a : {Vec((Vec(2) << 1, 2).finished()), a123()}) {
    auto st = SasakianStructure::weighted(a);
    double worst = 0.0, cross = 0.0;
    for (int k = 0; k < 20; ++k) {
      Vec p = gen.unit_point(st.ambient_dim());
      Vec x = gen.tangent(p), y = gen.tangent(p);
      PointTensors t(st, p);
      worst = std::max(worst, sasakian_residual(t, x, y));
      if (k < 5) {
        sasred::testing::FdCurvatureOracle oracle(st.metric(), p);
        Vec fd = oracle.curvature(x, t.xi(), y) - t.eta(y) * x + t.g(x, y) * t.xi();
        cross = std::max(cross, std::abs(t.norm(fd) - sasakian_residual(t, x, y)));
      }
    }
    EXPECT_LT(worst, 1e-4);
    EXPECT_LT(cross, 1e-3);
  }
}

TEST(Sasakian, StretchedMetricNegativeControl) {
  auto round = SasakianStructure::round(2);
  auto stretched = MetricEvaluator::from_generic(
      "stretched", [](const auto&, const auto& x, const auto& y) { return dot(x, y) + x[0] * y[0]; });
  auto control = SasakianStructure::custom("stretched", 2, stretched, round.eta_form(), round.reeb_field());
  Gen gen(20);
  double best = 0.0;
  for (int k = 0; k < 10; ++k) {
    Vec p = gen.unit_point(4);
    best = std::max(best, sasakian_residual(PointTensors(control, p), gen.unit_tangent(p), gen.unit_tangent(p)));
  }
  EXPECT_GT(best, 1e-1);
}

TEST(Sasakian, OrientationFlipLeavesResidualsUnchanged) {
  auto pos = SasakianStructure::weighted(a123());
  auto neg = SasakianStructure::weighted(a123(), Orientation::Negative);
  Gen gen(21);
  for (int k = 0; k < 10; ++k) {
    Vec p = gen.unit_point(6);
    Vec x = gen.tangent(p), y = gen.tangent(p);
    PointTensors tp(pos, p), tn(neg, p);
    EXPECT_NEAR(sasakian_residual(tp, x, y), sasakian_residual(tn, x, y), 1e-6);
    EXPECT_NEAR(killing_residual(tp, x, y), killing_residual(tn, x, y), 1e-8);
    EXPECT_NEAR(almost_contact_residuals(tp, x, y).worst(), almost_contact_residuals(tn, x, y).worst(), 1e-6);
  }
}

TEST(Reeb, ContractionAndNondegeneracy) {
  Gen gen(22);
  for (const auto& st : {SasakianStructure::round(4), SasakianStructure::weighted((Vec(4) << 1, 1, 2, 5).finished())}) {
    double worst = 0.0, smallest = 1e300;
    for (int k = 0; k < 100; ++k) {
      Vec p = gen.unit_point(8);
      worst = std::max(worst, reeb_contraction_residual(st, p, gen.tangent(p)));
      smallest = std::min(smallest, contact_nondegeneracy(st, p));
    }
    EXPECT_LT(worst, 1e-9) << st.name();
    EXPECT_GT(smallest, 1e-6) << st.name();
  }
}

TEST(WeightedMetric, UnitWeightsAgreeWithRoundTensors) {
  auto round = SasakianStructure::round(3);
  auto w = SasakianStructure::weighted(Vec::Ones(3), Orientation::Positive, "unit-weighted");
  Gen gen(23);
  for (int k = 0; k < 20; ++k) {
    Vec p = gen.unit_point(6);
    Vec x = gen.tangent(p), y = gen.tangent(p);
    PointTensors a(round, p), b(w, p);
    EXPECT_LT((a.phi(x) - b.phi(x)).norm(), 1e-9);
    EXPECT_LT((a.curvature(x, y, x) - b.curvature(x, y, x)).norm(), 1e-9);
    EXPECT_NEAR(a.eta(x), b.eta(x), 1e-14);
  }
}
