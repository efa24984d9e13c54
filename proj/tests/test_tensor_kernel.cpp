#include <gtest/gtest.h>

#include "sasred/structures.hpp"
#include "sasred/tensor_kernel.hpp"
#include "support/fd_oracle.hpp"
#include "support/random.hpp"

using namespace sasred;
using sasred::testing::Gen;

namespace {

Vec v4(double a, double b, double c, double d) { return (Vec(4) << a, b, c, d).finished(); }

// q -> P_q (M q), a smooth tangent field for torsion and compatibility checks.
auto linear_field(const Mat& m) {
  return [m](const auto& q) {
    using S = typename std::decay_t<decltype(q)>::value_type;
    JVec<S> mq(q.size(), S(0.0));
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) mq[i] += q[j] * m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return tangential_project(q, mq);
  };
}

double derivative_of_metric(const MetricEvaluator& g, const Vec& p, const Vec& x, const auto& yf, const auto& zf) {
  JVec<Jet2d> c = retraction_curve(p, x);
  return g.jet(c, yf(c), zf(c)).d1;
}

}  // namespace

TEST(ComplexMult, Examples) {
  EXPECT_EQ(complex_mult(Vec((Vec(2) << 1, 0).finished())), Vec((Vec(2) << 0, 1).finished()));
  EXPECT_EQ(complex_mult(v4(0, 1, 1, 0)), v4(-1, 0, 0, 1));
  Gen gen(1);
  Vec v = gen.gaussian(6);
  EXPECT_LT((complex_mult(complex_mult(v)) + v).norm(), 1e-15);
}

TEST(TangentialProject, Examples) {
  Gen gen(2);
  Vec p = gen.unit_point(6);
  EXPECT_LT(tangential_project(p, p).norm(), 1e-15);
  Vec t = gen.tangent(p);
  EXPECT_LT((tangential_project(p, t) - t).norm(), 1e-14);
  EXPECT_EQ(tangential_project(v4(1, 0, 0, 0), v4(1, 1, 0, 0)), v4(0, 1, 0, 0));
}

TEST(GramSchmidt, TextbookCase) {
  auto e = euclidean_metric();
  Vec p = v4(0, 0, 1, 0);
  Frame f = gram_schmidt(e, p, {v4(1, 1, 0, 0), v4(0, 1, 0, 0)});
  ASSERT_EQ(f.size(), 2u);
  EXPECT_LT((f.vectors[0] - v4(1, 1, 0, 0) / std::sqrt(2.0)).norm(), 1e-15);
  EXPECT_LT((f.vectors[1] - v4(-1, 1, 0, 0) / std::sqrt(2.0)).norm(), 1e-15);
}

TEST(GramSchmidt, DropsDependentAndIsFixedOnOrthonormal) {
  auto e = euclidean_metric();
  Gen gen(3);
  Vec p = gen.unit_point(6);
  Vec v = gen.tangent(p), w = gen.tangent(p);
  Frame f = gram_schmidt(e, p, {v, 2.0 * v, w});
  EXPECT_EQ(f.size(), 2u);
  EXPECT_LT(f.orthonormality_defect(e), 1e-12);
  Frame again = gram_schmidt(e, p, f.vectors);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_LT((again.vectors[i] - f.vectors[i]).norm(), 1e-12);
  Frame repeat = gram_schmidt(e, p, {v, 2.0 * v, w});
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(repeat.vectors[i], f.vectors[i]);
  EXPECT_THROW(
      {
        try {
          gram_schmidt(e, p, {Vec::Zero(6)});
        } catch (const Error& err) {
          EXPECT_EQ(err.kind(), ErrorKind::EmptyFrame);
          throw;
        }
      },
      Error);
}

TEST(GramSchmidt, WeightedMetricOrthonormality) {
  auto st = SasakianStructure::weighted((Vec(3) << 1, 2, 3).finished());
  Gen gen(4);
  for (int k = 0; k < 20; ++k) {
    Vec p = gen.unit_point(6);
    Mat b = sphere_tangent_basis(p);
    std::vector<Vec> cols;
    for (Eigen::Index i = 0; i < b.cols(); ++i) cols.push_back(b.col(i));
    Frame f = gram_schmidt(st.metric(), p, cols);
    EXPECT_EQ(f.size(), 5u);
    EXPECT_LT(f.orthonormality_defect(st.metric()), 1e-10);
  }
}

TEST(DirectionalDerivative, Examples) {
  Gen gen(5);
  Vec p = gen.unit_point(4);
  Vec v = gen.tangent(p);
  auto constant = [](const auto& q) {
    using S = typename std::decay_t<decltype(q)>::value_type;
    return JVec<S>(q.size(), S(0.5));
  };
  EXPECT_LT(directional_derivative(constant, p, v).first.norm(), 1e-15);
  auto identity = [](const auto& q) { return q; };
  auto d = directional_derivative(identity, p, v);
  EXPECT_LT((d.first - v).norm(), 1e-14);
  // second derivative of normalize(p + t v) is -|v|^2 p
  EXPECT_LT((d.second + v.squaredNorm() * p).norm(), 1e-13);
  auto times_i = [](const auto& q) { return complex_mult(q); };
  EXPECT_LT((directional_derivative(times_i, p, v).first - complex_mult(v)).norm(), 1e-14);
}

TEST(DirectionalDerivative, RejectsFieldsWithoutJets) {
  TangentField plain("plain", [](const Vec& q) { return q; });
  Vec p = v4(1, 0, 0, 0);
  try {
    directional_derivative(plain, p, v4(0, 1, 0, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotDifferentiable);
  }
}

TEST(Koszul, RoundReebMatchesGaussFormula) {
  auto g = euclidean_metric();
  auto xi = [](const auto& q) { return complex_mult(q); };
  Gen gen(6);
  for (int k = 0; k < 100; ++k) {
    Vec p = gen.unit_point(8);
    Vec x = gen.tangent(p);
    Vec gauss = tangential_project(p, directional_derivative(xi, p, x).first);
    EXPECT_LT((koszul_connection(g, p, x, xi) - gauss).norm(), 1e-9);
  }
}

TEST(Koszul, CompatibleAndTorsionFree) {
  Gen gen(7);
  std::vector<MetricEvaluator> metrics = {euclidean_metric(),
                                          SasakianStructure::weighted((Vec(3) << 1, 2, 3).finished()).metric()};
  for (const auto& g : metrics) {
    double worst_c = 0.0, worst_t = 0.0;
    for (int k = 0; k < 100; ++k) {
      Vec p = gen.unit_point(6);
      Vec x = gen.tangent(p);
      Vec xv = gen.tangent(p);
      auto yf = linear_field(Mat::Random(6, 6));
      auto zf = linear_field(Mat::Random(6, 6));
      auto xf = linear_field(Mat::Random(6, 6));
      Vec y = to_eigen(yf(to_std(p))), z = to_eigen(zf(to_std(p))), xx = to_eigen(xf(to_std(p)));
      SphereChart chart(p);
      auto geom = LocalGeometry::build(chart, g);
      double lhs = derivative_of_metric(g, p, x, yf, zf);
      double rhs = g(p, geom.covariant_derivative(chart, x, yf), z) + g(p, y, geom.covariant_derivative(chart, x, zf));
      worst_c = std::max(worst_c, std::abs(lhs - rhs));
      Vec torsion = geom.covariant_derivative(chart, xx, yf) - geom.covariant_derivative(chart, y, xf) - lie_bracket(xf, yf, p);
      worst_t = std::max(worst_t, torsion.norm());
      (void)xv;
    }
    EXPECT_LT(worst_c, 1e-8) << g.name();
    EXPECT_LT(worst_t, 1e-8) << g.name();
  }
}

TEST(Koszul, SingularMetricFailsLoudly) {
  auto degenerate = MetricEvaluator::from_generic("rank-one", [](const auto&, const auto& x, const auto& y) { return x[0] * y[0]; });
  try {
    koszul_connection(degenerate, v4(0, 0, 1, 0), v4(1, 0, 0, 0), extension_field(v4(0, 1, 0, 0)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularMetric);
  }
}

TEST(Curvature, RoundSphereIsConstantOne) {
  auto g = euclidean_metric();
  Gen gen(8);
  double worst = 0.0, anti = 0.0;
  for (int k = 0; k < 100; ++k) {
    Vec p = gen.unit_point(8);
    Vec x = gen.tangent(p), y = gen.tangent(p), z = gen.tangent(p);
    SphereChart chart(p);
    auto geom = LocalGeometry::build(chart, g);
    Vec expect = y.dot(z) * x - x.dot(z) * y;
    worst = std::max(worst, (geom.curvature(x, y, z) - expect).norm());
    anti = std::max(anti, geom.curvature(x, x, z).norm());
  }
  EXPECT_LT(worst, 1e-7);
  EXPECT_LT(anti, 1e-12);
}

TEST(Curvature, WeightedMetricMatchesFiniteDifferenceOracle) {
  auto st = SasakianStructure::weighted((Vec(2) << 1, 2).finished());
  Gen gen(9);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    Vec p = gen.unit_point(4);
    Vec x = gen.tangent(p), y = gen.tangent(p), z = gen.tangent(p);
    sasred::testing::FdCurvatureOracle oracle(st.metric(), p);
    Vec fd = oracle.curvature(x, y, z);
    Vec jet = curvature_operator(st.metric(), p, x, y, z);
    worst = std::max(worst, (fd - jet).norm());
  }
  EXPECT_LT(worst, 1e-4);
}

TEST(LieBracket, Examples) {
  Gen gen(10);
  Vec p = gen.unit_point(8);
  auto f1 = [](const auto& q) { return complex_mult(q); };
  EXPECT_LT(lie_bracket(f1, f1, p).norm(), 1e-15);
  Vec w1 = (Vec(4) << 1, 1, 0, 0).finished(), w2 = (Vec(4) << 0, 0, 1, 1).finished();
  auto x1 = [w1](const auto& q) { return complex_mult(pair_scale(w1, q)); };
  auto x2 = [w2](const auto& q) { return complex_mult(pair_scale(w2, q)); };
  EXPECT_LT(lie_bracket(x1, x2, p).norm(), 1e-9);
  EXPECT_LT(lie_bracket(x1, f1, p).norm(), 1e-8);
}
