#include <gtest/gtest.h>

#include <numbers>

#include "sasred/curvature_lab.hpp"
#include "support/random.hpp"
#include "support/sites.hpp"

using namespace sasred;
using sasred::testing::Gen;
using sasred::testing::SiteSet;
using sasred::testing::vec;

namespace {

Vec random_in(const Mat& b, Gen& g) { return b * g.gaussian(b.cols()); }

Vec tangent_of(const sasred::testing::Site& s, Gen& g) { return random_in(s.lp->tangent_basis(), g); }

Vec horizontal_of(const sasred::testing::Site& s, Gen& g) { return random_in(s.frame->horizontal_matrix(), g); }

Vec contact_of(const sasred::testing::Site& s, Gen& g) { return random_in(s.frame->contactD.matrix(), g).normalized(); }

// Field q -> P_H(q) x, generic in the scalar type.
auto horizontal_extension(const LevelSetPoint& lp, Vec x) {
  return [&lp, x](const auto& q) {
    auto p = lp.horizontal_projector_at(q);
    using S = std::decay_t<decltype(q[0])>;
    JVec<S> out(q.size(), S(0.0));
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = 0; j < out.size(); ++j) out[i] += p(i, j) * x[static_cast<Eigen::Index>(j)];
    return out;
  };
}

SiteSet ex1_sites(std::size_t n = 10, std::uint64_t seed = 11) {
  return SiteSet(willett_setup(sasred::testing::ex1_action(), MomentumCovector(vec({1, 1}))), n, seed);
}

}  // namespace

TEST(SecondFundamentalForm, SymmetricAndDualToTheWeingartenMap) {
  auto set = ex1_sites();
  Gen g(3);
  for (const auto& s : set.sites()) {
    for (int k = 0; k < 5; ++k) {
      Vec x = tangent_of(s, g), y = tangent_of(s, g);
      EXPECT_LT((s.sg->second_fundamental_form(x, y) - s.sg->second_fundamental_form(y, x)).norm(), 1e-8);
      // g(h(X,Y), nu) against the independently differentiated unit normal phi X_b / |X_b|.
      Vec xb = set.setup().action.fundamental_field(set.setup().constraint_rows.row(0).transpose(), s.lp->point());
      Vec nu = s.sg->phi(xb).normalized();
      EXPECT_NEAR(s.sg->g(s.sg->second_fundamental_form(x, y), nu), weingarten_check(*s.sg, 0, x, y).lhs, 1e-8);
    }
  }
}

TEST(SecondFundamentalForm, GreatSphereIsTotallyGeodesic) {
  SiteSet set(zero_level_setup(TorusAction((Mat(1, 4) << 1, 0, 0, 0).finished())), 5, 2);
  Gen g(4);
  for (const auto& s : set.sites()) {
    EXPECT_EQ(s.lp->tangent_basis().cols(), 5);
    for (int k = 0; k < 10; ++k) {
      Vec x = tangent_of(s, g), y = tangent_of(s, g);
      EXPECT_LT(s.sg->second_fundamental_form(x, y).norm(), 1e-8);
    }
  }
}

TEST(SecondFundamentalForm, ProductOfSpheresClosedForm) {
  auto set = ex1_sites(8, 5);
  Gen g(5);
  for (const auto& s : set.sites()) {
    const Vec& p = s.lp->point();
    Vec p1 = p, p2 = p;
    p1.tail(4).setZero();
    p2.head(4).setZero();
    const double r1 = p1.norm(), r2 = p2.norm();
    // Unit normal of S^3(r1) x S^3(r2) in S^7 and the great-circle acceleration in the first factor.
    Vec nu = (r2 / r1) * p1 - (r1 / r2) * p2;
    for (int k = 0; k < 5; ++k) {
      Vec x = g.gaussian(8);
      x.tail(4).setZero();
      x -= x.dot(p1) / (r1 * r1) * p1;
      x.normalize();
      Vec expect = -(r2 / r1) * nu;
      Vec h = s.sg->second_fundamental_form(x, x);
      EXPECT_LT((h - expect).norm(), 1e-8);
      EXPECT_NEAR(h.norm(), 1.0, 1e-8);
    }
  }
}

TEST(Weingarten, DisplayedFormulaOnExampleOne) {
  auto set = ex1_sites(10, 21);
  Gen g(6);
  double worst = 0.0;
  for (const auto& s : set.sites())
    for (int k = 0; k < 5; ++k) worst = std::max(worst, weingarten_check(*s.sg, 0, tangent_of(s, g), tangent_of(s, g)).residual());
  EXPECT_LT(worst, 1e-7);
}

TEST(Weingarten, ReebDirection) {
  auto set = ex1_sites(5, 22);
  Gen g(7);
  for (const auto& s : set.sites()) {
    EXPECT_LT(weingarten_check(*s.sg, 0, s.sg->xi(), tangent_of(s, g)).residual(), 1e-8);
    EXPECT_LT(weingarten_check(*s.sg, 0, tangent_of(s, g), s.sg->xi()).residual(), 1e-8);
  }
}

TEST(ONeill, AntisymmetricAndMatchesHalfBracket) {
  auto set = ex1_sites(10, 31);
  Gen g(8);
  double worst_bracket = 0.0;
  for (const auto& s : set.sites()) {
    for (int k = 0; k < 5; ++k) {
      Vec x = horizontal_of(s, g), y = horizontal_of(s, g);
      EXPECT_LT(s.sg->oneill_A(x, x).norm(), 1e-8);
      EXPECT_LT((s.sg->oneill_A(x, y) + s.sg->oneill_A(y, x)).norm(), 1e-8);
      Mat pv = s.sg->vertical_projector();
      Vec oracle = 0.5 * lie_bracket(horizontal_extension(*s.lp, x), horizontal_extension(*s.lp, y), s.lp->point(), &pv);
      worst_bracket = std::max(worst_bracket, (s.sg->oneill_A(x, y) - oracle).norm());
    }
  }
  EXPECT_LT(worst_bracket, 1e-6);
}

TEST(ONeill, VanishesAgainstTheReebField) {
  auto set = ex1_sites(5, 32);
  Gen g(9);
  for (const auto& s : set.sites()) {
    Vec x = horizontal_of(s, g);
    EXPECT_LT(s.sg->oneill_A(x, s.sg->xi()).norm(), 1e-8);
  }
}

TEST(GaussEquation, AgreesWithTheIntrinsicJetEngine) {
  auto set = ex1_sites(10, 41);
  Gen g(10);
  double worst = 0.0;
  for (const auto& s : set.sites()) {
    for (int k = 0; k < 5; ++k) {
      Vec x = tangent_of(s, g), y = tangent_of(s, g), z = tangent_of(s, g), w = tangent_of(s, g);
      worst = std::max(worst, std::abs(s.sg->level_R(x, y, z, w) - s.sg->level_R_direct(x, y, z, w)));
    }
  }
  EXPECT_LT(worst, 1e-5);
}

TEST(QuotientCurvature, PairSymmetriesAndBianchi) {
  auto set = ex1_sites(5, 51);
  Gen g(11);
  for (const auto& s : set.sites()) {
    Vec x = horizontal_of(s, g), y = horizontal_of(s, g), z = horizontal_of(s, g), w = horizontal_of(s, g);
    const auto& sg = *s.sg;
    const double r = sg.quotient_R(x, y, z, w);
    EXPECT_NEAR(r, -sg.quotient_R(y, x, z, w), 1e-7);
    EXPECT_NEAR(r, -sg.quotient_R(x, y, w, z), 1e-7);
    EXPECT_NEAR(r, sg.quotient_R(z, w, x, y), 1e-7);
    EXPECT_NEAR(sg.quotient_R(x, y, z, w) + sg.quotient_R(y, z, x, w) + sg.quotient_R(z, x, y, w), 0.0, 1e-7);
  }
}

TEST(QuotientCurvature, ReebSlotsReduceToTheLevelSet) {
  auto set = ex1_sites(10, 52);
  Gen g(12);
  for (const auto& s : set.sites()) {
    Vec x = horizontal_of(s, g), y = horizontal_of(s, g), z = horizontal_of(s, g);
    const Vec& xi = s.sg->xi();
    EXPECT_NEAR(s.sg->quotient_R(x, xi, y, z), s.sg->level_R_direct(x, xi, y, z), 1e-6);
    EXPECT_NEAR(s.sg->quotient_R(x, xi, y, z), s.sg->ambient_R(x, xi, y, z), 1e-6);
  }
}

TEST(QuotientCurvature, HopfFibrationGivesFour) {
  SiteSet set(orbit_space_setup(TorusAction((Mat(1, 2) << 1, 1).finished())), 10, 61, 2);
  for (const auto& s : set.sites()) {
    ASSERT_EQ(s.frame->horizontal_matrix().cols(), 2);
    Vec x = s.frame->horizontal_matrix().col(0), y = s.frame->horizontal_matrix().col(1);
    EXPECT_NEAR(horizontal_sectional(*s.sg, x, y), 4.0, 1e-7);
    EXPECT_NEAR(s.sg->level_R(x, y, y, x), 1.0, 1e-9);
  }
}

TEST(QuotientSasakian, ExampleOne) {
  auto set = ex1_sites(20, 71);
  Gen g(13);
  double worst = 0.0;
  for (const auto& s : set.sites())
    for (int k = 0; k < 5; ++k) worst = std::max(worst, quotient_sasakian_residual(*s.sg, contact_of(s, g), horizontal_of(s, g)));
  EXPECT_LT(worst, 1e-5);
}

TEST(QuotientSasakian, ExampleThreeQuotientSphere) {
  SiteSet set(willett_setup(sasred::testing::ex3_action(), MomentumCovector(vec({0, 1}))), 10, 72);
  Gen g(14);
  double worst = 0.0;
  for (const auto& s : set.sites())
    for (int k = 0; k < 5; ++k) worst = std::max(worst, quotient_sasakian_residual(*s.sg, contact_of(s, g), horizontal_of(s, g)));
  EXPECT_LT(worst, 1e-5);
}

TEST(QuotientSasakian, NonReebFieldIsCaught) {
  auto set = ex1_sites(5, 73);
  Gen g(15);
  double best = 1e9;
  for (const auto& s : set.sites()) {
    Vec fake = contact_of(s, g);
    Vec x = s.sg->phi(fake);
    best = std::min(best, quotient_sasakian_residual(*s.sg, x, x, &fake));
  }
  EXPECT_GT(best, 0.1);
}

TEST(QuotientKilling, ProjectedReebField) {
  auto set = ex1_sites(10, 74);
  Gen g(16);
  for (const auto& s : set.sites())
    EXPECT_LT(quotient_killing_residual(*s.sg, horizontal_of(s, g), horizontal_of(s, g)), 1e-6);
}

TEST(CRDecomposition, ToricLevelSet) {
  auto set = ex1_sites(5, 81);
  for (const auto& s : set.sites()) {
    EXPECT_EQ(s.cr.dim_D(), 4);
    EXPECT_EQ(s.cr.dim_Dperp(), 1);
    EXPECT_EQ(s.cr.dim_nu(), 0);
    EXPECT_LT(cr_defects(s.lp->tensors(), s.lp->tangent_basis(), s.cr).worst(), 1e-8);
  }
}

TEST(CRDecomposition, InvariantGreatSphere) {
  SiteSet set(zero_level_setup(TorusAction((Mat(1, 4) << 1, 0, 0, 0).finished())), 5, 82);
  for (const auto& s : set.sites()) {
    EXPECT_EQ(s.cr.dim_Dperp(), 0);
    EXPECT_EQ(s.cr.dim_nu(), 2);
    EXPECT_EQ(s.cr.dim_D(), 4);
    EXPECT_LT(cr_defects(s.lp->tensors(), s.lp->tangent_basis(), s.cr).worst(), 1e-8);
  }
}

TEST(CRDecomposition, ZeroLevelHasNoNu) {
  SiteSet set(zero_level_setup(TorusAction((Mat(1, 4) << -1, 1, 0, 0).finished())), 5, 83);
  for (const auto& s : set.sites()) {
    EXPECT_EQ(s.cr.dim_nu(), 0);
    EXPECT_EQ(s.cr.dim_Dperp(), 1);
  }
}

TEST(CRDecomposition, AmbiguousSplitIsReported) {
  auto set = ex1_sites(1, 84);
  const auto& s = set.sites().front();
  // Threshold placed on top of the unit singular values.
  EXPECT_THROW(
      {
        try {
          cr_decomposition(*s.lp, 1.0);
        } catch (const Error& e) {
          EXPECT_EQ(e.kind(), ErrorKind::AmbiguousSplit);
          throw;
        }
      },
      Error);
}

TEST(PhiSectional, RoundSphereIsOne) {
  auto st = SasakianStructure::round(4);
  Gen g(17);
  for (int k = 0; k < 10; ++k) {
    Vec p = g.unit_point(8);
    PointTensors t(st, p);
    Vec x = g.tangent(p);
    x -= x.dot(t.xi()) * t.xi();
    EXPECT_NEAR(phi_sectional_ambient(t, x.normalized()), 1.0, 1e-9);
  }
}

TEST(PhiSectional, IdentityAndRelationsOnExampleOne) {
  auto set = ex1_sites(20, 91);
  Gen g(18);
  for (const auto& s : set.sites()) {
    Vec x = contact_of(s, g), y = contact_of(s, g);
    auto l = phi_sectional_ledger(*s.sg, s.cr, x, &y);
    EXPECT_LT(l.residual, 1e-5);
    EXPECT_LT(l.h_tilde_sq, 1e-8);
    EXPECT_LT(l.worst_relation(), 1e-6);
    EXPECT_NEAR(l.quotient, phi_sectional(*s.sg, x), 1e-9);
  }
}

TEST(PhiSectional, FactorDirectionTwoPaths) {
  auto set = ex1_sites(5, 92);
  for (const auto& s : set.sites()) {
    // A D-direction inside the first factor: i-rotation orthogonal to the circle fibre there.
    const Vec& p = s.lp->point();
    Vec x = Vec::Zero(8);
    x << -p[2], p[3], p[0], -p[1], 0, 0, 0, 0;  // j p1, orthogonal to p1 and i p1
    x = s.frame->contactD.matrix() * (s.frame->contactD.matrix().transpose() * x);
    ASSERT_GT(x.norm(), 1e-6);
    x.normalize();
    auto l = phi_sectional_ledger(*s.sg, s.cr, x);
    EXPECT_NEAR(l.quotient, l.predicted, 1e-5);
  }
}

TEST(PhiSectional, GreatSphereBothTermsVanish) {
  SiteSet set(zero_level_setup(TorusAction((Mat(1, 4) << 1, 0, 0, 0).finished())), 5, 93);
  Gen g(19);
  for (const auto& s : set.sites()) {
    auto l = phi_sectional_ledger(*s.sg, s.cr, contact_of(s, g));
    EXPECT_LT(l.h_bar_sq + l.h_tilde_sq, 1e-12);
    EXPECT_NEAR(l.quotient, 1.0, 1e-9);
    EXPECT_NEAR(l.ambient, 1.0, 1e-9);
  }
}

TEST(PhiSectional, ZeroLevelReductionIsAtLeastOne) {
  auto setup = zero_level_setup(TorusAction((Mat(1, 4) << -1, 1, 0, 0).finished()));
  auto st = SasakianStructure::round(4);
  auto samples = sample_level_set(setup, 100, 94);
  double lowest = 1e9;
  for (std::size_t i = 0; i < samples.size(); ++i)
    lowest = std::min(lowest, phi_sectional_sample(setup, st, samples[i], 94, i).ledger.quotient);
  EXPECT_GE(lowest, 1.0 - 1e-6);
}

TEST(ReebFlow, IdentityAtZeroAndPhaseRotation) {
  auto st = SasakianStructure::round(4);
  Gen g(20);
  Vec z0 = g.unit_point(8);
  auto tr0 = reeb_flow_sphere(st, z0, 0.0, 64);
  EXPECT_LT((tr0.z.back() - z0).norm(), 1e-15);
  auto tr = reeb_flow_sphere(st, z0, 2.0 * std::numbers::pi, 512);
  EXPECT_LT(phase_rotation_error(tr), 1e-8);
  auto neg = reeb_flow_sphere(SasakianStructure::round(4, Orientation::Negative), z0, 1.0, 128);
  EXPECT_LT(phase_rotation_error(neg, -1.0), 1e-8);
}

TEST(ReebFlow, TwoWeightClosedForm) {
  auto st = SasakianStructure::round(4);
  auto a = sasred::testing::ex4_action(1.0, 1.0);
  MomentumCovector mu(vec({1, 1}));
  auto setup = willett_setup(a, mu);
  for (const auto& s : sample_level_set(setup, 5, 101)) {
    auto tr = reeb_flow_level(st, a, mu, s.point, 2.0 * std::numbers::pi, 512);
    auto c = compare_two_weight_flow(tr, 1.0, 1.0);
    EXPECT_LT(c.worst(), 1e-6);
  }
}

TEST(ReebFlow, RealWeightsClosedForm) {
  auto st = SasakianStructure::round(4);
  auto a = sasred::testing::ex4_action(0.7, 1.9);
  MomentumCovector mu(vec({1, 1}));
  auto setup = willett_setup(a, mu);
  for (const auto& s : sample_level_set(setup, 3, 102)) {
    auto tr = reeb_flow_level(st, a, mu, s.point, 2.0 * std::numbers::pi, 512);
    EXPECT_LT(compare_two_weight_flow(tr, 0.7, 1.9).worst(), 1e-6);
  }
}
