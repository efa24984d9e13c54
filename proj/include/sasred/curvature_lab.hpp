#pragma once

// Curvature of level sets N of the momentum map and of their quotients P.
//
// Everything is extrinsic at one point of N:
//   h(X,Y)  = normal part (in the sphere) of D_X(P_T Y)          second fundamental form
//   A(X,Y)  = vertical part of D_X(P_H Y)                           O'Neill tensor
// with P_T, P_H the tangent and horizontal projectors of N, differentiated as
// jets. Curvature 4-tensors use R(X,Y,Z,W) = g(R(X,Y)Z, W), K(X,Y) = R(X,Y,Y,X):
//   R^N = R^M + g(h(X,W),h(Y,Z)) - g(h(X,Z),h(Y,W))                 Gauss
//   R^P = R^N - 2g(A_X Y, A_Z W) + g(A_Y Z, A_X W) - g(A_X Z, A_Y W) O'Neill
// so that K^P = K^N + 3|A_X Y|^2 on horizontal planes.

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sasred/errors.hpp"
#include "sasred/reduction.hpp"
#include "sasred/structures.hpp"
#include "sasred/tensor_kernel.hpp"
#include "sasred/torus.hpp"

namespace sasred {

class SubmersionGeometry {
 public:
  SubmersionGeometry(const LevelSetPoint& lp, const ReductionFrame& f) : lp_(&lp), frame_(f) {
    const Mat& e = lp.tangent_basis();
    for (Eigen::Index c = 0; c < e.cols(); ++c) {
      dpt_.push_back(lp.tangent_projector_derivative(e.col(c)));
      dph_.push_back(lp.horizontal_projector_derivative(e.col(c)));
    }
    pt_ = lp.tangent_projector();
    pv_ = lp.vertical_projector();
    ph_ = lp.horizontal_projector();
    pn_ = lp.normal_projector();
    horizontal_ = f.horizontal_matrix();
  }

  const LevelSetPoint& level() const { return *lp_; }
  const ReductionFrame& frame() const { return frame_; }
  const PointTensors& tensors() const { return lp_->tensors(); }
  const Vec& point() const { return lp_->point(); }
  const Mat& horizontal_basis() const { return horizontal_; }
  const Mat& vertical_projector() const { return pv_; }
  const Mat& horizontal_projector() const { return ph_; }
  const Mat& tangent_projector() const { return pt_; }
  const Mat& normal_projector() const { return pn_; }

  double g(const Vec& x, const Vec& y) const { return tensors().g(x, y); }
  Vec phi(const Vec& x) const { return tensors().phi(x); }
  const Vec& xi() const { return tensors().xi(); }

  Mat tangent_projector_derivative(const Vec& x) const { return combine(dpt_, x); }
  Mat horizontal_projector_derivative(const Vec& x) const { return combine(dph_, x); }

  Vec second_fundamental_form(const Vec& x, const Vec& y) const { return pn_ * (tangent_projector_derivative(x) * y); }

  Vec oneill_A(const Vec& x, const Vec& y) const { return pv_ * (horizontal_projector_derivative(x) * y); }

  // (1/2) v[X~, Y~] for the horizontal extensions q -> P_H(q) X.
  Vec oneill_bracket(const Vec& x, const Vec& y) const {
    return 0.5 * pv_ * (horizontal_projector_derivative(x) * y - horizontal_projector_derivative(y) * x);
  }

  // Ambient curvature: the round sphere in closed form, otherwise the jet engine.
  double ambient_R(const Vec& x, const Vec& y, const Vec& z, const Vec& w) const {
    if (tensors().structure().is_round()) return y.dot(z) * x.dot(w) - x.dot(z) * y.dot(w);
    return g(tensors().curvature(x, y, z), w);
  }

  double level_R(const Vec& x, const Vec& y, const Vec& z, const Vec& w) const {
    Vec hxw = second_fundamental_form(x, w), hyz = second_fundamental_form(y, z);
    Vec hxz = second_fundamental_form(x, z), hyw = second_fundamental_form(y, w);
    return ambient_R(x, y, z, w) + g(hxw, hyz) - g(hxz, hyw);
  }

  double quotient_R(const Vec& x, const Vec& y, const Vec& z, const Vec& w) const {
    return level_R(x, y, z, w) - 2.0 * g(oneill_A(x, y), oneill_A(z, w)) + g(oneill_A(y, z), oneill_A(x, w)) -
           g(oneill_A(x, z), oneill_A(y, w));
  }

  // R^P(X,Y)Z as a horizontal vector.
  Vec quotient_R_vector(const Vec& x, const Vec& y, const Vec& z) const {
    Vec out = Vec::Zero(x.size());
    for (Eigen::Index c = 0; c < horizontal_.cols(); ++c) out += quotient_R(x, y, z, horizontal_.col(c)) * horizontal_.col(c);
    return out;
  }

  // Intrinsic R^N from the jet engine on a chart of N (independent of h).
  const LocalGeometry& level_geometry() const {
    if (!direct_) direct_ = std::make_shared<LocalGeometry>(LocalGeometry::build(lp_->chart(), euclidean_metric()));
    return *direct_;
  }
  double level_R_direct(const Vec& x, const Vec& y, const Vec& z, const Vec& w) const {
    return level_geometry().curvature4(x, y, z, w);
  }

 private:
  Mat combine(const std::vector<Mat>& parts, const Vec& x) const {
    Vec c = lp_->tangent_basis().transpose() * x;
    Mat out = Mat::Zero(x.size(), x.size());
    for (std::size_t i = 0; i < parts.size(); ++i) out += c[static_cast<Eigen::Index>(i)] * parts[i];
    return out;
  }

  const LevelSetPoint* lp_;
  ReductionFrame frame_;
  std::vector<Mat> dpt_, dph_;
  Mat pt_, pv_, ph_, pn_;
  Mat horizontal_;
  mutable std::shared_ptr<LocalGeometry> direct_;
};

// ---------------------------------------------------------------------------
// Weingarten operator of the unit normal phi X_b / |X_b| for a constraint row b

struct WeingartenCheck {
  double lhs = 0.0;  // g(A Y, Z), A from differentiating the normal field
  double rhs = 0.0;  // |X|^-1 (g(X,Y) eta(Z) - g(phi nabla_Y X, Z))
  double residual() const { return std::abs(lhs - rhs); }
};

inline WeingartenCheck weingarten_check(const SubmersionGeometry& sg, Eigen::Index row, const Vec& y, const Vec& z) {
  const auto& setup = sg.level().setup();
  const auto& t = sg.tensors();
  const Vec& p = sg.point();
  if (row < 0 || row >= setup.constraint_rows.rows()) throw Error(ErrorKind::ValidationError, "weingarten: no such constraint row");
  const double s = t.structure().orientation();
  auto xf = setup.action.field(setup.constraint_rows.row(row).transpose());
  // Round phi in closed form, valid off the sphere: v -> s (i v - <i v, q> q / |q|^2).
  auto phi_at = [s](const auto& q, const auto& v) {
    auto iv = complex_mult(v);
    auto c = dot(iv, q) / dot(q, q);
    auto out = iv;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = s * (iv[k] - c * q[k]);
    return out;
  };
  JVec<Jet2d> c = retraction_curve(p, y);
  JVec<Jet2d> xc = xf(c);
  JVec<Jet2d> nu = normalized(phi_at(c, xc));
  Vec dnu = jet_d1(nu);
  WeingartenCheck w;
  w.lhs = -(sg.tangent_projector() * dnu).dot(z);

  Vec x = jet_values(xc);
  const double xn = x.norm();
  if (xn < kRankRelTol) throw Error(ErrorKind::DegenerateAction, "weingarten: the generator vanishes at the sample");
  Vec nabla_yx = tangential_project(p, jet_d1(xc));
  w.rhs = (t.g(x, y) * t.eta(z) - t.g(t.phi(nabla_yx), z)) / xn;
  return w;
}

// ---------------------------------------------------------------------------
// Contact CR splitting of T N and its normal bundle

struct CRDecomposition {
  Mat D, Dperp, phiDperp, nu;  // orthonormal columns
  Vec singular_values;         // of the tangential part of phi on T N minus xi
  double tol = 0.0;

  Eigen::Index dim_D() const { return D.cols(); }
  Eigen::Index dim_Dperp() const { return Dperp.cols(); }
  Eigen::Index dim_nu() const { return nu.cols(); }
  Mat bar_projector() const { return phiDperp * phiDperp.transpose(); }
  Mat tilde_projector() const { return nu * nu.transpose(); }
};

struct CRDefects {
  double phi_D = 0.0;        // |phi D - P_D phi D|
  double phi_Dperp = 0.0;    // tangential part of phi D^perp
  double phi_nu = 0.0;       // |phi nu - P_nu phi nu|
  double worst() const { return std::max({phi_D, phi_Dperp, phi_nu}); }
};

inline constexpr double kCRSplitTol = 1e-6;

namespace detail {
inline Mat orthonormal_columns(const std::vector<Vec>& cands, Eigen::Index rows, double drop = 1e-8) {
  std::vector<Vec> out;
  for (Vec v : cands) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& e : out) v -= e.dot(v) * e;
    const double r = v.norm();
    if (r > drop) out.push_back(v / r);
  }
  Mat m(rows, static_cast<Eigen::Index>(out.size()));
  for (std::size_t i = 0; i < out.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = out[i];
  return m;
}

inline std::vector<Vec> columns(const Mat& m) {
  std::vector<Vec> v;
  for (Eigen::Index c = 0; c < m.cols(); ++c) v.push_back(m.col(c));
  return v;
}
}  // namespace detail

// tangent: orthonormal basis of T N; normal: orthonormal basis of the normal
// space of N inside M. The Reeb field has to be tangent to N.
inline CRDecomposition cr_decomposition(const PointTensors& t, const Mat& tangent, const Mat& normal, double tol = kCRSplitTol) {
  const Vec& xi = t.xi();
  const Eigen::Index m = xi.size();
  Mat pt = tangent * tangent.transpose();
  if ((pt * xi - xi).norm() > 1e-8) throw Error(ErrorKind::ValidationError, "cr decomposition: Reeb field is not tangent");
  std::vector<Vec> cands{xi.normalized()};
  for (auto& v : detail::columns(tangent)) cands.push_back(v);
  Mat b = detail::orthonormal_columns(cands, m).rightCols(tangent.cols() - 1);

  CRDecomposition cr;
  cr.tol = tol;
  Mat tang = b.transpose() * t.phi_matrix() * b;
  Eigen::JacobiSVD<Mat> svd(tang, Eigen::ComputeFullV);
  cr.singular_values = svd.singularValues();
  std::vector<Vec> dv, pv;
  for (Eigen::Index i = 0; i < cr.singular_values.size(); ++i) {
    const double sv = cr.singular_values[i];
    if (sv > tol / 10.0 && sv < tol * 10.0)
      throw Error(ErrorKind::AmbiguousSplit, "singular value " + std::to_string(sv) + " sits at the split threshold");
    Vec v = b * svd.matrixV().col(i);
    (sv < tol ? pv : dv).push_back(v);
  }
  cr.D = detail::orthonormal_columns(dv, m);
  cr.Dperp = detail::orthonormal_columns(pv, m);
  std::vector<Vec> phis;
  for (auto& v : pv) phis.push_back(t.phi(v));
  cr.phiDperp = detail::orthonormal_columns(phis, m);
  std::vector<Vec> rest;
  for (auto& v : detail::columns(normal)) rest.push_back(v - cr.phiDperp * (cr.phiDperp.transpose() * v));
  cr.nu = detail::orthonormal_columns(rest, m);
  return cr;
}

inline CRDecomposition cr_decomposition(const LevelSetPoint& lp, double tol = kCRSplitTol) {
  return cr_decomposition(lp.tensors(), lp.tangent_basis(), lp.normal_basis(), tol);
}

inline CRDefects cr_defects(const PointTensors& t, const Mat& tangent, const CRDecomposition& cr) {
  CRDefects d;
  const Mat& phi = t.phi_matrix();
  if (cr.D.cols()) d.phi_D = ((Mat::Identity(phi.rows(), phi.cols()) - cr.D * cr.D.transpose()) * phi * cr.D).norm();
  if (cr.Dperp.cols()) d.phi_Dperp = (tangent.transpose() * phi * cr.Dperp).norm();
  if (cr.nu.cols()) d.phi_nu = ((Mat::Identity(phi.rows(), phi.cols()) - cr.nu * cr.nu.transpose()) * phi * cr.nu).norm();
  return d;
}

// ---------------------------------------------------------------------------
// Sectional curvatures and the phi-sectional identity

inline double horizontal_sectional(const SubmersionGeometry& sg, const Vec& x, const Vec& y) {
  const double den = sg.g(x, x) * sg.g(y, y) - sg.g(x, y) * sg.g(x, y);
  return sg.quotient_R(x, y, y, x) / den;
}

inline double phi_sectional_ambient(const PointTensors& t, const Vec& x) {
  Vec px = t.phi(x);
  return t.g(t.curvature(x, px, px), x) / (t.g(x, x) * t.g(px, px));
}

inline double phi_sectional(const SubmersionGeometry& sg, const Vec& x) { return horizontal_sectional(sg, x, sg.phi(x)); }

struct PhiSectionalLedger {
  double quotient = 0.0;       // K^P(X, phi X), O'Neill path
  double ambient = 0.0;        // K^M(X, phi X)
  double level = 0.0;          // K^N(X, phi X), Gauss path
  double h_bar_sq = 0.0;       // |bar h(X,X)|^2
  double h_tilde_sq = 0.0;     // |tilde h(X,X)|^2
  double predicted = 0.0;      // K^M + 4 |bar h|^2 - 2 |tilde h|^2
  double residual = 0.0;       // |quotient - predicted|
  // Intermediate relations, each as a residual.
  double oneill = 0.0;         // K^N - K^P + 3 |A(X, phi X)|^2
  double gauss = 0.0;          // K^M - K^N - |h(X, phi X)|^2 + g(h(X,X), h(phi X, phi X))
  double rel_A = 0.0;          // |A(X, phi Y) - v phi h(X,Y)|
  double rel_h = 0.0;          // |h(X, phi Y) - phi A(X,Y) - phi tilde h(X,Y)|
  double norm_mixed = 0.0;     // g(h(phi X, phi Y), h(X,Y)) - |bar h|^2 + |tilde h|^2
  double norm_h = 0.0;         // |h(X, phi Y)|^2 - |A(X,Y)|^2 - |tilde h(X,Y)|^2
  double norm_A = 0.0;         // |A(X, phi Y)|^2 - |bar h(X,Y)|^2

  double worst_relation() const {
    return std::max({std::abs(oneill), std::abs(gauss), rel_A, rel_h, std::abs(norm_mixed), std::abs(norm_h), std::abs(norm_A)});
  }
};

// X unit, horizontal and orthogonal to xi; Y a second such direction for the
// bilinear relations (defaults to X).
inline PhiSectionalLedger phi_sectional_ledger(const SubmersionGeometry& sg, const CRDecomposition& cr, const Vec& x,
                                               const Vec* y_in = nullptr) {
  const Vec& y = y_in ? *y_in : x;
  const Mat pbar = cr.bar_projector(), ptil = cr.tilde_projector();
  const Mat& pv = sg.vertical_projector();
  auto h = [&](const Vec& a, const Vec& b) { return sg.second_fundamental_form(a, b); };
  auto A = [&](const Vec& a, const Vec& b) { return sg.oneill_A(a, b); };
  auto sq = [&](const Vec& v) { return sg.g(v, v); };
  const Vec px = sg.phi(x), py = sg.phi(y);

  PhiSectionalLedger l;
  const double nn = sg.g(x, x) * sg.g(px, px);
  l.quotient = sg.quotient_R(x, px, px, x) / nn;
  l.level = sg.level_R(x, px, px, x) / nn;
  l.ambient = sg.ambient_R(x, px, px, x) / nn;
  const Vec hxx = h(x, x);
  l.h_bar_sq = sq(pbar * hxx);
  l.h_tilde_sq = sq(ptil * hxx);
  l.predicted = l.ambient + 4.0 * l.h_bar_sq - 2.0 * l.h_tilde_sq;
  l.residual = std::abs(l.quotient - l.predicted);

  l.oneill = l.level - l.quotient + 3.0 * sq(A(x, px)) / nn;
  l.gauss = l.ambient - l.level - (sq(h(x, px)) - sg.g(hxx, h(px, px))) / nn;

  const Vec hxy = h(x, y), axy = A(x, y);
  l.rel_A = (A(x, py) - pv * sg.phi(hxy)).norm();
  l.rel_h = (h(x, py) - sg.phi(axy) - sg.phi(ptil * hxy)).norm();
  l.norm_mixed = sg.g(h(px, py), hxy) - sq(pbar * hxy) + sq(ptil * hxy);
  l.norm_h = sq(h(x, py)) - sq(axy) - sq(ptil * hxy);
  l.norm_A = sq(A(x, py)) - sq(pbar * hxy);
  return l;
}

// ---------------------------------------------------------------------------
// The quotient as a Sasakian manifold

// |R^P(X, zeta)Y - (g(zeta, Y) X - g(X, Y) zeta)| with zeta the horizontal Reeb
// field unless another unit horizontal field is given (negative controls).
inline double quotient_sasakian_residual(const SubmersionGeometry& sg, const Vec& x, const Vec& y, const Vec* zeta_in = nullptr) {
  const Vec& zeta = zeta_in ? *zeta_in : sg.xi();
  Vec r = sg.quotient_R_vector(x, zeta, y) - (sg.g(zeta, y) * x - sg.g(x, y) * zeta);
  return std::sqrt(std::max(0.0, sg.g(r, r)));
}

// Killing equation for the projected Reeb field: nabla^P_X zeta is the
// horizontal part of phi X.
inline double quotient_killing_residual(const SubmersionGeometry& sg, const Vec& x, const Vec& y) {
  const Mat& ph = sg.horizontal_projector();
  return std::abs(sg.g(ph * sg.phi(x), y) + sg.g(ph * sg.phi(y), x));
}

// ---------------------------------------------------------------------------
// Sampling helpers

// Uniform unit vector in the span of the orthonormal columns of b.
inline Vec random_unit_in(const Mat& b, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Vec c(b.cols());
  do {
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = n01(rng);
  } while (c.norm() < 1e-12);
  return b * c.normalized();
}

// phi-sectional curvatures of the quotient at sampled level-set points, one
// uniformly random contact direction per point.
struct PhiSectionalSample {
  Vec point;
  Vec direction;
  PhiSectionalLedger ledger;
  Eigen::Index nu_dim = 0;  // normal directions not reached by phi of tangent ones
};

inline PhiSectionalSample phi_sectional_sample(const ReductionSetup& setup, const SasakianStructure& st, const LevelSetSample& s,
                                               std::uint64_t seed, std::uint64_t index) {
  LevelSetPoint lp(setup, st, s);
  ReductionFrame f = build_frame(lp);
  SubmersionGeometry sg(lp, f);
  CRDecomposition cr = cr_decomposition(lp);
  std::mt19937_64 rng = sample_rng(splitmix64(seed ^ 0x5ec7u), index);
  if (f.contactD.empty()) throw Error(ErrorKind::FrameInconsistent, "no contact directions at the sample");
  Vec x = random_unit_in(f.contactD.matrix(), rng);
  Vec y = random_unit_in(f.contactD.matrix(), rng);
  return {s.point, x, phi_sectional_ledger(sg, cr, x, &y), cr.nu.cols()};
}

// ---------------------------------------------------------------------------
// Reeb flow

struct Trajectory {
  std::vector<double> t;
  std::vector<Vec> z;
  double max_correction = 0.0;  // largest reprojection step
};

namespace detail {
template <class Project>
Trajectory rk4_reeb(const Vec& z0, double t_max, int steps, double s, Project project) {
  if (steps < 1) throw Error(ErrorKind::ValidationError, "reeb flow: steps must be positive");
  auto f = [s](const Vec& z) { return Vec(s * complex_mult(z)); };
  Trajectory tr;
  const double h = t_max / steps;
  Vec z = z0;
  tr.t.push_back(0.0);
  tr.z.push_back(z);
  for (int k = 0; k < steps; ++k) {
    Vec k1 = f(z), k2 = f(z + 0.5 * h * k1), k3 = f(z + 0.5 * h * k2), k4 = f(z + h * k3);
    Vec next = z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    Vec fixed = project(next);
    tr.max_correction = std::max(tr.max_correction, (fixed - next).norm());
    z = fixed;
    tr.t.push_back((k + 1) * h);
    tr.z.push_back(z);
  }
  return tr;
}
}  // namespace detail

// Reeb flow of the round structure on the sphere, renormalised each step.
inline Trajectory reeb_flow_sphere(const SasakianStructure& st, const Vec& z0, double t_max, int steps) {
  if (!st.is_round()) throw Error(ErrorKind::ValidationError, "reeb flow is integrated for the round structure");
  return detail::rk4_reeb(z0, t_max, steps, st.orientation(), [](const Vec& z) { return Vec(z.normalized()); });
}

// Reeb flow on J^{-1}(R_+ mu), Newton-reprojected onto the level set each step.
inline Trajectory reeb_flow_level(const SasakianStructure& st, const TorusAction& a, const MomentumCovector& mu, const Vec& z0,
                                  double t_max, int steps) {
  if (!st.is_round()) throw Error(ErrorKind::ValidationError, "reeb flow is integrated for the round structure");
  return detail::rk4_reeb(z0, t_max, steps, st.orientation(),
                          [&](const Vec& z) { return newton_project(a, mu, z).sample.point; });
}

// Closed form of the reduced flow for the two-weight action on (z0, z1):
// [z] -> z0^l1 z1^l0 rotates as A e^{i(a + b t)}, (z2, z3) as e^{it}.
struct ReducedFlowComparison {
  double max_first = 0.0;     // |f(z(t)) - A e^{i(a+bt)}|
  double max_rotation = 0.0;  // |(z2,z3)(t) - R(t)(z2,z3)(0)|
  double worst() const { return std::max(max_first, max_rotation); }
};

inline ReducedFlowComparison compare_two_weight_flow(const Trajectory& tr, double l0, double l1) {
  auto mod = [](const Vec& z, int j) { return std::hypot(z[2 * j], z[2 * j + 1]); };
  auto arg = [](const Vec& z, int j) { return std::atan2(z[2 * j + 1], z[2 * j]); };
  const Vec& z0 = tr.z.front();
  const double amp = std::pow(mod(z0, 0), l1) * std::pow(mod(z0, 1), l0);
  const double phase0 = l1 * arg(z0, 0) + l0 * arg(z0, 1);
  const double b = l1 + l0;
  ReducedFlowComparison c;
  // Arguments are unwrapped along the trajectory so real exponents stay continuous.
  double u0 = arg(z0, 0), u1 = arg(z0, 1);
  for (std::size_t k = 0; k < tr.z.size(); ++k) {
    const Vec& z = tr.z[k];
    if (k > 0) {
      u0 += std::remainder(arg(z, 0) - arg(tr.z[k - 1], 0), 2.0 * std::numbers::pi);
      u1 += std::remainder(arg(z, 1) - arg(tr.z[k - 1], 1), 2.0 * std::numbers::pi);
    }
    const double r = std::pow(mod(z, 0), l1) * std::pow(mod(z, 1), l0);
    const double ph = l1 * u0 + l0 * u1;
    const double t = tr.t[k];
    const double ex = amp * std::cos(phase0 + b * t), ey = amp * std::sin(phase0 + b * t);
    c.max_first = std::max(c.max_first, std::hypot(r * std::cos(ph) - ex, r * std::sin(ph) - ey));
    const double ct = std::cos(t), st = std::sin(t);
    for (int j = 2; j < z.size() / 2; ++j) {
      const double x0 = z0[2 * j], y0 = z0[2 * j + 1];
      c.max_rotation = std::max(c.max_rotation, std::hypot(z[2 * j] - (ct * x0 - st * y0), z[2 * j + 1] - (st * x0 + ct * y0)));
    }
  }
  return c;
}

// sup_t |z(t) - e^{i s t} z0|
inline double phase_rotation_error(const Trajectory& tr, double s = 1.0) {
  double e = 0.0;
  const Vec& z0 = tr.z.front();
  for (std::size_t k = 0; k < tr.z.size(); ++k) {
    const double c = std::cos(s * tr.t[k]), sn = std::sin(s * tr.t[k]);
    e = std::max(e, (tr.z[k] - (c * z0 + sn * complex_mult(z0))).norm());
  }
  return e;
}

}  // namespace sasred
