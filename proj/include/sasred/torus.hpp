#pragma once

// Torus actions on S^{2n-1} given by a d x n weight matrix W:
//   (t, z) -> (e^{i <w_1, t>} z_1, ..., e^{i <w_n, t>} z_n),  w_j = column j of W.
// Real weights are accepted (an R^d action); integrality is only reported.
//
// With eta(X) = <i q, X>, the contact momentum map is J_k(q) = sum_j W_kj |z_j|^2.

#include <cmath>
#include <string>
#include <utility>

#include "sasred/errors.hpp"
#include "sasred/linalg.hpp"
#include "sasred/structures.hpp"
#include "sasred/tensor_kernel.hpp"

namespace sasred {

class TorusAction {
 public:
  TorusAction() = default;
  explicit TorusAction(Mat weights) : w_(std::move(weights)) {
    if (w_.rows() < 1 || w_.cols() < 1) throw Error(ErrorKind::ValidationError, "action weights: empty matrix");
  }

  const Mat& weights() const { return w_; }
  Eigen::Index d() const { return w_.rows(); }
  Eigen::Index n() const { return w_.cols(); }

  bool integral() const {
    for (Eigen::Index i = 0; i < w_.size(); ++i)
      if (std::abs(w_.data()[i] - std::round(w_.data()[i])) > 1e-12) return false;
    return true;
  }

  // Per-coordinate weights of the Lie algebra element r: W^T r.
  Vec coordinate_weights(const Vec& r) const { return w_.transpose() * r; }

  // Generic fundamental field of r: q -> i (W^T r) . q
  auto field(const Vec& r) const {
    Vec c = coordinate_weights(r);
    return [c](const auto& q) { return complex_mult(pair_scale(c, q)); };
  }

  Vec fundamental_field(const Vec& r, const Vec& p) const { return complex_mult(pair_scale(coordinate_weights(r), p)); }

  Vec momentum(const Vec& p) const { return w_ * moduli_squared(p); }

  // dJ(v) at p: J_k' = 2 sum_j W_kj (x_j v_x + y_j v_y)
  Vec momentum_differential(const Vec& p, const Vec& v) const {
    Vec t(n());
    for (Eigen::Index j = 0; j < n(); ++j) t[j] = 2.0 * (p[2 * j] * v[2 * j] + p[2 * j + 1] * v[2 * j + 1]);
    return w_ * t;
  }

  // Restriction to a subalgebra with basis rows b (k x d).
  TorusAction restricted(const Mat& basis_rows) const { return TorusAction(basis_rows * w_); }

 private:
  Mat w_;
};

struct MomentumCovector {
  Vec mu;
  Vec mu_unit;

  MomentumCovector() = default;
  explicit MomentumCovector(Vec m) : mu(std::move(m)) {
    const double nrm = mu.norm();
    mu_unit = nrm > 0.0 ? Vec(mu / nrm) : Vec(Vec::Zero(mu.size()));
  }
  bool is_zero() const { return mu.norm() == 0.0; }
  Eigen::Index d() const { return mu.size(); }
};

struct KernelAlgebra {
  Mat basis;  // k x d, orthonormal rows
  Eigen::Index k() const { return basis.rows(); }
};

// Orthonormal basis of ker mu: Gram-Schmidt of the standard basis against mu,
// each row signed so its last nonzero entry is positive.
inline KernelAlgebra kernel_algebra(const MomentumCovector& mu) {
  if (mu.is_zero()) throw Error(ErrorKind::ZeroMu, "mu = 0: the kernel algebra is the whole algebra");
  const Eigen::Index d = mu.d();
  std::vector<Vec> frame{mu.mu_unit};
  std::vector<Vec> rows;
  for (Eigen::Index i = 0; i < d; ++i) {
    Vec v = Vec::Unit(d, i);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& e : frame) v -= e.dot(v) * e;
    const double r = v.norm();
    if (r < 1e-8) continue;
    v /= r;
    for (Eigen::Index j = d; j-- > 0;)
      if (std::abs(v[j]) > 1e-14) {
        if (v[j] < 0) v = -v;
        break;
      }
    frame.push_back(v);
    rows.push_back(v);
  }
  KernelAlgebra ka;
  ka.basis = Mat(static_cast<Eigen::Index>(rows.size()), d);
  for (std::size_t i = 0; i < rows.size(); ++i) ka.basis.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return ka;
}

struct SliceReport {
  bool holds = true;
  Eigen::Index rank = 0;  // dim(ker mu + g_mu)
  Eigen::Index m = 0;     // complement of g_mu; zero for tori
  std::string note;
};

// Abelian case: g_mu = g, so ker mu + g_mu = g. The rank is still computed.
inline SliceReport slice_condition(const MomentumCovector& mu) {
  const Eigen::Index d = mu.d();
  Mat isotropy = Mat::Identity(d, d);  // g_mu for an abelian algebra
  Mat stacked = isotropy;
  if (!mu.is_zero()) {
    Mat k = kernel_algebra(mu).basis;
    stacked.resize(d + k.rows(), d);
    stacked << k, isotropy;
  }
  SliceReport r;
  r.rank = numerical_rank(stacked, kRankRelTol);
  r.holds = r.rank == d;
  r.note = "abelian: isotropy algebra is the whole algebra";
  return r;
}

enum class RayClass { Positive, Zero, Negative, Outside };

inline std::string to_string(RayClass c) {
  switch (c) {
    case RayClass::Positive: return "positive";
    case RayClass::Zero: return "zero";
    case RayClass::Negative: return "negative";
    case RayClass::Outside: return "outside";
  }
  return "?";
}

struct RayMembership {
  RayClass cls = RayClass::Outside;
  double s = 0.0;         // J ~ s mu
  double residual = 0.0;  // |J - s mu|
};

inline constexpr double kRayTol = 1e-9;

inline RayMembership ray_membership(const Vec& j, const MomentumCovector& mu, double tol = kRayTol) {
  if (mu.is_zero()) throw Error(ErrorKind::ZeroMu, "ray membership needs mu != 0");
  RayMembership m;
  m.s = j.dot(mu.mu) / mu.mu.squaredNorm();
  m.residual = (j - m.s * mu.mu).norm();
  if (m.residual >= tol)
    m.cls = RayClass::Outside;
  else if (std::abs(m.s) * mu.mu.norm() < tol)
    m.cls = RayClass::Zero;
  else
    m.cls = m.s > 0 ? RayClass::Positive : RayClass::Negative;
  return m;
}

struct FreenessReport {
  Eigen::Index rank = 0;
  Eigen::Index k = 0;
  bool degenerate = false;
  Vec singular_values;
};

// Rank of the fundamental fields of the kernel algebra basis at p.
inline FreenessReport local_freeness(const TorusAction& a, const KernelAlgebra& ka, const Vec& p) {
  FreenessReport r;
  r.k = ka.k();
  if (r.k == 0) return r;
  Mat fields(p.size(), r.k);
  for (Eigen::Index i = 0; i < r.k; ++i) fields.col(i) = a.fundamental_field(ka.basis.row(i).transpose(), p);
  r.singular_values = singular_values(fields);
  // Absolute scale: the fields of unit algebra vectors are O(1) on the unit sphere.
  r.rank = 0;
  for (Eigen::Index i = 0; i < r.singular_values.size(); ++i) r.rank += r.singular_values[i] > kRankRelTol;
  r.degenerate = r.rank < r.k;
  return r;
}

// (L_X eta)(Y) = X(eta(Y~)) - eta([X, Y~]) for the fundamental field of r.
inline double eta_lie_derivative(const SasakianStructure& st, const TorusAction& a, const Vec& r, const Vec& p, const Vec& y) {
  Vec x = a.fundamental_field(r, p);
  JVec<Jet2d> c = retraction_curve(p, x);
  const double first = st.eta_form()(c, tangential_project(c, lift<Jet2d>(y))).d1;
  return first - st.eta(p, lie_bracket(a.field(r), extension_field(y), p));
}

}  // namespace sasred
