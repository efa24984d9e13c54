#pragma once

// Sasakian structures on the unit sphere S^{2n-1} in C^n: the round one and
// the weighted deformations by a = (a_1, ..., a_n).
//
// Orientation: the Reeb field is xi = s * i q with s = +1 by default, so that
// eta = sum (x dy - y dx) gives eta(xi) = 1. Orientation::Negative flips both.
// phi is never stored: it is nabla xi, computed by the tensor kernel.

#include <functional>
#include <random>
#include <string>
#include <utility>

#include "sasred/errors.hpp"
#include "sasred/linalg.hpp"
#include "sasred/tensor_kernel.hpp"

namespace sasred {

enum class Orientation { Positive, Negative };

inline double orientation_sign(Orientation o) { return o == Orientation::Positive ? 1.0 : -1.0; }

// A 1-form with a double and a jet evaluator.
class OneForm {
 public:
  using DoubleFn = std::function<double(const Vec&, const Vec&)>;
  using JetFn = std::function<Jet2d(const JVec<Jet2d>&, const JVec<Jet2d>&)>;

  OneForm() = default;
  OneForm(DoubleFn f, JetFn jet) : f_(std::move(f)), jet_(std::move(jet)) {}

  template <class F>
  static OneForm from_generic(F f) {
    return OneForm([f](const Vec& q, const Vec& x) { return f(to_std(q), to_std(x)); },
                   [f](const JVec<Jet2d>& q, const JVec<Jet2d>& x) { return f(q, x); });
  }

  double operator()(const Vec& q, const Vec& x) const { return f_(q, x); }
  Jet2d operator()(const JVec<Jet2d>& q, const JVec<Jet2d>& x) const { return jet_(q, x); }

 private:
  DoubleFn f_;
  JetFn jet_;
};

namespace detail {

template <class S>
S weight_sum(const Vec& a, const JVec<S>& q) {
  JVec<S> t = moduli_squared(q);
  S acc(0.0);
  for (std::size_t j = 0; j < t.size(); ++j) acc += t[j] * a[static_cast<Eigen::Index>(j)];
  return acc;
}

// eta_A(X) = s <i q, X> / sum a_j |z_j|^2
template <class S>
S weighted_eta(const Vec& a, double s, const JVec<S>& q, const JVec<S>& x) {
  return dot(complex_mult(q), x) * s / weight_sum(a, q);
}

template <class S>
JVec<S> weighted_reeb(const Vec& a, double s, const JVec<S>& q) {
  return scaled(pair_scale(a, complex_mult(q)), s);
}

// eta_A (x) eta_A + f <X_c, Y_c>, with X_c = X - eta_A(X) R_A in Ker eta_A.
// On Ker eta_A this equals the contact part built from d eta_A and I; see
// weighted_metric() for the jet evaluation of that form.
template <class S>
S weighted_metric_closed(const Vec& a, double s, const JVec<S>& q, const JVec<S>& x, const JVec<S>& y) {
  S f = 1.0 / weight_sum(a, q);
  JVec<S> iq = complex_mult(q);
  S ex = dot(iq, x) * s * f, ey = dot(iq, y) * s * f;
  JVec<S> r = weighted_reeb(a, s, q);
  JVec<S> xc = x - scaled(r, ex), yc = y - scaled(r, ey);
  return ex * ey + f * dot(xc, yc);
}

}  // namespace detail

class SasakianStructure {
 public:
  static SasakianStructure round(int n, Orientation o = Orientation::Positive) {
    return weighted(Vec::Ones(n), o, "round");
  }

  static SasakianStructure weighted(const Vec& a, Orientation o = Orientation::Positive, std::string name = "weighted") {
    if (a.size() < 2) throw Error(ErrorKind::ValidationError, "sphere weights: need n >= 2");
    for (Eigen::Index j = 1; j < a.size(); ++j)
      if (a[j] < a[j - 1]) throw Error(ErrorKind::ValidationError, "sphere weights must be nondecreasing");
    const double s = orientation_sign(o);
    SasakianStructure st;
    st.name_ = std::move(name);
    st.n_ = static_cast<int>(a.size());
    st.weights_ = a;
    st.sign_ = s;
    st.metric_ = MetricEvaluator::from_generic(
        st.name_, [a, s](const auto& q, const auto& x, const auto& y) { return detail::weighted_metric_closed(a, s, q, x, y); });
    st.eta_ = OneForm::from_generic([a, s](const auto& q, const auto& x) { return detail::weighted_eta(a, s, q, x); });
    st.reeb_ = TangentField::from_generic("reeb", [a, s](const auto& q) { return detail::weighted_reeb(a, s, q); });
    st.probe_positivity();
    return st;
  }

  // Arbitrary (metric, eta, Reeb) data; used for negative controls.
  static SasakianStructure custom(std::string name, int n, MetricEvaluator g, OneForm eta, TangentField reeb) {
    SasakianStructure st;
    st.name_ = std::move(name);
    st.n_ = n;
    st.weights_ = Vec::Ones(n);
    st.metric_ = std::move(g);
    st.eta_ = std::move(eta);
    st.reeb_ = std::move(reeb);
    return st;
  }

  SasakianStructure with_reeb(TangentField reeb) const {
    SasakianStructure st = *this;
    st.reeb_ = std::move(reeb);
    return st;
  }

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  Eigen::Index ambient_dim() const { return 2 * n_; }
  const Vec& weights() const { return weights_; }
  double orientation() const { return sign_; }
  bool is_round() const { return (weights_.array() == 1.0).all(); }

  const MetricEvaluator& metric() const { return metric_; }
  const OneForm& eta_form() const { return eta_; }
  const TangentField& reeb_field() const { return reeb_; }

  double eta(const Vec& p, const Vec& x) const { return eta_(p, x); }
  Vec reeb(const Vec& p) const { return reeb_(p); }
  double g(const Vec& p, const Vec& x, const Vec& y) const { return metric_(p, x, y); }

 private:
  void probe_positivity() const;

  std::string name_;
  int n_ = 0;
  Vec weights_;
  double sign_ = 1.0;
  MetricEvaluator metric_;
  OneForm eta_;
  TangentField reeb_{"reeb", [](const Vec& q) { return q; }};
};

// d eta(U, V) = U eta(V~) - V eta(U~) - eta([U~, V~]) with the projection
// extension of U, V; both derivatives are jets along the retraction.
inline double d_eta(const SasakianStructure& st, const Vec& p, const Vec& u, const Vec& v) {
  auto along = [&](const Vec& dir, const Vec& w) {
    JVec<Jet2d> c = retraction_curve(p, dir);
    return st.eta_form()(c, tangential_project(c, lift<Jet2d>(w))).d1;
  };
  Vec bracket = lie_bracket(extension_field(u), extension_field(v), p);
  return along(u, v) - along(v, u) - st.eta(p, bracket);
}

// Gram matrix of d eta on the columns of b.
inline Mat d_eta_matrix(const SasakianStructure& st, const Vec& p, const Mat& b) {
  Mat m = Mat::Zero(b.cols(), b.cols());
  for (Eigen::Index i = 0; i < b.cols(); ++i)
    for (Eigen::Index j = i + 1; j < b.cols(); ++j) {
      m(i, j) = d_eta(st, p, b.col(i), b.col(j));
      m(j, i) = -m(i, j);
    }
  return m;
}

// Euclidean-orthonormal basis of the complex subspace {q, i q}^perp = Ker eta.
inline Mat contact_basis(const Vec& p) {
  Mat against(p.size(), 2);
  against.col(0) = p;
  against.col(1) = complex_mult(p);
  return complement_basis(against);
}

// Weighted metric through d eta_A computed by jets:
//   eta_A(X) eta_A(Y) - (s/2) d eta_A(I X_c, Y_c).
// The factor s makes the contact part positive in either orientation.
inline double weighted_metric(const SasakianStructure& st, const Vec& p, const Vec& x, const Vec& y) {
  Vec r = st.reeb(p);
  const double ex = st.eta(p, x), ey = st.eta(p, y);
  Vec xc = x - ex * r, yc = y - ey * r;
  return ex * ey - 0.5 * st.orientation() * d_eta(st, p, complex_mult(xc), yc);
}

// Contact part of weighted_metric on an orthonormal basis of Ker eta.
inline Mat contact_form_gram(const SasakianStructure& st, const Vec& p) {
  Mat b = contact_basis(p);
  Mat m(b.cols(), b.cols());
  for (Eigen::Index i = 0; i < b.cols(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      m(i, j) = -0.5 * st.orientation() * d_eta(st, p, complex_mult(Vec(b.col(i))), b.col(j));
  return m;
}

inline void SasakianStructure::probe_positivity() const {
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 32; ++k) {
    Vec p(2 * n_);
    for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = nd(rng);
    p /= p.norm();
    Mat m = contact_form_gram(*this, p);
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.transpose()));
    if (!(es.eigenvalues().minCoeff() > 1e-10))
      throw Error(ErrorKind::DegenerateContact, "weights " + name_ + " give a non-positive contact metric");
  }
}

// Structure tensors at one point: chart geometry, xi, and phi = nabla xi as a
// matrix acting on ambient tangent vectors.
class PointTensors {
 public:
  PointTensors(const SasakianStructure& st, Vec p)
      : st_(&st), chart_(std::move(p)), geom_(LocalGeometry::build(chart_, st.metric())) {
    xi_ = st.reeb(chart_.point());
    const Mat& e = chart_.basis();
    phi_ = Mat::Zero(e.rows(), e.rows());
    for (Eigen::Index a = 0; a < e.cols(); ++a)
      phi_ += geom_.covariant_derivative(chart_, e.col(a), st.reeb_field()) * e.col(a).transpose();
  }

  const Vec& point() const { return chart_.point(); }
  const Mat& tangent_basis() const { return chart_.basis(); }
  const SphereChart& chart() const { return chart_; }
  const LocalGeometry& geometry() const { return geom_; }
  const SasakianStructure& structure() const { return *st_; }

  const Vec& xi() const { return xi_; }
  double eta(const Vec& x) const { return st_->eta(point(), x); }
  double g(const Vec& x, const Vec& y) const { return geom_.inner(x, y); }
  double norm(const Vec& x) const { return std::sqrt(std::max(0.0, g(x, x))); }
  Vec phi(const Vec& x) const { return phi_ * x; }
  const Mat& phi_matrix() const { return phi_; }
  Vec curvature(const Vec& x, const Vec& y, const Vec& z) const { return geom_.curvature(x, y, z); }

 private:
  const SasakianStructure* st_;
  SphereChart chart_;
  LocalGeometry geom_;
  Vec xi_;
  Mat phi_;
};

inline Vec phi(const SasakianStructure& st, const Vec& p, const Vec& x) {
  return koszul_connection(st.metric(), p, x, st.reeb_field());
}

// |g(nabla_X xi, Y) + g(nabla_Y xi, X)|
inline double killing_residual(const PointTensors& t, const Vec& x, const Vec& y) {
  return std::abs(t.g(t.phi(x), y) + t.g(t.phi(y), x));
}

// |R(X, xi)Y - eta(Y) X + g(X, Y) xi|_g
inline double sasakian_residual(const PointTensors& t, const Vec& x, const Vec& y) {
  Vec r = t.curvature(x, t.xi(), y) - t.eta(y) * x + t.g(x, y) * t.xi();
  return t.norm(r);
}

struct AlmostContactResiduals {
  double phi_xi = 0.0;        // |phi xi|
  double phi_squared = 0.0;   // |phi^2 X + X - eta(X) xi|
  double compatible = 0.0;    // |g(phi Y, phi Z) - g(Y, Z) + eta(Y) eta(Z)|
  double eta_xi = 0.0;        // |eta(xi) - 1|
  double worst() const { return std::max({phi_xi, phi_squared, compatible, eta_xi}); }
};

inline AlmostContactResiduals almost_contact_residuals(const PointTensors& t, const Vec& y, const Vec& z) {
  AlmostContactResiduals r;
  r.phi_xi = t.norm(t.phi(t.xi()));
  r.phi_squared = t.norm(t.phi(t.phi(y)) + y - t.eta(y) * t.xi());
  r.compatible = std::abs(t.g(t.phi(y), t.phi(z)) - t.g(y, z) + t.eta(y) * t.eta(z));
  r.eta_xi = std::abs(t.eta(t.xi()) - 1.0);
  return r;
}

// |d eta(xi, X)|
inline double reeb_contraction_residual(const SasakianStructure& st, const Vec& p, const Vec& x) {
  return std::abs(d_eta(st, p, st.reeb(p), x));
}

// |det| of d eta on a g-orthonormal frame of Ker eta.
inline double contact_nondegeneracy(const SasakianStructure& st, const Vec& p) {
  Mat b = contact_basis(p);
  std::vector<Vec> cols;
  for (Eigen::Index i = 0; i < b.cols(); ++i) cols.push_back(b.col(i));
  Frame f = gram_schmidt(st.metric(), p, cols);
  return std::abs(d_eta_matrix(st, p, f.matrix()).determinant());
}

}  // namespace sasred
