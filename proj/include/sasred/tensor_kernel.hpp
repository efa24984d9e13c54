#pragma once

// Extrinsic differential-geometry engine for metrics on embedded spheres and
// their submanifolds.
//
// Everything is computed at a base point p from a chart u -> q(u) with
// q(0) = p, dq(0) = E (orthonormal in the ambient Euclidean product) and
// second derivative at 0 normal to the manifold. Metric components, their
// first and second partial derivatives, Christoffel symbols (the Koszul
// formula applied to coordinate fields) and the curvature tensor are all
// obtained from Jet2 arithmetic; no finite differences are used.
//
// Curvature convention: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sasred/errors.hpp"
#include "sasred/jet.hpp"
#include "sasred/linalg.hpp"

namespace sasred {

inline constexpr double kGramSchmidtDropTol = 1e-10;
inline constexpr double kRankRelTol = 1e-8;
inline constexpr double kMaxMetricCondition = 1e12;

// ---------------------------------------------------------------------------
// Points, tangent vectors, metrics, frames

struct AmbientPoint {
  Vec coords;

  static AmbientPoint unit(Vec v) { return AmbientPoint{v / v.norm()}; }
  Eigen::Index complex_dim() const { return coords.size() / 2; }
};

struct TangentVector {
  Vec base;
  Vec vec;

  // Distance from the sphere's tangent space at base.
  double normal_defect() const { return std::abs(vec.dot(base)); }
};

// Riemannian metric on (an open set of) the ambient space, evaluated on
// tangent vectors. Carries a double evaluator and, when the metric is smooth
// enough for the curvature engine, a Jet2 evaluator.
class MetricEvaluator {
 public:
  using DoubleFn = std::function<double(const Vec&, const Vec&, const Vec&)>;
  using JetFn = std::function<Jet2d(const JVec<Jet2d>&, const JVec<Jet2d>&, const JVec<Jet2d>&)>;

  MetricEvaluator() = default;
  MetricEvaluator(std::string name, DoubleFn f, JetFn jet = {})
      : name_(std::move(name)), f_(std::move(f)), jet_(std::move(jet)) {}

  // Builds both evaluators from one generic callable f(q, X, Y) over JVec<S>.
  template <class F>
  static MetricEvaluator from_generic(std::string name, F f) {
    DoubleFn d = [f](const Vec& q, const Vec& x, const Vec& y) { return f(to_std(q), to_std(x), to_std(y)); };
    JetFn j = [f](const JVec<Jet2d>& q, const JVec<Jet2d>& x, const JVec<Jet2d>& y) { return f(q, x, y); };
    return MetricEvaluator(std::move(name), std::move(d), std::move(j));
  }

  double operator()(const Vec& q, const Vec& x, const Vec& y) const { return f_(q, x, y); }

  Jet2d jet(const JVec<Jet2d>& q, const JVec<Jet2d>& x, const JVec<Jet2d>& y) const {
    if (!jet_) throw Error(ErrorKind::NotDifferentiable, "metric '" + name_ + "' has no jet evaluator");
    return jet_(q, x, y);
  }

  bool supports_jets() const { return static_cast<bool>(jet_); }
  const std::string& name() const { return name_; }

  // Gram matrix of the columns of b at q.
  Mat gram(const Vec& q, const Mat& b) const {
    Mat g(b.cols(), b.cols());
    for (Eigen::Index i = 0; i < b.cols(); ++i)
      for (Eigen::Index j = i; j < b.cols(); ++j) g(i, j) = g(j, i) = (*this)(q, b.col(i), b.col(j));
    return g;
  }

 private:
  std::string name_;
  DoubleFn f_;
  JetFn jet_;
};

// Metric induced by the Euclidean product of the ambient space.
inline MetricEvaluator euclidean_metric() {
  return MetricEvaluator::from_generic("euclidean",
                                       [](const auto&, const auto& x, const auto& y) { return dot(x, y); });
}

struct Frame {
  Vec base;
  std::vector<Vec> vectors;
  std::vector<std::string> labels;

  std::size_t size() const { return vectors.size(); }
  bool empty() const { return vectors.empty(); }

  Mat matrix() const {
    Mat m(base.size(), static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vectors[i];
    return m;
  }

  // Max deviation of the Gram matrix from the identity.
  double orthonormality_defect(const MetricEvaluator& g) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i)
      for (std::size_t j = 0; j < vectors.size(); ++j)
        worst = std::max(worst, std::abs(g(base, vectors[i], vectors[j]) - (i == j ? 1.0 : 0.0)));
    return worst;
  }
};

namespace detail {

// Orthogonalize v against frame (twice, for stability) and report the residual norm.
inline double orthogonalize_against(const MetricEvaluator& g, const Vec& p, const std::vector<Vec>& frame, Vec& v) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& e : frame) v -= g(p, e, v) * e;
  double nn = g(p, v, v);
  return nn > 0.0 ? std::sqrt(nn) : 0.0;
}

}  // namespace detail

// Continues an orthonormal frame with the candidates, in order; candidates whose
// residual falls below the drop tolerance are discarded.
inline Frame gram_schmidt_completion(const MetricEvaluator& g, const Vec& p, Frame seed,
                                     const std::vector<Vec>& candidates, const std::string& label = "v",
                                     double drop_tol = kGramSchmidtDropTol) {
  const std::size_t seeded = seed.vectors.size();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    Vec v = candidates[i];
    double r = detail::orthogonalize_against(g, p, seed.vectors, v);
    if (r < drop_tol) continue;
    seed.vectors.push_back(v / r);
    seed.labels.push_back(label + std::to_string(seed.vectors.size() - seeded - 1));
  }
  return seed;
}

// Modified Gram-Schmidt in input order with respect to the metric at p.
inline Frame gram_schmidt(const MetricEvaluator& g, const Vec& p, const std::vector<Vec>& vectors,
                          const std::string& label = "v", double drop_tol = kGramSchmidtDropTol) {
  Frame f = gram_schmidt_completion(g, p, Frame{p, {}, {}}, vectors, label, drop_tol);
  if (f.empty()) throw Error(ErrorKind::EmptyFrame, "every input vector was dropped");
  return f;
}

// Deterministic orthonormal basis of the Euclidean orthogonal complement of the
// columns of `against` (which need not be orthonormal), built from the standard basis.
inline Mat complement_basis(const Mat& against) {
  const Eigen::Index n = against.rows();
  std::vector<Vec> seed_vecs;
  for (Eigen::Index j = 0; j < against.cols(); ++j) seed_vecs.push_back(against.col(j));
  auto e = euclidean_metric();
  Vec origin = Vec::Zero(n);
  Frame seed = gram_schmidt_completion(e, origin, Frame{origin, {}, {}}, seed_vecs, "a");
  const std::size_t k = seed.size();
  std::vector<Vec> std_basis;
  for (Eigen::Index i = 0; i < n; ++i) std_basis.push_back(Vec::Unit(n, i));
  Frame full = gram_schmidt_completion(e, origin, std::move(seed), std_basis, "c", 1e-8);
  Mat out(n, static_cast<Eigen::Index>(full.size() - k));
  for (std::size_t i = k; i < full.size(); ++i) out.col(static_cast<Eigen::Index>(i - k)) = full.vectors[i];
  return out;
}

// Orthonormal basis of T_p S^{2n-1}.
inline Mat sphere_tangent_basis(const Vec& p) { return complement_basis(p); }

// ---------------------------------------------------------------------------
// Directional derivatives

struct DirectionalDerivative {
  Vec first;
  Vec second;
};

// Sphere retraction t -> normalize(p + t v) as a jet.
inline JVec<Jet2d> retraction_curve(const Vec& p, const Vec& v) { return normalized(jet_line(p, v)); }

// Exact first and second derivative of t -> field(normalize(p + t dir)) at 0.
template <class Field>
DirectionalDerivative directional_derivative(const Field& field, const Vec& p, const Vec& dir) {
  JVec<Jet2d> out = field(retraction_curve(p, dir));
  return {jet_d1(out), jet_d2(out)};
}

// Type-erased vector field for runtime composition; jets are optional.
class TangentField {
 public:
  using DoubleFn = std::function<Vec(const Vec&)>;
  using JetFn = std::function<JVec<Jet2d>(const JVec<Jet2d>&)>;

  TangentField(std::string name, DoubleFn f, JetFn jet = {})
      : name_(std::move(name)), f_(std::move(f)), jet_(std::move(jet)) {}

  template <class F>
  static TangentField from_generic(std::string name, F f) {
    return TangentField(
        std::move(name), [f](const Vec& q) { return to_eigen(f(to_std(q))); },
        [f](const JVec<Jet2d>& q) { return f(q); });
  }

  Vec operator()(const Vec& q) const { return f_(q); }
  JVec<double> operator()(const JVec<double>& q) const { return to_std(f_(to_eigen(q))); }
  JVec<Jet2d> operator()(const JVec<Jet2d>& q) const {
    if (!jet_) throw Error(ErrorKind::NotDifferentiable, "field '" + name_ + "' rejects jet inputs");
    return jet_(q);
  }

 private:
  std::string name_;
  DoubleFn f_;
  JetFn jet_;
};

// [X,Y](p) = D_X Y - D_Y X, projected by `projector` (defaults to T_p S).
template <class FX, class FY>
Vec lie_bracket(const FX& xf, const FY& yf, const Vec& p, const Mat* projector = nullptr) {
  Vec x = to_eigen(xf(to_std(p)));
  Vec y = to_eigen(yf(to_std(p)));
  Vec b = directional_derivative(yf, p, x).first - directional_derivative(xf, p, y).first;
  if (projector) return *projector * b;
  return tangential_project(p, b);
}

// ---------------------------------------------------------------------------
// Charts

// Gnomonic chart of the unit sphere: q(u) = (p + E u) / |p + E u|.
// Its curves through 0 are exactly the retraction curves normalize(p + t v).
class SphereChart {
 public:
  explicit SphereChart(Vec p) : p_(std::move(p)), e_(sphere_tangent_basis(p_)) {}

  const Vec& point() const { return p_; }
  const Mat& basis() const { return e_; }
  Eigen::Index dim() const { return e_.cols(); }

  template <class S>
  JVec<S> operator()(const JVec<S>& u) const {
    JVec<S> w = lift<S>(p_);
    for (Eigen::Index a = 0; a < e_.cols(); ++a)
      for (Eigen::Index i = 0; i < e_.rows(); ++i) w[static_cast<std::size_t>(i)] += u[static_cast<std::size_t>(a)] * e_(i, a);
    return normalized(w);
  }

 private:
  Vec p_;
  Mat e_;
};

// Chart of the zero set of a constraint map F: q(u) = p + E u + N v(u) with
// F(q(u)) = 0 solved by Newton's method in the jet algebra.
// Constraint must expose: template <class S> JVec<S> value(const JVec<S>&) and
// template <class S> JMat<S> jacobian(const JVec<S>&).
template <class Constraint>
class ImplicitChart {
 public:
  ImplicitChart(Constraint c, Vec p, Mat tangent, Mat normal)
      : c_(std::move(c)), p_(std::move(p)), e_(std::move(tangent)), n_(std::move(normal)) {}

  const Vec& point() const { return p_; }
  const Mat& basis() const { return e_; }
  Eigen::Index dim() const { return e_.cols(); }

  template <class S>
  JVec<S> operator()(const JVec<S>& u) const {
    const std::size_t amb = static_cast<std::size_t>(p_.size());
    const std::size_t nc = static_cast<std::size_t>(n_.cols());
    JVec<S> base = lift<S>(p_);
    for (Eigen::Index a = 0; a < e_.cols(); ++a)
      for (std::size_t i = 0; i < amb; ++i) base[i] += u[static_cast<std::size_t>(a)] * e_(static_cast<Eigen::Index>(i), a);
    JVec<S> v(nc, S(0.0));
    JVec<S> q = base;
    for (int iter = 0; iter < 60; ++iter) {
      JVec<S> f = c_.value(q);
      JMat<S> df = c_.jacobian(q);
      JMat<S> a(nc, nc), rhs(nc, 1);
      for (std::size_t r = 0; r < nc; ++r) {
        rhs(r, 0) = f[r];
        for (std::size_t k = 0; k < nc; ++k) {
          S acc(0.0);
          for (std::size_t i = 0; i < amb; ++i) acc += df(r, i) * n_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
          a(r, k) = acc;
        }
      }
      JMat<S> step = solve_small(a, rhs);
      double change = 0.0;
      for (std::size_t k = 0; k < nc; ++k) {
        v[k] -= step(k, 0);
        change = std::max(change, max_abs_part(step(k, 0)));
      }
      q = base;
      for (std::size_t k = 0; k < nc; ++k)
        for (std::size_t i = 0; i < amb; ++i) q[i] += v[k] * n_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      if (change < 1e-15) break;
    }
    return q;
  }

 private:
  Constraint c_;
  Vec p_;
  Mat e_;
  Mat n_;
};

// ---------------------------------------------------------------------------
// Local geometry: metric jets, Christoffel symbols, curvature

class LocalGeometry {
 public:
  template <class Chart>
  static LocalGeometry build(const Chart& chart, const MetricEvaluator& metric) {
    LocalGeometry lg;
    lg.metric_ = metric;
    lg.p_ = chart.point();
    lg.e_ = chart.basis();
    const Eigen::Index m = chart.dim();
    lg.m_ = m;

    // Metric component jets along a chart direction.
    auto along = [&](const Vec& dir) {
      using Outer = Jet2<Jet2d>;
      std::vector<JVec<Jet2d>> fields(static_cast<std::size_t>(m));
      JVec<Jet2d> point;
      for (Eigen::Index a = 0; a < m; ++a) {
        JVec<Outer> u(static_cast<std::size_t>(m));
        for (Eigen::Index i = 0; i < m; ++i)
          u[static_cast<std::size_t>(i)] = Outer(Jet2d(0.0, dir[i], 0.0), Jet2d(i == a ? 1.0 : 0.0), Jet2d(0.0));
        JVec<Outer> q = chart(u);
        JVec<Jet2d> fa(q.size());
        if (a == 0) point.resize(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
          fa[i] = q[i].d1;
          if (a == 0) point[i] = q[i].value;
        }
        fields[static_cast<std::size_t>(a)] = std::move(fa);
      }
      std::vector<std::vector<Jet2d>> g(static_cast<std::size_t>(m), std::vector<Jet2d>(static_cast<std::size_t>(m)));
      for (std::size_t a = 0; a < static_cast<std::size_t>(m); ++a)
        for (std::size_t b = a; b < static_cast<std::size_t>(m); ++b) g[a][b] = g[b][a] = metric.jet(point, fields[a], fields[b]);
      return g;
    };

    lg.g_ = Mat::Zero(m, m);
    lg.dg_.assign(static_cast<std::size_t>(m), Mat::Zero(m, m));
    std::vector<std::vector<Mat>> ddg(static_cast<std::size_t>(m), std::vector<Mat>(static_cast<std::size_t>(m), Mat::Zero(m, m)));
    for (Eigen::Index c = 0; c < m; ++c) {
      auto g = along(Vec::Unit(m, c));
      for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b) {
          const auto& j = g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
          lg.g_(a, b) = j.value;
          lg.dg_[static_cast<std::size_t>(c)](a, b) = j.d1;
          ddg[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)](a, b) = j.d2;
        }
    }
    for (Eigen::Index c = 0; c < m; ++c)
      for (Eigen::Index d = c + 1; d < m; ++d) {
        auto g = along(Vec::Unit(m, c) + Vec::Unit(m, d));
        Mat& cd = ddg[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)];
        for (Eigen::Index a = 0; a < m; ++a)
          for (Eigen::Index b = 0; b < m; ++b)
            cd(a, b) = 0.5 * (g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].d2 -
                              ddg[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)](a, b) -
                              ddg[static_cast<std::size_t>(d)][static_cast<std::size_t>(d)](a, b));
        ddg[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)] = cd;
      }

    Eigen::SelfAdjointEigenSolver<Mat> es(lg.g_);
    const double lmin = es.eigenvalues().minCoeff(), lmax = es.eigenvalues().maxCoeff();
    if (!(lmin > 0.0) || lmax / lmin > kMaxMetricCondition)
      throw Error(ErrorKind::SingularMetric, "tangent Gram matrix is numerically singular");
    lg.ginv_ = lg.g_.inverse();

    // Christoffel symbols of the first kind and their derivatives.
    auto idx = [](Eigen::Index i) { return static_cast<std::size_t>(i); };
    std::vector<Mat> first(idx(m), Mat::Zero(m, m));  // first[l](a,b)
    std::vector<std::vector<Mat>> dfirst(idx(m), std::vector<Mat>(idx(m), Mat::Zero(m, m)));  // [c][l](a,b)
    for (Eigen::Index l = 0; l < m; ++l)
      for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b) {
          first[idx(l)](a, b) = 0.5 * (lg.dg_[idx(a)](l, b) + lg.dg_[idx(b)](l, a) - lg.dg_[idx(l)](a, b));
          for (Eigen::Index c = 0; c < m; ++c)
            dfirst[idx(c)][idx(l)](a, b) =
                0.5 * (ddg[idx(c)][idx(a)](l, b) + ddg[idx(c)][idx(b)](l, a) - ddg[idx(c)][idx(l)](a, b));
        }
    lg.gamma_.assign(idx(m), Mat::Zero(m, m));
    lg.dgamma_.assign(idx(m), std::vector<Mat>(idx(m), Mat::Zero(m, m)));
    for (Eigen::Index k = 0; k < m; ++k)
      for (Eigen::Index l = 0; l < m; ++l) lg.gamma_[idx(k)] += lg.ginv_(k, l) * first[idx(l)];
    for (Eigen::Index c = 0; c < m; ++c) {
      Mat dginv = -lg.ginv_ * lg.dg_[idx(c)] * lg.ginv_;
      for (Eigen::Index k = 0; k < m; ++k)
        for (Eigen::Index l = 0; l < m; ++l)
          lg.dgamma_[idx(c)][idx(k)] += dginv(k, l) * first[idx(l)] + lg.ginv_(k, l) * dfirst[idx(c)][idx(l)];
    }
    return lg;
  }

  const Vec& point() const { return p_; }
  const Mat& basis() const { return e_; }
  Eigen::Index dim() const { return m_; }
  const Mat& metric_components() const { return g_; }
  const MetricEvaluator& metric() const { return metric_; }

  Vec components(const Vec& x) const { return e_.transpose() * x; }
  Vec ambient(const Vec& c) const { return e_ * c; }

  double inner(const Vec& x, const Vec& y) const { return metric_(p_, x, y); }
  double norm(const Vec& x) const { return std::sqrt(inner(x, x)); }

  // Gamma(x, y) in components.
  Vec christoffel(const Vec& xc, const Vec& yc) const {
    Vec out(m_);
    for (Eigen::Index k = 0; k < m_; ++k) out[k] = xc.dot(gamma_[static_cast<std::size_t>(k)] * yc);
    return out;
  }

  // nabla_X Y for a vector field Y (generic callable on JVec<S>), differentiated
  // along the chart curve with velocity X.
  template <class Chart, class Field>
  Vec covariant_derivative(const Chart& chart, const Vec& x, const Field& yf) const {
    Vec xc = components(x);
    JVec<Jet2d> u(static_cast<std::size_t>(m_));
    for (Eigen::Index i = 0; i < m_; ++i) u[static_cast<std::size_t>(i)] = Jet2d(0.0, xc[i], 0.0);
    JVec<Jet2d> yq = yf(chart(u));
    Vec dy = jet_d1(yq);
    Vec yc = components(jet_values(yq));
    return ambient(components(dy) + christoffel(xc, yc));
  }

  // R(X,Y)Z from R^l_{ijk} = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik.
  Vec curvature(const Vec& x, const Vec& y, const Vec& z) const {
    Vec xc = components(x), yc = components(y), zc = components(z);
    Vec out = Vec::Zero(m_);
    // d_X Gamma(Y, Z) - d_Y Gamma(X, Z)
    for (Eigen::Index l = 0; l < m_; ++l) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < m_; ++i) {
        const auto& dgi = dgamma_[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
        acc += xc[i] * yc.dot(dgi * zc) - yc[i] * xc.dot(dgi * zc);
      }
      out[l] = acc;
    }
    Vec gyz = christoffel(yc, zc), gxz = christoffel(xc, zc);
    out += christoffel(xc, gyz) - christoffel(yc, gxz);
    return ambient(out);
  }

  // R(X,Y,Z,W) = g(R(X,Y)Z, W).
  double curvature4(const Vec& x, const Vec& y, const Vec& z, const Vec& w) const {
    return inner(curvature(x, y, z), w);
  }

 private:
  MetricEvaluator metric_;
  Vec p_;
  Mat e_;
  Eigen::Index m_ = 0;
  Mat g_, ginv_;
  std::vector<Mat> dg_;
  std::vector<Mat> gamma_;                 // [k](a,b)
  std::vector<std::vector<Mat>> dgamma_;   // [c][k](a,b)
};

// nabla_X Y on the sphere with the given metric.
template <class Field>
Vec koszul_connection(const MetricEvaluator& metric, const Vec& p, const Vec& x, const Field& yf) {
  SphereChart chart(p);
  return LocalGeometry::build(chart, metric).covariant_derivative(chart, x, yf);
}

inline Vec curvature_operator(const MetricEvaluator& metric, const Vec& p, const Vec& x, const Vec& y, const Vec& z) {
  SphereChart chart(p);
  return LocalGeometry::build(chart, metric).curvature(x, y, z);
}

// Extension convention: the tangent vector v at p extends to q -> v - <v,q> q.
inline auto extension_field(const Vec& v) {
  return [v](const auto& q) {
    using S = typename std::decay_t<decltype(q)>::value_type;
    return tangential_project(q, lift<S>(v));
  };
}

}  // namespace sasred
