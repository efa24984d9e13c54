#pragma once

// Level sets of the momentum map and their quotients.
//
// A ReductionSetup describes a submanifold N of the sphere cut out by
// <J, b> = 0 for constraint rows b (in R^d), and a subtorus generated by
// vertical rows acting on N. Willett reduction at mu != 0 takes both to be a
// basis of ker mu (plus the open condition <J, mu> > 0); reduction at zero
// takes both to be the identity.
//
// A constraint row b gives the quadratic form sum_j c_j |z_j|^2 with c = W^T b.
// When the moduli polytope forces some |z_j|^2 = 0 those coordinates are
// imposed as linear constraints instead, which keeps the defining map regular.
// Vertical generators that vanish identically on N act trivially and are
// dropped from the quotient (they still count against local freeness).

#include <algorithm>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sasred/errors.hpp"
#include "sasred/linalg.hpp"
#include "sasred/structures.hpp"
#include "sasred/tensor_kernel.hpp"
#include "sasred/torus.hpp"

namespace sasred {

inline constexpr double kLevelSetTol = 1e-10;
inline constexpr double kMinRayParameter = 1e-8;

// ---------------------------------------------------------------------------
// Seeds

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream per (seed, index): results do not depend on scheduling.
inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index + 0x1234567ULL)));
}

// ---------------------------------------------------------------------------
// Moduli polytope {t >= 0, sum t = 1, E t = 0, optional sign * <dir, t> >= 0}

class ModuliPolytope {
 public:
  ModuliPolytope(Mat equalities, Eigen::Index n, Vec dir = Vec(), int sign = 0) : n_(n), dir_(std::move(dir)) {
    const bool slack = sign != 0;
    const Eigen::Index vars = n + (slack ? 1 : 0);
    const Eigen::Index rows = 1 + equalities.rows() + (slack ? 1 : 0);
    Mat a = Mat::Zero(rows, vars);
    Vec b = Vec::Zero(rows);
    a.block(0, 0, 1, n).setOnes();
    b[0] = 1.0;
    if (equalities.rows() > 0) a.block(1, 0, equalities.rows(), n) = equalities;
    if (slack) {
      a.block(rows - 1, 0, 1, n) = sign * dir_.transpose();
      a(rows - 1, n) = -1.0;
    }
    enumerate(a, b);
  }

  bool empty() const { return vertices_.empty(); }
  const std::vector<Vec>& vertices() const { return vertices_; }
  Eigen::Index n() const { return n_; }

  double max_along(const Vec& dir) const {
    double best = -1e300;
    for (const auto& v : vertices_) best = std::max(best, dir.dot(v));
    return best;
  }

  // Coordinates vanishing on the whole polytope.
  std::vector<Eigen::Index> dead_coordinates() const {
    std::vector<Eigen::Index> dead;
    for (Eigen::Index j = 0; j < n_; ++j) {
      double m = 0.0;
      for (const auto& v : vertices_) m = std::max(m, v[j]);
      if (m < 1e-14) dead.push_back(j);
    }
    return dead;
  }

  // Dirichlet(1) mixture of the vertices.
  Vec sample(std::mt19937_64& rng) const {
    std::exponential_distribution<double> ex(1.0);
    Vec t = Vec::Zero(n_);
    double total = 0.0;
    for (const auto& v : vertices_) {
      const double w = ex(rng);
      t += w * v;
      total += w;
    }
    return t / total;
  }

 private:
  void enumerate(const Mat& a_full, const Vec& b_full) {
    // Independent rows only.
    Eigen::ColPivHouseholderQR<Mat> qr(a_full.transpose());
    qr.setThreshold(1e-10);
    const Eigen::Index r = qr.rank();
    std::vector<Eigen::Index> keep;
    {
      // Greedy row selection in input order for determinism.
      Mat chosen(0, a_full.cols());
      for (Eigen::Index i = 0; i < a_full.rows() && static_cast<Eigen::Index>(keep.size()) < r; ++i) {
        Mat trial(chosen.rows() + 1, a_full.cols());
        trial << chosen, a_full.row(i);
        if (numerical_rank(trial, 1e-10) > chosen.rows()) {
          chosen = trial;
          keep.push_back(i);
        }
      }
    }
    Mat a(static_cast<Eigen::Index>(keep.size()), a_full.cols());
    Vec b(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
      a.row(static_cast<Eigen::Index>(i)) = a_full.row(keep[i]);
      b[static_cast<Eigen::Index>(i)] = b_full[keep[i]];
    }
    // Consistency of dropped rows is checked on each candidate below.
    const Eigen::Index vars = a.cols();
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(r));
    std::iota(idx.begin(), idx.end(), 0);
    auto accept = [&](const Vec& x) {
      if (x.minCoeff() < -1e-12) return;
      if ((a_full * x - b_full).cwiseAbs().maxCoeff() > 1e-10) return;
      Vec t = x.head(n_).cwiseMax(0.0);
      for (Eigen::Index j = 0; j < n_; ++j)
        if (t[j] < 1e-15) t[j] = 0.0;
      t /= t.sum();
      for (const auto& v : vertices_)
        if ((v - t).norm() < 1e-10) return;
      vertices_.push_back(t);
    };
    // Iterate over all r-subsets of the variables (lexicographic).
    while (true) {
      Mat ab(r, r);
      for (Eigen::Index c = 0; c < r; ++c) ab.col(c) = a.col(idx[static_cast<std::size_t>(c)]);
      Eigen::FullPivLU<Mat> lu(ab);
      if (lu.isInvertible() && std::abs(lu.determinant()) > 1e-12) {
        Vec xb = lu.solve(b);
        Vec x = Vec::Zero(vars);
        for (Eigen::Index c = 0; c < r; ++c) x[idx[static_cast<std::size_t>(c)]] = xb[c];
        accept(x);
      }
      Eigen::Index i = r - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == vars - r + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (Eigen::Index j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }

  Eigen::Index n_;
  Vec dir_;
  std::vector<Vec> vertices_;
};

// Point on the sphere with the given squared moduli and random phases.
inline Vec point_from_moduli(const Vec& t, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  Vec p(2 * t.size());
  for (Eigen::Index j = 0; j < t.size(); ++j) {
    const double r = std::sqrt(std::max(0.0, t[j]));
    const double th = phase(rng);
    p[2 * j] = r * std::cos(th);
    p[2 * j + 1] = r * std::sin(th);
  }
  return p / p.norm();
}

// ---------------------------------------------------------------------------
// Setup

enum class LevelKind { Ray, Zero, Whole };

inline std::string to_string(LevelKind k) {
  switch (k) {
    case LevelKind::Ray: return "ray";
    case LevelKind::Zero: return "zero";
    case LevelKind::Whole: return "whole";
  }
  return "?";
}

// Constraint map of N: |q|^2 - 1, the quadratic rows, and the zeroed coordinates.
struct LevelConstraint {
  Mat quad;  // r x n
  std::vector<Eigen::Index> zeroed;

  std::size_t count() const { return 1 + static_cast<std::size_t>(quad.rows()) + 2 * zeroed.size(); }

  template <class S>
  JVec<S> value(const JVec<S>& q) const {
    JVec<S> out;
    out.reserve(count());
    out.push_back(dot(q, q) - 1.0);
    JVec<S> t = moduli_squared(q);
    for (Eigen::Index r = 0; r < quad.rows(); ++r) {
      S acc(0.0);
      for (std::size_t j = 0; j < t.size(); ++j) acc += t[j] * quad(r, static_cast<Eigen::Index>(j));
      out.push_back(acc);
    }
    for (auto j : zeroed) {
      out.push_back(q[static_cast<std::size_t>(2 * j)]);
      out.push_back(q[static_cast<std::size_t>(2 * j + 1)]);
    }
    return out;
  }

  template <class S>
  JMat<S> jacobian(const JVec<S>& q) const {
    JMat<S> d(count(), q.size());
    for (std::size_t i = 0; i < q.size(); ++i) d(0, i) = 2.0 * q[i];
    std::size_t row = 1;
    for (Eigen::Index r = 0; r < quad.rows(); ++r, ++row)
      for (std::size_t i = 0; i < q.size(); ++i) d(row, i) = q[i] * (2.0 * quad(r, static_cast<Eigen::Index>(i / 2)));
    for (auto j : zeroed) {
      d(row++, static_cast<std::size_t>(2 * j)) = S(1.0);
      d(row++, static_cast<std::size_t>(2 * j + 1)) = S(1.0);
    }
    return d;
  }
};

struct ReductionSetup {
  TorusAction action;
  MomentumCovector mu;
  LevelKind level = LevelKind::Ray;
  Mat constraint_rows;  // c x d
  Mat vertical_rows;    // k x d, as requested
  LevelConstraint constraint;
  Mat vertical_weights;  // nontrivial, independent generators restricted to N (rows in R^n)
  Eigen::Index trivial_vertical = 0;
  bool reeb_vertical = false;

  Eigen::Index n() const { return action.n(); }
  Eigen::Index d() const { return action.d(); }
  Eigen::Index ambient_dim() const { return 2 * n(); }
  Eigen::Index sphere_dim() const { return 2 * n() - 1; }
  Eigen::Index k() const { return vertical_rows.rows(); }
  Eigen::Index level_set_dim() const {
    return sphere_dim() - constraint.quad.rows() - 2 * static_cast<Eigen::Index>(constraint.zeroed.size());
  }
  Eigen::Index orbit_dim() const { return vertical_weights.rows(); }
  Eigen::Index measured_quotient_dim() const { return level_set_dim() - orbit_dim(); }

  // Quadratic forms of the constraint rows, before any elimination.
  Mat constraint_forms() const { return constraint_rows * action.weights(); }

  ModuliPolytope level_polytope() const {
    const Mat forms = constraint_forms();
    if (level == LevelKind::Ray)
      return ModuliPolytope(forms, n(), action.weights().transpose() * mu.mu_unit, +1);
    return ModuliPolytope(forms, n());
  }
};

namespace detail {

// Row basis of m in input order (rows dependent on earlier ones are dropped).
inline Mat independent_rows(const Mat& m, double tol = 1e-10) {
  Mat out(0, m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (m.row(i).norm() < tol) continue;
    Mat trial(out.rows() + 1, m.cols());
    trial << out, m.row(i);
    if (numerical_rank(trial, 1e-10) > out.rows()) out = trial;
  }
  return out;
}

inline void finalize_setup(ReductionSetup& s) {
  const Eigen::Index n = s.n();
  ModuliPolytope base(s.constraint_forms(), n);
  if (base.empty()) throw Error(ErrorKind::EmptyLevelSet, "moduli polytope is infeasible (no vertex)");
  s.constraint.zeroed = base.dead_coordinates();
  std::vector<bool> live(static_cast<std::size_t>(n), true);
  for (auto j : s.constraint.zeroed) live[static_cast<std::size_t>(j)] = false;
  auto restrict_cols = [&](Mat m) {
    for (Eigen::Index j = 0; j < n; ++j)
      if (!live[static_cast<std::size_t>(j)]) m.col(j).setZero();
    return m;
  };
  s.constraint.quad = independent_rows(restrict_cols(s.constraint_forms()));
  Mat vw = restrict_cols(s.vertical_rows * s.action.weights());
  s.trivial_vertical = 0;
  for (Eigen::Index i = 0; i < vw.rows(); ++i) s.trivial_vertical += vw.row(i).norm() < 1e-12;
  s.vertical_weights = independent_rows(vw);
  // Reeb direction i q is vertical iff the live indicator is in the row space.
  Vec ones = Vec::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) ones[j] = live[static_cast<std::size_t>(j)] ? 1.0 : 0.0;
  s.reeb_vertical = false;
  if (s.vertical_weights.rows() > 0) {
    Vec coef = s.vertical_weights.transpose().completeOrthogonalDecomposition().solve(ones);
    s.reeb_vertical = (s.vertical_weights.transpose() * coef - ones).norm() < 1e-10;
  }
}

}  // namespace detail

// J^{-1}(R_+ mu) / K_mu
inline ReductionSetup willett_setup(const TorusAction& a, const MomentumCovector& mu) {
  if (mu.d() != a.d()) throw Error(ErrorKind::ValidationError, "mu has the wrong length");
  ReductionSetup s;
  s.action = a;
  s.mu = mu;
  s.level = LevelKind::Ray;
  s.constraint_rows = kernel_algebra(mu).basis;
  s.vertical_rows = s.constraint_rows;
  detail::finalize_setup(s);
  return s;
}

// J^{-1}(0) / T^d
inline ReductionSetup zero_level_setup(const TorusAction& a) {
  ReductionSetup s;
  s.action = a;
  s.mu = MomentumCovector(Vec::Zero(a.d()));
  s.level = LevelKind::Zero;
  s.constraint_rows = Mat::Identity(a.d(), a.d());
  s.vertical_rows = s.constraint_rows;
  detail::finalize_setup(s);
  return s;
}

// J^{-1}(0) / K_mu: the zero stratum of the cone correspondence.
inline ReductionSetup zero_stratum_setup(const TorusAction& a, const MomentumCovector& mu) {
  ReductionSetup s;
  s.action = a;
  s.mu = mu;
  s.level = LevelKind::Zero;
  s.constraint_rows = Mat::Identity(a.d(), a.d());
  s.vertical_rows = kernel_algebra(mu).basis;
  detail::finalize_setup(s);
  return s;
}

// The whole sphere divided by the action (e.g. the Hopf fibration).
inline ReductionSetup orbit_space_setup(const TorusAction& a) {
  ReductionSetup s;
  s.action = a;
  s.mu = MomentumCovector(Vec::Zero(a.d()));
  s.level = LevelKind::Whole;
  s.constraint_rows = Mat(0, a.d());
  s.vertical_rows = Mat::Identity(a.d(), a.d());
  detail::finalize_setup(s);
  return s;
}

// ---------------------------------------------------------------------------
// Samples

struct LevelSetSample {
  Vec point;
  double s = 0.0;  // ray parameter, J = s mu_unit
};

struct EmptyCertificate {
  bool infeasible = false;  // no vertex at all
  double max_ray = 0.0;     // max <mu_unit, W t> over vertices
  std::string describe() const {
    return infeasible ? "moduli polytope infeasible"
                      : "ray parameter <= 0 on every vertex (max " + std::to_string(max_ray) + ")";
  }
};

inline double level_residual(const ReductionSetup& s, const Vec& p) {
  Vec j = s.action.momentum(p);
  double r = std::abs(p.norm() - 1.0);
  if (s.level == LevelKind::Ray) r = std::max(r, (j - s.mu.mu_unit.dot(j) * s.mu.mu_unit).norm());
  if (s.level == LevelKind::Zero) r = std::max(r, (s.constraint_rows * j).norm());
  return r;
}

inline LevelSetSample make_sample(const ReductionSetup& s, const Vec& t, std::mt19937_64& rng) {
  LevelSetSample out;
  out.point = point_from_moduli(t, rng);
  for (auto j : s.constraint.zeroed) out.point.segment(2 * j, 2).setZero();
  out.s = s.level == LevelKind::Ray ? s.mu.mu_unit.dot(s.action.momentum(out.point)) : 0.0;
  return out;
}

// Moduli-first sampling: Dirichlet mixtures of the polytope vertices, uniform phases.
inline std::vector<LevelSetSample> sample_level_set(const ReductionSetup& s, std::size_t count, std::uint64_t seed) {
  ModuliPolytope poly = s.level_polytope();
  if (poly.empty()) throw Error(ErrorKind::EmptyLevelSet, EmptyCertificate{true, 0.0}.describe());
  Vec ray_dir = s.action.weights().transpose() * s.mu.mu_unit;
  if (s.level == LevelKind::Ray) {
    const double best = poly.max_along(ray_dir);
    if (best <= kMinRayParameter) throw Error(ErrorKind::EmptyLevelSet, EmptyCertificate{false, best}.describe());
  }
  std::vector<LevelSetSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto rng = sample_rng(seed, i);
    for (int attempt = 0;; ++attempt) {
      Vec t = poly.sample(rng);
      if (s.level == LevelKind::Ray && ray_dir.dot(t) < kMinRayParameter) {
        if (attempt > 1000) throw Error(ErrorKind::EmptyLevelSet, "positive ray has negligible measure");
        continue;
      }
      out.push_back(make_sample(s, t, rng));
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Newton projection onto J^{-1}(R_+ mu) in the unknowns (z, s).

struct NewtonResult {
  LevelSetSample sample;
  int iterations = 0;
  double residual = 0.0;
};

inline NewtonResult newton_project(const TorusAction& a, const MomentumCovector& mu, const Vec& q0, double tol = 1e-12,
                                   int max_iter = 50) {
  if (mu.is_zero()) throw Error(ErrorKind::ZeroMu, "projection onto a ray needs mu != 0");
  const Eigen::Index m = q0.size(), d = a.d();
  Vec z = q0;
  double s = mu.mu_unit.dot(a.momentum(z));
  auto residual = [&](const Vec& zz, double ss) {
    Vec f(1 + d);
    f[0] = zz.squaredNorm() - 1.0;
    f.tail(d) = a.momentum(zz) - ss * mu.mu_unit;
    return f;
  };
  Vec f = residual(z, s);
  for (int it = 0; it <= max_iter; ++it) {
    if (f.cwiseAbs().maxCoeff() < tol) {
      if (s <= 1e-10) throw Error(ErrorKind::WrongRay, "converged with ray parameter " + std::to_string(s));
      return {{z, s}, it, f.cwiseAbs().maxCoeff()};
    }
    if (it == max_iter) break;
    Mat jac = Mat::Zero(1 + d, m + 1);
    jac.block(0, 0, 1, m) = 2.0 * z.transpose();
    for (Eigen::Index i = 0; i < m; ++i) jac.block(1, i, d, 1) = a.momentum_differential(z, Vec::Unit(m, i));
    jac.block(1, m, d, 1) = -mu.mu_unit;
    Vec step = jac.completeOrthogonalDecomposition().solve(-f);
    z += step.head(m);
    s += step[m];
    f = residual(z, s);
  }
  throw Error(ErrorKind::NoConvergence, "newton projection: residual " + std::to_string(f.cwiseAbs().maxCoeff()));
}

// ---------------------------------------------------------------------------
// Hypotheses

struct TransversalityReport {
  bool holds = false;
  Vec singular_values;
};

// Rank of [dJ on an orthonormal tangent frame of the sphere | mu_unit].
inline TransversalityReport transversality_check(const TorusAction& a, const MomentumCovector& mu, const Vec& p) {
  Mat e = sphere_tangent_basis(p);
  Mat m(a.d(), e.cols() + 1);
  for (Eigen::Index c = 0; c < e.cols(); ++c) m.col(c) = a.momentum_differential(p, e.col(c));
  m.col(e.cols()) = mu.mu_unit;
  TransversalityReport r;
  r.singular_values = singular_values(m);
  const double smax = r.singular_values.size() ? r.singular_values[0] : 0.0;
  r.holds = r.singular_values.size() == a.d() && r.singular_values[a.d() - 1] > kRankRelTol * smax;
  return r;
}

// ---------------------------------------------------------------------------
// Geometry at a point of N

class LevelSetPoint {
 public:
  LevelSetPoint(const ReductionSetup& setup, const SasakianStructure& st, LevelSetSample sample)
      : setup_(&setup), sample_(std::move(sample)), tensors_(st, sample_.point) {
    if (!st.is_round()) throw Error(ErrorKind::ValidationError, "reduction is implemented for the round structure");
    const Vec& p = sample_.point;
    Mat dmat = jacobian_at(p);
    if (numerical_rank(dmat, kRankRelTol) < dmat.rows())
      throw Error(ErrorKind::DegenerateAction, "level set is not regular at the sample");
    tangent_ = null_space(dmat, kRankRelTol);
    // Normal space of N inside the sphere: complement of T N, radial part removed.
    Mat normals = complement_basis(tangent_);
    std::vector<Vec> cols;
    for (Eigen::Index i = 0; i < normals.cols(); ++i) cols.push_back(tangential_project(p, normals.col(i)));
    auto eu = euclidean_metric();
    Frame nf = gram_schmidt_completion(eu, p, Frame{p, {}, {}}, cols, "n", 1e-8);
    normal_in_sphere_ = nf.empty() ? Mat(p.size(), 0) : nf.matrix();
    vertical_ = vertical_fields(p);
    if (vertical_.cols() > 0 && numerical_rank(vertical_, kRankRelTol) < vertical_.cols())
      throw Error(ErrorKind::DegenerateAction, "vertical fields are dependent at the sample");
  }

  const ReductionSetup& setup() const { return *setup_; }
  const LevelSetSample& sample() const { return sample_; }
  const Vec& point() const { return sample_.point; }
  const PointTensors& tensors() const { return tensors_; }
  const Mat& tangent_basis() const { return tangent_; }
  const Mat& normal_basis() const { return normal_in_sphere_; }
  const Mat& vertical_matrix() const { return vertical_; }

  Mat jacobian_at(const Vec& q) const {
    JMat<double> d = setup_->constraint.jacobian(to_std(q));
    Mat m(static_cast<Eigen::Index>(d.rows), static_cast<Eigen::Index>(d.cols));
    for (std::size_t i = 0; i < d.rows; ++i)
      for (std::size_t j = 0; j < d.cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d(i, j);
    return m;
  }

  // i (w_b . q) for every effective generator.
  template <class S>
  std::vector<JVec<S>> vertical_at(const JVec<S>& q) const {
    std::vector<JVec<S>> out;
    for (Eigen::Index b = 0; b < setup_->vertical_weights.rows(); ++b)
      out.push_back(complex_mult(pair_scale(Vec(setup_->vertical_weights.row(b).transpose()), q)));
    return out;
  }

  Mat vertical_fields(const Vec& q) const {
    auto v = vertical_at(to_std(q));
    Mat m(q.size(), static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = to_eigen(v[i]);
    return m;
  }

  // Orthogonal projector onto T_q N, I - D^T (D D^T)^{-1} D, generic in the scalar.
  template <class S>
  JMat<S> tangent_projector_at(const JVec<S>& q) const {
    JMat<S> d = setup_->constraint.jacobian(q);
    const std::size_t c = d.rows, m = d.cols;
    JMat<S> g(c, c);
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        S acc(0.0);
        for (std::size_t k = 0; k < m; ++k) acc += d(i, k) * d(j, k);
        g(i, j) = acc;
      }
    JMat<S> x = solve_small(g, d);
    JMat<S> p(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        S acc(i == j ? 1.0 : 0.0);
        for (std::size_t k = 0; k < c; ++k) acc -= d(k, i) * x(k, j);
        p(i, j) = acc;
      }
    return p;
  }

  // Projector onto the vertical span, V (V^T V)^{-1} V^T.
  template <class S>
  JMat<S> vertical_projector_at(const JVec<S>& q) const {
    auto v = vertical_at(q);
    const std::size_t k = v.size(), m = q.size();
    JMat<S> p(m, m);
    if (k == 0) return p;
    JMat<S> g(k, k), vt(k, m);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) g(i, j) = dot(v[i], v[j]);
      for (std::size_t j = 0; j < m; ++j) vt(i, j) = v[i][j];
    }
    JMat<S> x = solve_small(g, vt);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        S acc(0.0);
        for (std::size_t b = 0; b < k; ++b) acc += v[b][i] * x(b, j);
        p(i, j) = acc;
      }
    return p;
  }

  template <class S>
  JMat<S> horizontal_projector_at(const JVec<S>& q) const {
    JMat<S> pt = tangent_projector_at(q);
    JMat<S> pv = vertical_projector_at(q);
    for (std::size_t i = 0; i < pt.data.size(); ++i) pt.data[i] -= pv.data[i];
    return pt;
  }

  Mat tangent_projector() const { return values(tangent_projector_at(to_std(point()))); }
  Mat vertical_projector() const { return values(vertical_projector_at(to_std(point()))); }
  Mat horizontal_projector() const { return values(horizontal_projector_at(to_std(point()))); }
  Mat normal_projector() const { return normal_in_sphere_ * normal_in_sphere_.transpose(); }

  // Directional derivatives of the projectors at the point.
  Mat tangent_projector_derivative(const Vec& x) const { return d1(tangent_projector_at(jet_line(point(), x))); }
  Mat horizontal_projector_derivative(const Vec& x) const { return d1(horizontal_projector_at(jet_line(point(), x))); }

  static Mat values(const JMat<double>& m) {
    Mat out(static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return out;
  }
  static Mat d1(const JMat<Jet2d>& m) {
    Mat out(static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).d1;
    return out;
  }

  // Chart of N at the point for the direct (intrinsic) curvature computation.
  ImplicitChart<LevelConstraint> chart() const {
    return ImplicitChart<LevelConstraint>(setup_->constraint, point(), tangent_, jacobian_at(point()).transpose());
  }

 private:
  const ReductionSetup* setup_;
  LevelSetSample sample_;
  PointTensors tensors_;
  Mat tangent_;
  Mat normal_in_sphere_;
  Mat vertical_;
};

// ---------------------------------------------------------------------------
// Frames

struct ReductionFrame {
  LevelSetSample sample;
  Frame vertical;
  Vec reeb;
  bool reeb_horizontal = true;
  Frame contactD;
  Frame normal;

  // Horizontal block {contactD, reeb} as columns (reeb last when horizontal).
  Mat horizontal_matrix() const {
    Mat d = contactD.empty() ? Mat(reeb.size(), 0) : contactD.matrix();
    if (!reeb_horizontal) return d;
    Mat out(d.rows(), d.cols() + 1);
    out << d, reeb;
    return out;
  }
};

struct FrameDefects {
  double orthogonality = 0.0;
  double span = 0.0;
  double normality = 0.0;
  double eta_vertical = 0.0;
  double eta_contact = 0.0;
  double eta_reeb = 0.0;
  double worst() const { return std::max({orthogonality, span, normality, eta_vertical, eta_contact, eta_reeb}); }
};

inline constexpr double kFrameTol = 1e-9;

inline FrameDefects frame_defects(const LevelSetPoint& lp, const ReductionFrame& f) {
  const auto& t = lp.tensors();
  FrameDefects d;
  std::vector<Vec> all;
  for (const auto& v : f.vertical.vectors) all.push_back(v);
  if (f.reeb_horizontal) all.push_back(f.reeb);
  for (const auto& v : f.contactD.vectors) all.push_back(v);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j)
      d.orthogonality = std::max(d.orthogonality, std::abs(t.g(all[i], all[j]) - (i == j ? 1.0 : 0.0)));
  Mat pt = lp.tangent_projector();
  for (const auto& v : all) d.span = std::max(d.span, (pt * v - v).norm());
  if (static_cast<Eigen::Index>(all.size()) != lp.tangent_basis().cols()) d.span = std::max(d.span, 1.0);
  for (const auto& nv : f.normal.vectors)
    for (Eigen::Index c = 0; c < lp.tangent_basis().cols(); ++c)
      d.normality = std::max(d.normality, std::abs(t.g(nv, lp.tangent_basis().col(c))));
  for (const auto& v : f.vertical.vectors) d.eta_vertical = std::max(d.eta_vertical, std::abs(t.eta(v)));
  for (const auto& v : f.contactD.vectors) d.eta_contact = std::max(d.eta_contact, std::abs(t.eta(v)));
  d.eta_reeb = std::abs(t.eta(f.reeb) - 1.0);
  if (!f.reeb_horizontal) d.eta_vertical = 0.0;  // the Reeb field itself is vertical
  return d;
}

inline ReductionFrame build_frame(const LevelSetPoint& lp) {
  const auto& st = lp.tensors().structure();
  const Vec& p = lp.point();
  const auto& g = st.metric();
  ReductionFrame f;
  f.sample = lp.sample();
  f.reeb = lp.tensors().xi();
  f.reeb_horizontal = !lp.setup().reeb_vertical;

  std::vector<Vec> vfields;
  Mat vm = lp.vertical_matrix();
  for (Eigen::Index i = 0; i < vm.cols(); ++i) vfields.push_back(vm.col(i));
  f.vertical = gram_schmidt_completion(g, p, Frame{p, {}, {}}, vfields, "vert");
  if (f.vertical.size() != vfields.size()) throw Error(ErrorKind::DegenerateAction, "vertical fields lost rank");

  Frame seed = f.vertical;
  if (f.reeb_horizontal) {
    seed = gram_schmidt_completion(g, p, seed, {f.reeb}, "reeb");
    if (seed.size() != f.vertical.size() + 1) throw Error(ErrorKind::FrameInconsistent, "Reeb field is not transverse to the orbit");
  }
  const Mat& e = lp.tangent_basis();
  std::vector<Vec> cands;
  for (Eigen::Index c = 0; c < e.cols(); ++c) cands.push_back(e.col(c));
  Frame full = gram_schmidt_completion(g, p, seed, cands, "D", 1e-8);
  f.contactD = Frame{p, {}, {}};
  for (std::size_t i = seed.size(); i < full.size(); ++i) {
    f.contactD.vectors.push_back(full.vectors[i]);
    f.contactD.labels.push_back(full.labels[i]);
  }

  // Normal frame: phi of the constraint generators first, then whatever the
  // constraint Jacobian adds (zeroed coordinates).
  std::vector<Vec> normals;
  for (Eigen::Index b = 0; b < lp.setup().constraint_rows.rows(); ++b) {
    Vec x = lp.setup().action.fundamental_field(lp.setup().constraint_rows.row(b).transpose(), p);
    normals.push_back(lp.tensors().phi(x));
  }
  f.normal = gram_schmidt_completion(g, p, Frame{p, {}, {}}, normals, "phiX");
  const Mat& nb = lp.normal_basis();
  std::vector<Vec> rest;
  for (Eigen::Index c = 0; c < nb.cols(); ++c) rest.push_back(nb.col(c));
  f.normal = gram_schmidt_completion(g, p, f.normal, rest, "nu", 1e-8);

  FrameDefects defects = frame_defects(lp, f);
  if (defects.worst() > kFrameTol)
    throw Error(ErrorKind::FrameInconsistent, "frame invariant violated by " + std::to_string(defects.worst()));
  return f;
}

// ---------------------------------------------------------------------------
// Dimensions

inline Eigen::Index quotient_dimension(Eigen::Index dim_m, Eigen::Index d, Eigen::Index k) { return dim_m - (d - 1) - k; }

// The printed alternative 2n - d - m - k + 1 with dim M = 2n - 1.
inline Eigen::Index printed_dimension_formula(Eigen::Index dim_m, Eigen::Index d, Eigen::Index k, Eigen::Index m = 0) {
  return (dim_m + 1) - d - m - k + 1;
}

inline Eigen::Index zero_level_quotient_dimension(Eigen::Index dim_m, Eigen::Index d) { return dim_m - 2 * d; }

// ---------------------------------------------------------------------------
// Reduced tensors in the horizontal frame

struct ReducedPointData {
  Mat metric_gram;  // on {contactD, reeb}
  Vec eta;          // on {contactD, reeb}
  Mat d_eta;        // on contactD pairs
  double d_eta_det = 0.0;
  double basic_defect = 0.0;  // max |d eta(X_iM, Z)| over tangent Z
};

inline ReducedPointData reduced_tensors(const LevelSetPoint& lp, const ReductionFrame& f) {
  const auto& t = lp.tensors();
  const auto& st = t.structure();
  const Vec& p = lp.point();
  ReducedPointData r;
  Mat h = f.horizontal_matrix();
  r.metric_gram = st.metric().gram(p, h);
  r.eta = Vec(h.cols());
  for (Eigen::Index i = 0; i < h.cols(); ++i) r.eta[i] = t.eta(h.col(i));
  r.d_eta = f.contactD.empty() ? Mat(0, 0) : d_eta_matrix(st, p, f.contactD.matrix());
  r.d_eta_det = r.d_eta.size() ? r.d_eta.determinant() : 1.0;
  const Mat& e = lp.tangent_basis();
  for (const auto& v : f.vertical.vectors)
    for (Eigen::Index c = 0; c < e.cols(); ++c) r.basic_defect = std::max(r.basic_defect, std::abs(d_eta(st, p, v, e.col(c))));
  return r;
}

}  // namespace sasred
