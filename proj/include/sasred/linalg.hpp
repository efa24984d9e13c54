#pragma once

// Vector helpers shared by the double (Eigen) and jet (std::vector) paths.
//
// Ambient coordinates are ordered (x_1, y_1, ..., x_n, y_n) with z_j = x_j + i y_j.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <vector>

#include "sasred/errors.hpp"
#include "sasred/jet.hpp"

namespace sasred {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline JVec<double> to_std(const Vec& v) { return JVec<double>(v.data(), v.data() + v.size()); }
inline Vec to_eigen(const JVec<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

template <class S>
JVec<S> lift(const Vec& v) {
  JVec<S> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = S(v[i]);
  return out;
}

// Point on the straight line c0 + t c1 as a jet in t.
inline JVec<Jet2d> jet_line(const Vec& c0, const Vec& c1) {
  JVec<Jet2d> out(static_cast<std::size_t>(c0.size()));
  for (Eigen::Index i = 0; i < c0.size(); ++i) out[static_cast<std::size_t>(i)] = Jet2d(c0[i], c1[i], 0.0);
  return out;
}

inline Vec jet_values(const JVec<Jet2d>& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].value;
  return out;
}
inline Vec jet_d1(const JVec<Jet2d>& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].d1;
  return out;
}
inline Vec jet_d2(const JVec<Jet2d>& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].d2;
  return out;
}

template <class S>
S dot(const JVec<S>& a, const JVec<S>& b) {
  S acc(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <class S>
JVec<S> operator+(JVec<S> a, const JVec<S>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class S>
JVec<S> operator-(JVec<S> a, const JVec<S>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class S, class C>
JVec<S> scaled(JVec<S> a, const C& c) {
  for (auto& x : a) x = x * c;
  return a;
}

// i * v, pairwise (x, y) -> (-y, x).
template <class S>
JVec<S> complex_mult(const JVec<S>& v) {
  JVec<S> out(v.size());
  for (std::size_t j = 0; j + 1 < v.size(); j += 2) {
    out[j] = -v[j + 1];
    out[j + 1] = v[j];
  }
  return out;
}

inline Vec complex_mult(const Vec& v) {
  Vec out(v.size());
  for (Eigen::Index j = 0; j + 1 < v.size(); j += 2) {
    out[j] = -v[j + 1];
    out[j + 1] = v[j];
  }
  return out;
}

template <class S>
JVec<S> normalized(const JVec<S>& v) {
  using std::sqrt;
  S inv = 1.0 / sqrt(dot(v, v));
  return scaled(v, inv);
}

// v - <v,p> p; p is taken to be a unit vector.
inline Vec tangential_project(const Vec& p, const Vec& v) { return v - p.dot(v) * p; }

template <class S>
JVec<S> tangential_project(const JVec<S>& p, const JVec<S>& v) {
  S c = dot(v, p);
  JVec<S> out(v);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] -= c * p[i];
  return out;
}

// Squared moduli |z_j|^2.
template <class S>
JVec<S> moduli_squared(const JVec<S>& q) {
  JVec<S> t(q.size() / 2);
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = q[2 * j] * q[2 * j] + q[2 * j + 1] * q[2 * j + 1];
  return t;
}

inline Vec moduli_squared(const Vec& q) {
  Vec t(q.size() / 2);
  for (Eigen::Index j = 0; j < t.size(); ++j) t[j] = q[2 * j] * q[2 * j] + q[2 * j + 1] * q[2 * j + 1];
  return t;
}

// Complex-diagonal multiplication: component pair j scaled by w_j.
template <class S>
JVec<S> pair_scale(const Vec& w, const JVec<S>& q) {
  JVec<S> out(q.size());
  for (std::size_t j = 0; j < q.size() / 2; ++j) {
    out[2 * j] = q[2 * j] * w[static_cast<Eigen::Index>(j)];
    out[2 * j + 1] = q[2 * j + 1] * w[static_cast<Eigen::Index>(j)];
  }
  return out;
}

inline Vec pair_scale(const Vec& w, const Vec& q) {
  Vec out(q.size());
  for (Eigen::Index j = 0; j < q.size() / 2; ++j) {
    out[2 * j] = q[2 * j] * w[j];
    out[2 * j + 1] = q[2 * j + 1] * w[j];
  }
  return out;
}

// Dense row-major matrix over a generic scalar.
template <class S>
struct JMat {
  std::size_t rows = 0, cols = 0;
  std::vector<S> data;

  JMat() = default;
  JMat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, S(0.0)) {}
  S& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// Solves A X = B by Gaussian elimination, pivoting on the innermost value.
// A is square; B has any number of columns.
template <class S>
JMat<S> solve_small(JMat<S> a, JMat<S> b) {
  const std::size_t n = a.rows;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(scalar_value(a(k, k)));
    for (std::size_t i = k + 1; i < n; ++i) {
      double v = std::abs(scalar_value(a(i, k)));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) throw Error(ErrorKind::SingularMetric, "singular system in jet solve");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      for (std::size_t j = 0; j < b.cols; ++j) std::swap(b(k, j), b(piv, j));
    }
    S inv = 1.0 / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      S f = a(i, k) * inv;
      if (max_abs_part(f) == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (std::size_t j = 0; j < b.cols; ++j) b(i, j) -= f * b(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    S inv = 1.0 / a(kk, kk);
    for (std::size_t j = 0; j < b.cols; ++j) {
      S acc = b(kk, j);
      for (std::size_t i = kk + 1; i < n; ++i) acc -= a(kk, i) * b(i, j);
      b(kk, j) = acc * inv;
    }
  }
  return b;
}

// Orthonormal basis (columns) of the null space of a, via SVD with relative threshold.
inline Mat null_space(const Mat& a, double rel_tol = 1e-8) {
  const Eigen::Index cols = a.cols();
  if (a.rows() == 0) return Mat::Identity(cols, cols);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double smax = s.size() > 0 ? s[0] : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > rel_tol * std::max(smax, 1e-300)) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

inline Eigen::Index numerical_rank(const Mat& a, double rel_tol = 1e-8) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > rel_tol * s[0]) ++rank;
  return rank;
}

inline Vec singular_values(const Mat& a) {
  if (a.size() == 0) return Vec(0);
  return Eigen::JacobiSVD<Mat>(a).singularValues();
}

}  // namespace sasred
