#pragma once

// The Kaehler cone C(M) = M x R_+ over the round sphere, seen inside C^n \ {0}
// through w = r z. The potential lambda = r^2 eta is <i w, dw>, and with
// omega = -d lambda the action of the torus is Hamiltonian with J_s = r^2 J.
//
// Phi = iota^t J restricts the momentum map to the kernel algebra of mu; its
// zero set splits into the positive ray, the zero level and the negative ray.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sasred/errors.hpp"
#include "sasred/reduction.hpp"
#include "sasred/structures.hpp"
#include "sasred/torus.hpp"

namespace sasred {

struct ConePoint {
  Vec base;
  double r = 1.0;

  ConePoint() = default;
  ConePoint(Vec b, double radius) : base(std::move(b)), r(radius) {
    if (!(r > 1e-12)) throw Error(ErrorKind::ValidationError, "cone point: r must be positive (the apex is excluded)");
    if (std::abs(base.norm() - 1.0) > 1e-10) throw Error(ErrorKind::ValidationError, "cone point: base is not on the unit sphere");
  }

  Vec ambient() const { return r * base; }
};

// r^2 g(X, Y) + rho sigma for tangent vectors (X, rho), (Y, sigma).
inline double cone_metric(const SasakianStructure& st, const ConePoint& cp, const Vec& x, double rho, const Vec& y, double sigma) {
  return cp.r * cp.r * st.g(cp.base, x, y) + rho * sigma;
}

inline Vec symplectic_momentum(const TorusAction& a, const ConePoint& cp) { return cp.r * cp.r * a.momentum(cp.base); }

// Tangent vector (X, rho) at cp as a vector of C^n: r X + rho z.
inline Vec cone_tangent(const ConePoint& cp, const Vec& x, double rho) { return cp.r * x + rho * cp.base; }

// omega(U, V) = scale * (-d lambda)(U, V) on C^n; d lambda is differentiated
// from lambda_w(V) = <i w, V> with constant extensions.
struct ConeFormCheck {
  double contraction = 0.0;  // omega(X_M, V)
  double hamiltonian = 0.0;  // scale * d<J_s, r>(V)
  double residual() const { return std::abs(contraction - hamiltonian); }
};

inline ConeFormCheck cone_form_check(const TorusAction& a, const ConePoint& cp, const Vec& alg, const Vec& v, double scale = 1.0) {
  const Vec w = cp.ambient();
  auto lambda = [](const auto& q, const Vec& dir) {
    auto iq = complex_mult(q);
    auto acc = iq[0] * dir[0];
    for (std::size_t i = 1; i < iq.size(); ++i) acc += iq[i] * dir[static_cast<Eigen::Index>(i)];
    return acc;
  };
  const Vec x = a.fundamental_field(alg, w);
  // U(lambda(V)) - V(lambda(U)); the bracket of constant fields vanishes.
  const double dl = lambda(jet_line(w, x), v).d1 - lambda(jet_line(w, v), x).d1;
  ConeFormCheck c;
  c.contraction = -scale * dl;
  const Vec cw = a.coordinate_weights(alg);
  auto h = [&](const JVec<Jet2d>& q) {
    auto m = moduli_squared(q);
    Jet2d acc(0.0);
    for (std::size_t j = 0; j < m.size(); ++j) acc += cw[static_cast<Eigen::Index>(j)] * m[j];
    return acc;
  };
  c.hamiltonian = scale * h(jet_line(w, v)).d1;
  return c;
}

// Phi at a cone point, through the kernel basis (iota^t J_s) and through the
// momentum of the restricted action.
struct IotaTransposeCheck {
  Vec via_pairing;
  Vec via_restriction;
  double residual = 0.0;
};

inline IotaTransposeCheck iota_transpose_check(const TorusAction& a, const MomentumCovector& mu, const ConePoint& cp) {
  const KernelAlgebra ka = kernel_algebra(mu);
  IotaTransposeCheck c;
  c.via_pairing = ka.basis * symplectic_momentum(a, cp);
  c.via_restriction = symplectic_momentum(a.restricted(ka.basis), cp);
  c.residual = c.via_pairing.size() ? (c.via_pairing - c.via_restriction).cwiseAbs().maxCoeff() : 0.0;
  return c;
}

inline Vec kernel_momentum(const TorusAction& a, const MomentumCovector& mu, const ConePoint& cp) {
  return kernel_algebra(mu).basis * symplectic_momentum(a, cp);
}

enum class StratumLabel { Positive, Zero, Negative };

inline std::string to_string(StratumLabel l) {
  switch (l) {
    case StratumLabel::Positive: return "positive_stratum";
    case StratumLabel::Zero: return "zero_stratum";
    case StratumLabel::Negative: return "negative_stratum";
  }
  return "?";
}

inline constexpr double kPhiZeroTol = 1e-9;

struct StratumCensus {
  std::size_t positive = 0, zero = 0, negative = 0;
  std::vector<StratumLabel> labels;
  double max_ray_residual = 0.0;
  std::size_t total() const { return positive + zero + negative; }
};

inline StratumLabel classify_phi_zero(const TorusAction& a, const MomentumCovector& mu, const Vec& p, double tol = kRayTol) {
  const Vec j = a.momentum(p);
  RayMembership m = ray_membership(j, mu, tol);
  switch (m.cls) {
    case RayClass::Positive: return StratumLabel::Positive;
    case RayClass::Zero: return StratumLabel::Zero;
    case RayClass::Negative: return StratumLabel::Negative;
    case RayClass::Outside: break;
  }
  throw Error(ErrorKind::StratificationLeak,
              "Phi-zero sample off the line R mu, residual " + std::to_string(m.residual));
}

inline StratumCensus stratify(const TorusAction& a, const MomentumCovector& mu, const std::vector<Vec>& samples, double tol = kRayTol) {
  const Mat kb = kernel_algebra(mu).basis;
  StratumCensus c;
  for (const auto& p : samples) {
    const double phi = kb.rows() ? (kb * a.momentum(p)).cwiseAbs().maxCoeff() : 0.0;
    if (phi > kPhiZeroTol) throw Error(ErrorKind::ValidationError, "stratify: sample is not in the zero set of Phi");
    const RayMembership m = ray_membership(a.momentum(p), mu, tol);
    c.max_ray_residual = std::max(c.max_ray_residual, m.residual);
    StratumLabel l = classify_phi_zero(a, mu, p, tol);
    c.labels.push_back(l);
    (l == StratumLabel::Positive ? c.positive : l == StratumLabel::Zero ? c.zero : c.negative)++;
  }
  return c;
}

// Samples of Phi^{-1}(0) on the sphere: index i draws from the positive ray,
// the zero level or the negative ray by i mod 3, skipping empty pieces.
struct PhiZeroSample {
  Vec point;
  StratumLabel piece;
};

inline std::vector<PhiZeroSample> sample_phi_zero(const TorusAction& a, const MomentumCovector& mu, std::size_t count, std::uint64_t seed) {
  const StratumLabel order[3] = {StratumLabel::Positive, StratumLabel::Zero, StratumLabel::Negative};
  ReductionSetup setups[3];
  bool live[3] = {false, false, false};
  for (int k = 0; k < 3; ++k) {
    try {
      setups[k] = k == 0 ? willett_setup(a, mu) : k == 1 ? zero_level_setup(a) : willett_setup(a, MomentumCovector(Vec(-mu.mu)));
      ModuliPolytope poly = setups[k].level_polytope();
      const Vec dir = a.weights().transpose() * setups[k].mu.mu_unit;
      live[k] = !poly.empty() && (k == 1 || poly.max_along(dir) > kMinRayParameter);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EmptyLevelSet) throw;
    }
  }
  if (!live[0] && !live[1] && !live[2]) throw Error(ErrorKind::EmptyLevelSet, "Phi^{-1}(0) is empty");
  std::size_t want[3] = {0, 0, 0};
  std::vector<int> piece_of(count);
  for (std::size_t i = 0; i < count; ++i) {
    int k = static_cast<int>(i % 3);
    while (!live[k]) k = (k + 1) % 3;
    piece_of[i] = k;
    ++want[k];
  }
  std::vector<LevelSetSample> drawn[3];
  for (int k = 0; k < 3; ++k)
    if (want[k]) drawn[k] = sample_level_set(setups[k], want[k], splitmix64(seed + static_cast<std::uint64_t>(k)));
  std::size_t used[3] = {0, 0, 0};
  std::vector<PhiZeroSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const int k = piece_of[i];
    out.push_back({drawn[k][used[k]++].point, order[k]});
  }
  return out;
}

// Kernel dimension of d eta on the horizontal contact directions of a level-set
// point (zero stratum: degenerate; positive stratum: zero).
struct DegeneracyReport {
  Mat d_eta;
  Vec singular_values;
  Eigen::Index kernel_dim = 0;
  double antisymmetry = 0.0;
};

inline DegeneracyReport zero_stratum_degeneracy(const LevelSetPoint& lp, const ReductionFrame& f) {
  DegeneracyReport r;
  const auto& st = lp.tensors().structure();
  if (f.contactD.empty()) return r;
  r.d_eta = d_eta_matrix(st, lp.point(), f.contactD.matrix());
  r.antisymmetry = (r.d_eta + r.d_eta.transpose()).cwiseAbs().maxCoeff();
  r.singular_values = singular_values(r.d_eta);
  const double scale = std::max(1.0, r.singular_values.size() ? r.singular_values[0] : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < r.singular_values.size(); ++i) rank += r.singular_values[i] > kRankRelTol * scale;
  r.kernel_dim = r.d_eta.cols() - rank;
  return r;
}

}  // namespace sasred
