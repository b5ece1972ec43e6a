#ifndef FHD_TESTS_MMS_ORACLE_HPP
#define FHD_TESTS_MMS_ORACLE_HPP

// Independent oracle for the manufactured solutions: forward-mode automatic
// differentiation of the closed-form profiles and the strong residuals of
// the model equations.

#include <array>
#include <cmath>
#include <random>

#include <Eigen/Core>
#include <unsupported/Eigen/AutoDiff>

#include "fhd/mms.hpp"

namespace fhd::oracle {

using Eigen::Matrix3d;
using Eigen::Vector3d;

using Inner = Eigen::AutoDiffScalar<Eigen::Vector3d>;
using Outer = Eigen::AutoDiffScalar<Eigen::Matrix<Inner, 3, 1>>;

// Seeds a point for second-order forward differentiation.
inline Vec3<Outer> seed(const Vector3d& x) {
  Vec3<Outer> v;
  for (int i = 0; i < 3; ++i) {
    Inner xi(x(i), 3, i);
    Eigen::Matrix<Inner, 3, 1> d;
    for (int j = 0; j < 3; ++j) d(j) = Inner(i == j ? 1.0 : 0.0, Vector3d::Zero());
    v(i) = Outer(xi, d);
  }
  return v;
}

struct AdScalar {
  double value;
  Vector3d grad;
  Matrix3d hess;
};

inline AdScalar unpack(const Outer& s) {
  AdScalar r{s.value().value(), s.value().derivatives(), Matrix3d::Zero()};
  for (int j = 0; j < 3; ++j) r.hess.row(j) = s.derivatives()(j).derivatives().transpose();
  return r;
}

template <typename F>
SpatialVectorJet ad_vector_jet(F f, const Vector3d& x) {
  const Vec3<Outer> v = f(seed(x));
  SpatialVectorJet j;
  std::array<Matrix3d, 3> hess;
  for (int r = 0; r < 3; ++r) {
    const AdScalar s = unpack(v(r));
    j.value(r) = s.value;
    j.grad.row(r) = s.grad.transpose();
    j.laplacian(r) = s.hess.trace();
    hess[r] = s.hess;
  }
  for (int i = 0; i < 3; ++i) j.grad_div(i) = hess[0](i, 0) + hess[1](i, 1) + hess[2](i, 2);
  return j;
}

template <typename F>
SpatialScalarJet ad_scalar_jet(F f, const Vector3d& x) {
  const AdScalar s = unpack(f(seed(x)));
  return {s.value, s.grad, s.hess.trace()};
}

inline const auto U = [](const auto& x) { return profile::velocity(x); };
inline const auto W = [](const auto& x) { return profile::rotation(x); };
inline const auto Mg = [](const auto& x) { return profile::magnetization(x); };
inline const auto Hf = [](const auto& x) { return profile::field(x); };
inline const auto P = [](const auto& x) { return profile::pressure(x); };
inline const auto Phi = [](const auto& x) { return profile::potential(x); };

inline Vector3d curl_of(const Matrix3d& g) {
  return {g(2, 1) - g(1, 2), g(0, 2) - g(2, 0), g(1, 0) - g(0, 1)};
}

struct Sampler {
  std::mt19937 gen{20240611};
  std::uniform_real_distribution<double> unit{0.02, 0.98};
  Vector3d point() { return {unit(gen), unit(gen), unit(gen)}; }
  double time(double T) { return T * unit(gen); }
  ModelParams params() {
    std::uniform_real_distribution<double> d(0.5, 2.0);
    ModelParams p;
    p.rho = d(gen); p.kappa = d(gen); p.eta = d(gen); p.zeta = d(gen); p.mu0 = d(gen);
    p.sigma = d(gen); p.eta_p = d(gen); p.lambda_p = d(gen); p.tau = d(gen); p.chi0 = d(gen);
    return p;
  }
};

inline double rel(const Vector3d& a, const Vector3d& b) { return (a - b).norm() / (1.0 + b.norm()); }

/// Strong residuals of each equation with the generated forcing, relative
/// to the size of the balanced terms.
struct StrongResiduals {
  double momentum = 0.0;
  double angular = 0.0;
  double magnetization = 0.0;
  double gauss = 0.0;
  double divergence = 0.0;

  double max() const {
    return std::max({momentum, angular, magnetization, gauss, divergence});
  }
};

inline StrongResiduals strong_residuals(const Manufactured& m, const ModelParams& p,
                                        const Vector3d& x, double t) {
  const double g = m.time_factor(t), dg = m.time_factor_dt(t);
  const SpatialVectorJet u = ad_vector_jet(U, x), w = ad_vector_jet(W, x),
                         mg = ad_vector_jet(Mg, x), hf = ad_vector_jet(Hf, x);
  const SpatialScalarJet pr = ad_scalar_jet(P, x);
  StrongResiduals r;

  // linear momentum with p = p~ + mu0/2 m.H
  const Vector3d grad_p =
      pr.grad + 0.5 * p.mu0 * g * g * (mg.grad.transpose() * hf.value + hf.grad.transpose() * mg.value);
  const Vector3d lhs_u = p.rho * (dg * u.value + g * g * u.grad * u.value) -
                         (p.eta + p.zeta) * g * u.laplacian + grad_p;
  const Vector3d rhs_u = p.mu0 * g * g * hf.grad * mg.value + 2 * p.zeta * g * curl_of(w.grad);
  r.momentum = (lhs_u - rhs_u - m.momentum_forcing(x, t)).norm() /
               (1 + lhs_u.norm() + rhs_u.norm());

  // angular momentum
  const Vector3d lhs_w = p.rho * p.kappa * (dg * w.value + g * g * w.grad * u.value) -
                         p.eta_p * g * w.laplacian - (p.eta_p + p.lambda_p) * g * w.grad_div;
  const Vector3d rhs_w = p.mu0 * g * g * mg.value.cross(hf.value) +
                         2 * p.zeta * g * (curl_of(u.grad) - 2 * w.value);
  r.angular = (lhs_w - rhs_w - m.angular_forcing(x, t)).norm() /
              (1 + lhs_w.norm() + rhs_w.norm());

  // magnetization
  const Vector3d lhs_m = dg * mg.value + g * g * mg.grad * u.value - p.sigma * g * mg.laplacian;
  const Vector3d rhs_m = g * g * w.value.cross(mg.value) - g / p.tau * (mg.value - p.chi0 * hf.value);
  r.magnetization = (lhs_m - rhs_m - m.magnetization_forcing(x, t)).norm() /
                    (1 + lhs_m.norm() + rhs_m.norm());

  // magnetostatics: mu0 div(H + m) = -div He
  const double gauss = p.mu0 * g * (hf.div() + mg.div());
  r.gauss = std::abs(gauss + m.gauss_forcing(x, t)) / (1 + std::abs(gauss));

  r.divergence = std::abs(u.div());
  return r;
}

/// Largest relative mismatch between the analytic time and space
/// derivatives of the exact fields and central differences with step h.
inline double finite_difference_defect(const Manufactured& m, const Vector3d& x, double t,
                                       double h = 1e-5) {
  double worst = 0.0;
  auto track = [&](double err, double scale) { worst = std::max(worst, err / (1 + scale)); };
  using JetFn = VectorJet (Manufactured::*)(const Vector3d&, double) const;
  for (JetFn fn : {static_cast<JetFn>(&Manufactured::velocity), static_cast<JetFn>(&Manufactured::angular),
                   static_cast<JetFn>(&Manufactured::magnetization),
                   static_cast<JetFn>(&Manufactured::demag_field)}) {
    const VectorJet j = (m.*fn)(x, t);
    const Vector3d dt = ((m.*fn)(x, t + h).value - (m.*fn)(x, t - h).value) / (2 * h);
    track((dt - j.dt).norm(), j.dt.norm());
    Matrix3d fd;
    Vector3d lap = Vector3d::Zero(), gd = Vector3d::Zero();
    for (int c = 0; c < 3; ++c) {
      const Vector3d e = h * Vector3d::Unit(c);
      const VectorJet jp = (m.*fn)(x + e, t), jm = (m.*fn)(x - e, t);
      fd.col(c) = (jp.value - jm.value) / (2 * h);
      const Matrix3d dgrad = (jp.grad - jm.grad) / (2 * h);
      lap += dgrad.col(c);
      gd(c) = dgrad.trace();
    }
    track((fd - j.grad).norm(), j.grad.norm());
    track((lap - j.laplacian).norm(), j.laplacian.norm());
    track((gd - j.grad_div).norm(), j.grad_div.norm());
  }
  const ScalarJet phi = m.potential(x, t);
  Vector3d gfd;
  for (int c = 0; c < 3; ++c) {
    const Vector3d e = h * Vector3d::Unit(c);
    gfd(c) = (m.potential(x + e, t).value - m.potential(x - e, t).value) / (2 * h);
  }
  track((gfd - phi.grad).norm(), phi.grad.norm());
  return worst;
}

}  // namespace fhd::oracle

#endif  // FHD_TESTS_MMS_ORACLE_HPP
