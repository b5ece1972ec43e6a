#include "fhd/diagnostics.hpp"

#include <cmath>
#include <string>

#include "fhd/error.hpp"
#include "fhd/quadrature.hpp"

namespace fhd {

namespace {

constexpr std::array<std::string_view, kErrorColumns> kColumnNames{
    "u_L2", "u_H1", "p_L2", "m_L2", "divm_L2", "H_L2",
    "divH_L2", "z_L2", "k_L2", "omega_L2", "omega_H1", "phi_L2"};

double squared_op(const PointValue& v, SpaceKind kind, Op op) {
  const bool scalar = !is_vector_valued(kind);
  switch (op) {
    case Op::Value: return scalar ? v.value.x() * v.value.x() : v.value.squaredNorm();
    case Op::Grad: return scalar ? v.grad.row(0).squaredNorm() : v.grad.squaredNorm();
    case Op::Curl: return v.curl.squaredNorm();
    case Op::Div: return v.div * v.div;
  }
  return 0.0;
}

/// Accumulates integral of integrand(cell, geo, bary, x) * weight.
template <typename F>
void integrate(const Mesh& mesh, int degree, F&& f) {
  const auto& rule = tet_rule(degree);
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry geo = cell_geometry(mesh, c);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double w = 6.0 * geo.volume * rule.weights[q];
      f(c, geo, rule.points[q], geo.point(rule.points[q]), w);
    }
  }
}

double ratio(double err2, double ref2) {
  if (!(ref2 > 0.0))
    throw InvalidArgument("exact solution has zero norm; relative error undefined");
  return std::sqrt(std::max(err2, 0.0) / ref2);
}

void check_pairs(std::span<const double> h, std::span<const double> e) {
  if (h.size() != e.size()) throw InvalidArgument("mesh sizes and errors differ in length");
  if (h.size() < 2) throw InvalidArgument("at least two (h, error) pairs required");
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(e[i] > 0.0)) throw InvalidArgument("errors must be positive");
    if (!(h[i] > 0.0)) throw InvalidArgument("mesh sizes must be positive");
  }
}

}  // namespace

double DissipationBreakdown::total() const {
  return velocity_gradient + angular_gradient + angular_div + magnetization +
         field + magnetization_div + curl_m + field_div + micropolar;
}

double field_dissipation_coefficient(const ModelParams& p) {
  return (p.chi0 + p.mu0 * (1.0 + p.chi0)) / p.tau;
}

double squared_norm(const FeFunction& f, const DofMap& dofs, const Mesh& mesh,
                    Op op) {
  if (f.kind != dofs.kind) throw InvalidArgument("squared_norm: space mismatch");
  const FieldSampler s(f, dofs);
  double sum = 0.0;
  integrate(mesh, 2 * op_degree(dofs.kind, op),
            [&](Index c, const CellGeometry& geo, const Eigen::Vector4d& b,
                const Eigen::Vector3d&, double w) {
              sum += w * squared_op(s.at(c, geo, b), dofs.kind, op);
            });
  return sum;
}

EnergyBreakdown energy(const State& s, const Discretization& d,
                       const ModelParams& p) {
  EnergyBreakdown e;
  e.velocity = p.rho * squared_norm(s.u, d.velocity, d.mesh);
  e.angular = p.rho * p.kappa * squared_norm(s.omega, d.angular, d.mesh);
  e.magnetization = squared_norm(s.m, d.magnetization, d.mesh);
  e.field = p.mu0 * squared_norm(s.H, d.field, d.mesh);
  return e;
}

DissipationBreakdown dissipation(const State& s, const Discretization& d,
                                 const ModelParams& p) {
  DissipationBreakdown f;
  const Mesh& mesh = d.mesh;
  f.velocity_gradient = p.eta * squared_norm(s.u, d.velocity, mesh, Op::Grad);
  f.angular_gradient = p.eta_p * squared_norm(s.omega, d.angular, mesh, Op::Grad);
  f.angular_div =
      (p.eta_p + p.lambda_p) * squared_norm(s.omega, d.angular, mesh, Op::Div);
  f.magnetization = squared_norm(s.m, d.magnetization, mesh) / p.tau;
  f.field = field_dissipation_coefficient(p) * squared_norm(s.H, d.field, mesh);
  f.magnetization_div = p.sigma * squared_norm(s.m, d.magnetization, mesh, Op::Div);
  f.curl_m = p.sigma * squared_norm(s.k, d.edge, mesh);
  f.field_div = p.mu0 * p.sigma * squared_norm(s.H, d.field, mesh, Op::Div);

  const FieldSampler us(s.u, d.velocity), ws(s.omega, d.angular);
  double micro = 0.0;
  integrate(mesh, 2 * op_degree(SpaceKind::VelocityMINI, Op::Curl),
            [&](Index c, const CellGeometry& geo, const Eigen::Vector4d& b,
                const Eigen::Vector3d&, double w) {
              const Eigen::Vector3d r =
                  us.at(c, geo, b).curl - 2.0 * ws.at(c, geo, b).value;
              micro += w * r.squaredNorm();
            });
  f.micropolar = p.zeta * micro;
  return f;
}

EnergyRecord energy_record(const State& s, const Discretization& d,
                           const ModelParams& p) {
  return {s.step, s.t, energy(s, d, p), dissipation(s, d, p)};
}

std::string_view column_name(ErrorColumn c) {
  return kColumnNames[static_cast<std::size_t>(c)];
}

std::string_view column_name(int c) {
  if (c < 0 || c >= kErrorColumns) throw InvalidArgument("no such error column");
  return kColumnNames[static_cast<std::size_t>(c)];
}

ErrorRecord errors(const State& s, const Discretization& d,
                   const Manufactured& exact, double t) {
  if (!exact.has_exact_solution())
    throw InvalidArgument("example has no exact solution to compare against");
  if (s.t != t && std::abs(s.t - t) > 1e-12 * std::max(1.0, std::abs(t)))
    throw InvalidArgument("state time does not match the evaluation time");

  const FieldSampler us(s.u, d.velocity), ps(s.p, d.pressure),
      ws(s.omega, d.angular), ms(s.m, d.magnetization), zs(s.z, d.edge),
      ks(s.k, d.edge), hs(s.H, d.field), fs(s.phi, d.potential);

  ErrorRecord err{}, ref{};
  double phi_err_int = 0.0, phi_ref_int = 0.0, volume = 0.0;
  const auto add = [&](ErrorColumn c, double e2, double r2, double w) {
    err[static_cast<std::size_t>(c)] += w * e2;
    ref[static_cast<std::size_t>(c)] += w * r2;
  };
  integrate(d.mesh, kErrorQuadratureDegree,
            [&](Index c, const CellGeometry& geo, const Eigen::Vector4d& b,
                const Eigen::Vector3d& x, double w) {
              const VectorJet u = exact.velocity(x, t);
              const ScalarJet p = exact.pressure(x, t);
              const VectorJet om = exact.angular(x, t);
              const VectorJet m = exact.magnetization(x, t);
              const VectorJet H = exact.demag_field(x, t);
              const ScalarJet phi = exact.potential(x, t);
              const Eigen::Vector3d z = u.value.cross(m.value);
              const Eigen::Vector3d k = m.curl();

              const PointValue uh = us.at(c, geo, b), ph = ps.at(c, geo, b),
                               wh = ws.at(c, geo, b), mh = ms.at(c, geo, b),
                               zh = zs.at(c, geo, b), kh = ks.at(c, geo, b),
                               hh = hs.at(c, geo, b), fh = fs.at(c, geo, b);

              using E = ErrorColumn;
              add(E::VelocityL2, (u.value - uh.value).squaredNorm(),
                  u.value.squaredNorm(), w);
              add(E::VelocityH1, (u.grad - uh.grad).squaredNorm(),
                  u.grad.squaredNorm(), w);
              add(E::Pressure, std::pow(p.value - ph.value.x(), 2),
                  p.value * p.value, w);
              add(E::MagnetizationL2, (m.value - mh.value).squaredNorm(),
                  m.value.squaredNorm(), w);
              add(E::MagnetizationDiv, std::pow(m.div() - mh.div, 2),
                  m.div() * m.div(), w);
              add(E::FieldL2, (H.value - hh.value).squaredNorm(),
                  H.value.squaredNorm(), w);
              add(E::FieldDiv, std::pow(H.div() - hh.div, 2), H.div() * H.div(), w);
              add(E::Z, (z - zh.value).squaredNorm(), z.squaredNorm(), w);
              add(E::K, (k - kh.value).squaredNorm(), k.squaredNorm(), w);
              add(E::AngularL2, (om.value - wh.value).squaredNorm(),
                  om.value.squaredNorm(), w);
              add(E::AngularH1, (om.grad - wh.grad).squaredNorm(),
                  om.grad.squaredNorm(), w);
              const double pe = phi.value - fh.value.x();
              add(E::Potential, pe * pe, phi.value * phi.value, w);
              phi_err_int += w * pe;
              phi_ref_int += w * phi.value;
              volume += w;
            });
  // The discrete potential is determined up to a constant.
  const auto ip = static_cast<std::size_t>(ErrorColumn::Potential);
  err[ip] -= phi_err_int * phi_err_int / volume;
  ref[ip] -= phi_ref_int * phi_ref_int / volume;

  ErrorRecord out{};
  for (int i = 0; i < kErrorColumns; ++i) out[i] = ratio(err[i], ref[i]);
  return out;
}

double convergence_order(std::span<const double> h,
                         std::span<const double> error) {
  check_pairs(h, error);
  const std::size_t n = h.size();
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += std::log(h[i]);
    sy += std::log(error[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(h[i]) - mx;
    sxy += dx * (std::log(error[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw InvalidArgument("mesh sizes must differ");
  return sxy / sxx;
}

double last_pair_order(std::span<const double> h,
                       std::span<const double> error) {
  check_pairs(h, error);
  const std::size_t n = h.size();
  const double dx = std::log(h[n - 1]) - std::log(h[n - 2]);
  if (dx == 0.0) throw InvalidArgument("mesh sizes must differ");
  return (std::log(error[n - 1]) - std::log(error[n - 2])) / dx;
}

}  // namespace fhd
