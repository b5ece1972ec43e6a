#include "fhd/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <optional>
#include <string>

#include "fhd/error.hpp"
#include "fhd/mms.hpp"

namespace fhd {

namespace {

FeFunction with_coeffs(const DofMap& dofs, Vector coeffs, double t) {
  FeFunction f{dofs.kind, std::move(coeffs), t};
  if (f.coeffs.size() != dofs.n_dofs)
    throw InternalError("coefficient vector does not match its space");
  return f;
}

void require_space(const FeFunction& f, const DofMap& dofs, const char* what) {
  if (f.kind != dofs.kind || f.coeffs.size() != dofs.n_dofs)
    throw InvalidArgument(std::string(what) + " does not live in the " +
                          std::string(to_string(dofs.kind)) + " space");
}

Vector padded(const Vector& w, Index offset, Index total) {
  Vector out = Vector::Zero(total);
  out.segment(offset, w.size()) = w;
  return out;
}

/// Residual of r restricted to the orthogonal complement of w.
double projected_norm(const Vector& r, const Vector& w) {
  const double ww = w.squaredNorm();
  if (ww == 0.0) return r.norm();
  return (r - w * (w.dot(r) / ww)).norm();
}

Vector free_rows(const DofMap& dofs, const Vector& full) {
  return gather_free(dofs, full);
}

FeFunction lift_free(const DofMap& dofs, const Vector& free, double t) {
  Vector full = Vector::Zero(dofs.n_dofs);
  scatter_free(dofs, free, full);
  return with_coeffs(dofs, std::move(full), t);
}

// Relative change of the unknowns solved together in one block, so that
// a field much smaller than its block partners is not judged on solver
// round-off alone.
double relative_change(
    std::initializer_list<std::pair<const FeFunction*, const FeFunction*>> block) {
  double n = 0.0, d = 0.0;
  for (auto [now, before] : block) {
    n += now->coeffs.squaredNorm();
    d += (now->coeffs - before->coeffs).squaredNorm();
  }
  return n == 0.0 ? std::sqrt(d) : std::sqrt(d / n);
}

}  // namespace

Discretization::Discretization(int K, DiscretizationOptions opts)
    : options(opts), mesh(build_uniform_mesh(K)) {
  velocity = build_dofmap(SpaceKind::VelocityMINI, mesh);
  pressure = build_dofmap(SpaceKind::PressureP1, mesh);
  angular = build_dofmap(SpaceKind::AngularP1, mesh);
  magnetization = build_dofmap(SpaceKind::FaceRT0, mesh);
  edge = build_dofmap(SpaceKind::EdgeNE0, mesh, opts.edge_trace);
  field = build_dofmap(SpaceKind::FaceRT0, mesh, opts.field_trace);
  potential = build_dofmap(SpaceKind::ConstP0, mesh);
}

State zero_state(const Discretization& d) {
  State s;
  s.u = zero_function(d.velocity);
  s.p = zero_function(d.pressure);
  s.omega = zero_function(d.angular);
  s.m = zero_function(d.magnetization);
  s.z = zero_function(d.edge);
  s.k = zero_function(d.edge);
  s.H = zero_function(d.field);
  s.phi = zero_function(d.potential);
  return s;
}

Sources example_sources(int example, const ModelParams& params) {
  Sources s;
  if (example == 0) return s;
  const Manufactured mf(example, params);
  const auto initial = [mf](ExactField f) -> VectorField {
    return [mf, f](const Eigen::Vector3d& x, double) {
      return mf.value(f, x, 0.0);
    };
  };
  s.u0 = initial(ExactField::Velocity);
  s.omega0 = initial(ExactField::Angular);
  s.m0 = initial(ExactField::Magnetization);
  if (mf.has_exact_solution()) {
    s.f_u = mf.forcing_field(Equation::Momentum);
    s.f_omega = mf.forcing_field(Equation::Angular);
    s.f_m = mf.forcing_field(Equation::Magnetization);
    s.div_he = mf.div_he_field();
    s.u_boundary = mf.vector_field(ExactField::Velocity);
  }
  return s;
}

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("params", e.what());
  }
  if (K < 1) throw ConfigError("k", "mesh subdivisions must be >= 1");
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw ConfigError("dt", "time step must be positive");
  if (!(T > 0.0) || !std::isfinite(T))
    throw ConfigError("T", "final time must be positive");
  const double n = T / dt;
  if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n))
    throw ConfigError("dt", "T not an integer multiple of dt");
  if (sweeps < 1) throw ConfigError("sweeps", "at least one sweep required");
  if (example < 0 || example > 3)
    throw ConfigError("example", "unknown example id " + std::to_string(example));
  if (!(solver.tol > 0.0)) throw ConfigError("solver_tol", "must be positive");
}

int RunConfig::num_steps() const {
  return static_cast<int>(std::lround(T / dt));
}

// ---------------------------------------------------------------------------

struct Stepper::Impl {
  Sources src;
  SolverOptions solver;

  // Constant matrices over all DoFs.
  SparseMatrix velocity_mass, ns_matrix, pressure_div;
  SparseMatrix angular_mass;
  SparseMatrix mag_mass, mag_divdiv, curl_pairing, edge_mass;
  SparseMatrix field_potential, mag_potential;

  // Free blocks of the constant magnetization couplings.
  SparseMatrix mm_const, mz_block, km_block, ee_mass;

  std::optional<Factorization> ns_lu, angular_lu, magnetostatic_lu;
  mutable std::optional<Factorization> mag_lu;

  // Source loads are reused by every sweep of a step.
  struct Loads {
    double t = 0.0;
    bool valid = false;
    Vector f_u, f_omega, f_m, div_he;
  };
  mutable Loads loads;

  const Loads& loads_at(const Discretization& d, double t) const {
    if (loads.valid && loads.t == t) return loads;
    const auto vec = [&](const VectorField& f, const DofMap& dofs) {
      return f ? assemble_load(f, dofs, d.mesh, t) : Vector();
    };
    loads.f_u = vec(src.f_u, d.velocity);
    loads.f_omega = vec(src.f_omega, d.angular);
    loads.f_m = vec(src.f_m, d.magnetization);
    loads.div_he = src.div_he ? assemble_load(src.div_he, d.potential, d.mesh, t)
                              : Vector();
    loads.t = t;
    loads.valid = true;
    return loads;
  }

  Index nu = 0, np = 0, nH = 0, nphi = 0, nm = 0, ne = 0;
};

Stepper::Stepper(const Discretization& disc, const ModelParams& params,
                 double dt, Sources sources, SolverOptions solver)
    : disc_(disc), params_(params), dt_(dt), impl_(std::make_unique<Impl>()) {
  params_.validate();
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  Impl& I = *impl_;
  I.src = std::move(sources);
  I.solver = solver;
  const Mesh& mesh = disc.mesh;
  const ModelParams& p = params_;

  // Navier-Stokes: rho M + dt eta K + dt zeta CC, pressure coupling.
  I.velocity_mass = assemble_bilinear(FormKind::Mass, disc.velocity, disc.velocity, mesh);
  const SparseMatrix vk = assemble_bilinear(FormKind::GradGrad, disc.velocity, disc.velocity, mesh);
  const SparseMatrix vc = assemble_bilinear(FormKind::CurlCurl, disc.velocity, disc.velocity, mesh);
  I.ns_matrix = p.rho * I.velocity_mass + dt * p.eta * vk + dt * p.zeta * vc;
  I.pressure_div = assemble_bilinear(FormKind::PressureDiv, disc.pressure, disc.velocity, mesh);
  {
    const SparseMatrix A = free_block(I.ns_matrix, disc.velocity, disc.velocity);
    const SparseMatrix B = SparseMatrix(
        -dt * free_block(I.pressure_div, disc.pressure, disc.velocity));
    const SparseMatrix Bt = B.transpose();
    I.nu = A.rows();
    I.np = B.cols();
    const SparseMatrix S = block_matrix({{&A, &B}, {&Bt, nullptr}});
    const Vector w = padded(disc.pressure.mean_weights, I.nu, I.nu + I.np);
    I.ns_lu.emplace(border(S, {w}), solver);
  }

  // Angular momentum.
  I.angular_mass = assemble_bilinear(FormKind::Mass, disc.angular, disc.angular, mesh);
  {
    const SparseMatrix ak = assemble_bilinear(FormKind::GradGrad, disc.angular, disc.angular, mesh);
    const SparseMatrix ad = assemble_bilinear(FormKind::DivDiv, disc.angular, disc.angular, mesh);
    const SparseMatrix A = (p.rho * p.kappa + 4.0 * p.zeta * dt) * I.angular_mass +
                           p.eta_p * dt * ak + (p.eta_p + p.lambda_p) * dt * ad;
    I.angular_lu.emplace(free_block(A, disc.angular, disc.angular), solver);
  }

  // Magnetostatics: (H, G) + (phi, div G) = 0, (div H, r) = rhs.
  I.field_potential = assemble_bilinear(FormKind::PotentialDiv, disc.potential, disc.field, mesh);
  I.mag_potential = assemble_bilinear(FormKind::PotentialDiv, disc.potential, disc.magnetization, mesh);
  {
    const SparseMatrix fm = assemble_bilinear(FormKind::Mass, disc.field, disc.field, mesh);
    const SparseMatrix A = free_block(fm, disc.field, disc.field);
    const SparseMatrix B = free_block(I.field_potential, disc.potential, disc.field);
    const SparseMatrix Bt = B.transpose();
    I.nH = A.rows();
    I.nphi = B.cols();
    const SparseMatrix S = block_matrix({{&A, &B}, {&Bt, nullptr}});
    std::vector<Vector> w;
    if (disc.options.field_trace != BoundaryTrace::Free)
      w.push_back(padded(disc.potential.mean_weights, I.nH, I.nH + I.nphi));
    I.magnetostatic_lu.emplace(border(S, w), solver);
  }

  // Magnetization: constant blocks.
  I.mag_mass = assemble_bilinear(FormKind::Mass, disc.magnetization, disc.magnetization, mesh);
  I.mag_divdiv = assemble_bilinear(FormKind::DivDiv, disc.magnetization, disc.magnetization, mesh);
  I.curl_pairing = assemble_bilinear(FormKind::CurlPairing, disc.edge, disc.magnetization, mesh);
  I.edge_mass = assemble_bilinear(FormKind::Mass, disc.edge, disc.edge, mesh);
  I.mm_const = free_block(SparseMatrix((1.0 + dt / p.tau) * I.mag_mass +
                                       p.sigma * dt * I.mag_divdiv),
                          disc.magnetization, disc.magnetization);
  I.mz_block = free_block(SparseMatrix(-0.5 * dt * I.curl_pairing), disc.edge,
                          disc.magnetization);
  I.km_block = SparseMatrix(
      -free_block(I.curl_pairing, disc.edge, disc.magnetization).transpose());
  I.ee_mass = free_block(I.edge_mass, disc.edge, disc.edge);
  I.nm = I.mm_const.rows();
  I.ne = I.ee_mass.rows();
}

Stepper::~Stepper() = default;
Stepper::Stepper(Stepper&&) noexcept = default;

State Stepper::initialize() const {
  const Discretization& d = disc_;
  const Sources& src = impl_->src;
  State s = zero_state(d);
  if (src.u0) {
    s.u = interpolate(d.velocity, d.mesh, src.u0, 0.0);
    if (!src.u_boundary) clear_constrained(d.velocity, s.u);
  }
  if (src.omega0) {
    s.omega = interpolate(d.angular, d.mesh, src.omega0, 0.0);
    clear_constrained(d.angular, s.omega);
  }
  if (src.m0) {
    s.m = interpolate(d.magnetization, d.mesh, src.m0, 0.0);
    clear_constrained(d.magnetization, s.m);
  }
  for (FeFunction* f : {&s.u, &s.p, &s.omega, &s.m, &s.z, &s.k, &s.H, &s.phi})
    f->time = 0.0;
  std::tie(s.H, s.phi) = magnetostatic_step(s.m, 0.0);
  return s;
}

std::pair<FeFunction, FeFunction> Stepper::magnetostatic_step(
    const FeFunction& m, double t) const {
  const Discretization& d = disc_;
  const Impl& I = *impl_;
  require_space(m, d.magnetization, "m");
  // mu0 (div H, r) = -(div He, r) - mu0 (div m, r), divided by mu0.
  Vector r = -(I.mag_potential.transpose() * m.coeffs);
  if (I.src.div_he) r -= I.loads_at(d, t).div_he / params_.mu0;
  const Index n = I.magnetostatic_lu->rows();
  Vector b = Vector::Zero(n);
  b.segment(I.nH, I.nphi) = r;
  if (b.isZero(0.0))
    return {zero_function(d.field), zero_function(d.potential)};
  const Vector x = I.magnetostatic_lu->solve(b);
  FeFunction H = lift_free(d.field, x.head(I.nH), t);
  FeFunction phi = with_coeffs(d.potential, x.segment(I.nH, I.nphi), t);
  return {std::move(H), std::move(phi)};
}

FeFunction Stepper::angular_step(const FeFunction& u_minus,
                                 const FeFunction& omega_minus,
                                 const FeFunction& omega_prev,
                                 const FeFunction& m_minus,
                                 const FeFunction& H, double t) const {
  const Discretization& d = disc_;
  const Impl& I = *impl_;
  const ModelParams& p = params_;
  require_space(u_minus, d.velocity, "u-");
  require_space(omega_minus, d.angular, "omega-");
  require_space(omega_prev, d.angular, "omega^{n-1}");
  require_space(m_minus, d.magnetization, "m-");
  require_space(H, d.field, "H");

  const FieldSampler us(u_minus, d.velocity), ws(omega_minus, d.angular),
      ms(m_minus, d.magnetization), hs(H, d.field);
  const double rk = p.rho * p.kappa;
  Vector rhs = rk * (I.angular_mass * omega_prev.coeffs);
  rhs += assemble_functional(
      d.angular, d.mesh, 5, [&](const QpContext& q, TestWeights& tw) {
        const PointValue u = us.at(q.cell, q.geo, q.bary);
        const PointValue w = ws.at(q.cell, q.geo, q.bary);
        const PointValue m = ms.at(q.cell, q.geo, q.bary);
        const PointValue h = hs.at(q.cell, q.geo, q.bary);
        // -rho kappa dt b(u, w, s), b = 1/2[((u.grad)w, s) - ((u.grad)s, w)]
        tw.value = -0.5 * rk * dt_ * (w.grad * u.value) +
                   p.mu0 * dt_ * m.value.cross(h.value) +
                   2.0 * p.zeta * dt_ * u.curl;
        for (int c = 0; c < 3; ++c)
          for (int r = 0; r < 3; ++r)
            tw.grad(r + 3 * c) = 0.5 * rk * dt_ * w.value(r) * u.value(c);
      });
  if (I.src.f_omega) rhs += dt_ * I.loads_at(d, t).f_omega;
  const Vector b = free_rows(d.angular, rhs);
  if (b.isZero(0.0)) return with_coeffs(d.angular, Vector::Zero(d.angular.n_dofs), t);
  return lift_free(d.angular, I.angular_lu->solve(b), t);
}

Stepper::MagnetizationResult Stepper::magnetization_step(
    const FeFunction& u_minus, const FeFunction& m_prev,
    const FeFunction& m_minus, const FeFunction& omega, const FeFunction& H,
    double t) const {
  const Discretization& d = disc_;
  const Impl& I = *impl_;
  const ModelParams& p = params_;
  require_space(u_minus, d.velocity, "u-");
  require_space(m_prev, d.magnetization, "m^{n-1}");
  require_space(m_minus, d.magnetization, "m-");
  require_space(omega, d.angular, "omega");
  require_space(H, d.field, "H");

  // Velocity-dependent couplings.
  const FrozenField uf{u_minus, d.velocity, Op::Value};
  const SparseMatrix x_uk =
      assemble_cross(uf, {d.edge, Op::Value}, {d.magnetization, Op::Value}, d.mesh);
  const SparseMatrix x_um =
      assemble_cross(uf, {d.magnetization, Op::Value}, {d.edge, Op::Value}, d.mesh);
  const SparseMatrix mk = free_block(
      SparseMatrix(p.sigma * dt_ * I.curl_pairing - 0.5 * dt_ * x_uk), d.edge,
      d.magnetization);
  const SparseMatrix zm =
      free_block(SparseMatrix(-x_um), d.magnetization, d.edge);
  const SparseMatrix S = block_matrix({{&I.mm_const, &I.mz_block, &mk},
                                       {&zm, &I.ee_mass, nullptr},
                                       {&I.km_block, nullptr, &I.ee_mass}});

  const FieldSampler us(u_minus, d.velocity), ms(m_minus, d.magnetization),
      ws(omega, d.angular);
  // H and m share the RT0 basis, so the magnetization mass pairs them.
  Vector rhs = I.mag_mass * m_prev.coeffs +
               (p.chi0 * dt_ / p.tau) * (I.mag_mass * H.coeffs);
  rhs += assemble_functional(
      d.magnetization, d.mesh, 5, [&](const QpContext& q, TestWeights& tw) {
        const PointValue u = us.at(q.cell, q.geo, q.bary);
        const PointValue m = ms.at(q.cell, q.geo, q.bary);
        const PointValue w = ws.at(q.cell, q.geo, q.bary);
        // dt c(u, m, F) = dt/2 [(m.u, div F) - (F.u, div m)]
        tw.div = 0.5 * dt_ * m.value.dot(u.value);
        tw.value = -0.5 * dt_ * m.div * u.value +
                   0.5 * dt_ * m.value.cross(u.curl) +
                   dt_ * w.value.cross(m.value);
      });
  if (I.src.f_m) rhs += dt_ * I.loads_at(d, t).f_m;

  Vector b = Vector::Zero(I.nm + 2 * I.ne);
  b.head(I.nm) = free_rows(d.magnetization, rhs);
  MagnetizationResult out{zero_function(d.magnetization), zero_function(d.edge),
                          zero_function(d.edge)};
  out.m.time = out.z.time = out.k.time = t;
  if (b.isZero(0.0)) return out;

  if (!I.mag_lu)
    I.mag_lu.emplace(S, I.solver);
  else
    I.mag_lu->update(S);
  const Vector x = I.mag_lu->solve(b);
  out.m = lift_free(d.magnetization, x.head(I.nm), t);
  out.z = lift_free(d.edge, x.segment(I.nm, I.ne), t);
  out.k = lift_free(d.edge, x.segment(I.nm + I.ne, I.ne), t);
  return out;
}

Stepper::FlowResult Stepper::ns_step(const FeFunction& u_prev,
                                     const FeFunction& u_minus,
                                     const FeFunction& m, const FeFunction& k,
                                     const FeFunction& H,
                                     const FeFunction& omega, double t) const {
  const Discretization& d = disc_;
  const Impl& I = *impl_;
  const ModelParams& p = params_;
  require_space(u_prev, d.velocity, "u^{n-1}");
  require_space(u_minus, d.velocity, "u-");
  require_space(m, d.magnetization, "m");
  require_space(k, d.edge, "k");
  require_space(H, d.field, "H");
  require_space(omega, d.angular, "omega");

  const FieldSampler us(u_minus, d.velocity), ms(m, d.magnetization),
      ks(k, d.edge), hs(H, d.field), ws(omega, d.angular);
  Vector rhs = p.rho * (I.velocity_mass * u_prev.coeffs);
  // -dt rho b(u, u, v)
  rhs += assemble_functional(
      d.velocity, d.mesh, 7, [&](const QpContext& q, TestWeights& tw) {
        const PointValue u = us.at(q.cell, q.geo, q.bary);
        const double s = 0.5 * p.rho * dt_;
        tw.value = -s * (u.grad * u.value);
        for (int c = 0; c < 3; ++c)
          for (int r = 0; r < 3; ++r)
            tw.grad(r + 3 * c) = s * u.value(r) * u.value(c);
      });
  const double a = p.mu0 * dt_;
  rhs += assemble_functional(
      d.velocity, d.mesh, 6, [&](const QpContext& q, TestWeights& tw) {
        const PointValue mv = ms.at(q.cell, q.geo, q.bary);
        const PointValue kv = ks.at(q.cell, q.geo, q.bary);
        const PointValue hv = hs.at(q.cell, q.geo, q.bary);
        const PointValue wv = ws.at(q.cell, q.geo, q.bary);
        // mu0 dt c(v, m, H) + mu0 dt/2 (v x k, H)
        tw.value = 0.5 * a * (mv.value * hv.div - hv.value * mv.div) +
                   0.5 * a * kv.value.cross(hv.value);
        // mu0 dt/2 (m x curl v, H) + 2 dt zeta (omega, curl v)
        tw.curl = 0.5 * a * hv.value.cross(mv.value) +
                  2.0 * dt_ * p.zeta * wv.value;
      });
  if (I.src.f_u) rhs += dt_ * I.loads_at(d, t).f_u;

  // Dirichlet lifting of the velocity trace.
  Vector ub = Vector::Zero(d.velocity.n_dofs);
  if (I.src.u_boundary) {
    const FeFunction g = interpolate(d.velocity, d.mesh, I.src.u_boundary, t);
    for (Index i = 0; i < d.velocity.n_dofs; ++i)
      if (d.velocity.constrained[i]) ub(i) = g.coeffs(i);
  }
  rhs -= I.ns_matrix * ub;
  const Vector prhs = dt_ * (I.pressure_div.transpose() * ub);

  Vector b = Vector::Zero(I.ns_lu->rows());
  b.head(I.nu) = free_rows(d.velocity, rhs);
  b.segment(I.nu, I.np) = prhs;
  FlowResult out{with_coeffs(d.velocity, ub, t), zero_function(d.pressure)};
  out.p.time = t;
  if (b.isZero(0.0)) return out;
  const Vector x = I.ns_lu->solve(b);
  scatter_free(d.velocity, x.head(I.nu), out.u.coeffs);
  out.p.coeffs = x.segment(I.nu, I.np);
  return out;
}

State Stepper::advance(const State& prev, int sweeps, bool strict,
                       double strict_tol, int max_sweeps,
                       StepInfo* info) const {
  if (sweeps < 1) throw InvalidArgument("at least one sweep required");
  const double t = prev.t + dt_;
  const int limit = strict ? std::max(max_sweeps, sweeps) : sweeps;
  State cur = prev;
  double update = 0.0;
  int done = 0;
  for (int sweep = 0; sweep < limit; ++sweep) {
    State next = cur;
    std::tie(next.H, next.phi) = magnetostatic_step(cur.m, t);
    next.omega = angular_step(cur.u, cur.omega, prev.omega, cur.m, next.H, t);
    auto mag = magnetization_step(cur.u, prev.m, cur.m, next.omega, next.H, t);
    next.m = std::move(mag.m);
    next.z = std::move(mag.z);
    next.k = std::move(mag.k);
    auto flow = ns_step(prev.u, cur.u, next.m, next.k, next.H, next.omega, t);
    next.u = std::move(flow.u);
    next.p = std::move(flow.p);
    ++done;
    if (sweep > 0 || !strict) {
      update = std::max(
          {relative_change({{&next.u, &cur.u}, {&next.p, &cur.p}}),
           relative_change({{&next.omega, &cur.omega}}),
           relative_change({{&next.m, &cur.m}, {&next.z, &cur.z}, {&next.k, &cur.k}})});
    }
    cur = std::move(next);
    if (strict && sweep + 1 >= sweeps && sweep > 0 && update <= strict_tol) break;
  }
  if (strict && update > strict_tol)
    throw SolverFailure("quasi-Newton iteration did not reach the strict tolerance",
                        update);
  // Close the step with the field of the returned magnetization.
  std::tie(cur.H, cur.phi) = magnetostatic_step(cur.m, t);
  cur.t = t;
  cur.step = prev.step + 1;
  if (info) *info = {done, update};
  return cur;
}

Stepper::Residuals Stepper::residuals(const State& s) const {
  const Discretization& d = disc_;
  const Impl& I = *impl_;
  Residuals r;
  r.incompressibility = projected_norm(I.pressure_div.transpose() * s.u.coeffs,
                                       d.pressure.mean_weights);
  Vector g = params_.mu0 * (I.field_potential.transpose() * s.H.coeffs +
                            I.mag_potential.transpose() * s.m.coeffs);
  if (I.src.div_he) g += I.loads_at(d, s.t).div_he;
  r.magnetostatic = d.options.field_trace == BoundaryTrace::Free
                        ? g.norm()
                        : projected_norm(g, d.potential.mean_weights);
  const Vector kc = I.edge_mass * s.k.coeffs - I.curl_pairing.transpose() * s.m.coeffs;
  r.k_consistency = free_rows(d.edge, kc).norm();
  return r;
}

State run(const RunConfig& config, const Discretization& disc,
          const StepSink& sink) {
  config.validate();
  Sources src = example_sources(config.example, config.params);
  if (config.div_he) src.div_he = config.div_he;
  const Stepper stepper(disc, config.params, config.dt, std::move(src),
                        config.solver);
  State s;
  try {
    s = stepper.initialize();
  } catch (const std::exception& e) {
    throw StepFailure(0, e.what());
  }
  if (sink) sink(s, StepInfo{});
  const int n = config.num_steps();
  for (int step = 1; step <= n; ++step) {
    StepInfo info;
    try {
      s = stepper.advance(s, config.sweeps, config.strict, config.strict_tol,
                          config.max_strict_sweeps, &info);
    } catch (const StepFailure&) {
      throw;
    } catch (const std::exception& e) {
      throw StepFailure(step, e.what());
    }
    // Snap accumulated time to the grid.
    s.t = step * config.dt;
    if (sink) sink(s, info);
  }
  return s;
}

State run(const RunConfig& config, const StepSink& sink) {
  config.validate();
  const Discretization disc(config.K, config.discretization);
  return run(config, disc, sink);
}

}  // namespace fhd
