#include "fhd/forms.hpp"

#include <string>
#include <vector>

#include "fhd/error.hpp"
#include "fhd/quadrature.hpp"

namespace fhd {

void ModelParams::validate() const {
  const std::pair<const char*, double> all[] = {
      {"rho", rho},     {"kappa", kappa},   {"eta", eta},
      {"zeta", zeta},   {"mu0", mu0},       {"sigma", sigma},
      {"eta_p", eta_p}, {"lambda_p", lambda_p}, {"tau", tau},
      {"chi0", chi0}};
  for (const auto& [name, value] : all)
    if (!(value > 0.0))
      throw InvalidArgument(std::string("model parameter ") + name +
                            " must be positive");
}

namespace {

using OpMatrix = Eigen::Matrix<double, 9, kMaxLocal>;
using Triplets = std::vector<Eigen::Triplet<double>>;

int value_degree(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::VelocityMINI: return 4;
    case SpaceKind::ConstP0: return 0;
    default: return 1;
  }
}

int op_dim(SpaceKind kind, Op op) {
  switch (op) {
    case Op::Value: return is_vector_valued(kind) ? 3 : 1;
    case Op::Grad: return is_vector_valued(kind) ? 9 : 3;
    case Op::Curl: return 3;
    case Op::Div: return 1;
  }
  return 0;
}

// Rows 0..dim-1 of `out` receive op applied to every local basis function.
void extract(const BasisTable& t, Op op, OpMatrix& out) {
  out.setZero();
  const int n = t.n;
  switch (op) {
    case Op::Value: out.topLeftCorner(3, n) = t.value.leftCols(n); break;
    case Op::Grad: out.leftCols(n) = t.grad.leftCols(n); break;
    case Op::Curl: out.topLeftCorner(3, n) = t.curl.leftCols(n); break;
    case Op::Div: out.topLeftCorner(1, n) = t.div.leftCols(n); break;
  }
}

Eigen::Vector3d pick(const PointValue& p, Op op) {
  switch (op) {
    case Op::Value: return p.value;
    case Op::Curl: return p.curl;
    default: throw InvalidArgument("frozen field supports Value or Curl only");
  }
}

void add_local(const DofMap& test, const DofMap& trial, Index cell,
               const Eigen::Matrix<double, kMaxLocal, kMaxLocal>& local,
               int n_test, int n_trial, Triplets& trip) {
  const auto ri = test.dofs(cell);
  const auto ci = trial.dofs(cell);
  for (int i = 0; i < n_test; ++i)
    for (int j = 0; j < n_trial; ++j)
      trip.emplace_back(ri[i], ci[j], local(i, j));
}

}  // namespace

int op_degree(SpaceKind kind, Op op) {
  const bool mini = kind == SpaceKind::VelocityMINI;
  const bool h1 = mini || kind == SpaceKind::AngularP1 ||
                  kind == SpaceKind::PressureP1;
  switch (op) {
    case Op::Value: return value_degree(kind);
    case Op::Grad:
      if (h1) return mini ? 3 : 0;
      break;
    case Op::Curl:
      if (mini) return 3;
      if (kind == SpaceKind::AngularP1 || kind == SpaceKind::EdgeNE0) return 0;
      break;
    case Op::Div:
      if (mini) return 3;
      if (kind == SpaceKind::AngularP1 || kind == SpaceKind::FaceRT0) return 0;
      break;
  }
  throw InvalidArgument("operator not defined on space " +
                        std::string(to_string(kind)));
}

SparseMatrix assemble_pairing(Op trial_op, const DofMap& trial, Op test_op,
                              const DofMap& test, const Mesh& mesh,
                              int degree) {
  const int d_trial = op_degree(trial.kind, trial_op);
  const int d_test = op_degree(test.kind, test_op);
  if (op_dim(trial.kind, trial_op) != op_dim(test.kind, test_op))
    throw InvalidArgument(std::string("incompatible pairing between ") +
                          std::string(to_string(trial.kind)) + " and " +
                          std::string(to_string(test.kind)));
  const auto& rule = tet_rule(degree >= 0 ? degree : d_trial + d_test);

  Triplets trip;
  trip.reserve(static_cast<std::size_t>(mesh.num_cells()) * trial.n_local *
               test.n_local);
  BasisTable bt, bs;
  OpMatrix ot, os;
  Eigen::Matrix<double, kMaxLocal, kMaxLocal> local;
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry geo = cell_geometry(mesh, c);
    local.setZero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      eval_basis(trial, c, geo, rule.points[q], bt);
      eval_basis(test, c, geo, rule.points[q], bs);
      extract(bt, trial_op, ot);
      extract(bs, test_op, os);
      const double w = 6.0 * geo.volume * rule.weights[q];
      // Coefficient loops: the blocks are tiny and of runtime size, where
      // a blocked matrix product is an order of magnitude slower.
      for (int j = 0; j < bt.n; ++j)
        for (int i = 0; i < bs.n; ++i)
          local(i, j) += w * os.col(i).dot(ot.col(j));
    }
    add_local(test, trial, c, local, test.n_local, trial.n_local, trip);
  }
  SparseMatrix A(test.n_dofs, trial.n_dofs);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

SparseMatrix assemble_bilinear(FormKind form, const DofMap& trial,
                               const DofMap& test, const Mesh& mesh) {
  auto require = [&](bool ok) {
    if (!ok)
      throw InvalidArgument(std::string("form not defined for ") +
                            std::string(to_string(trial.kind)) + " x " +
                            std::string(to_string(test.kind)));
  };
  const bool vector_h1 = [](SpaceKind k) {
    return k == SpaceKind::VelocityMINI || k == SpaceKind::AngularP1;
  }(trial.kind);
  switch (form) {
    case FormKind::Mass:
      require(trial.kind == test.kind);
      return assemble_pairing(Op::Value, trial, Op::Value, test, mesh);
    case FormKind::GradGrad:
      require(trial.kind == test.kind);
      return assemble_pairing(Op::Grad, trial, Op::Grad, test, mesh);
    case FormKind::CurlCurl:
      require(trial.kind == test.kind &&
              (vector_h1 || trial.kind == SpaceKind::EdgeNE0));
      return assemble_pairing(Op::Curl, trial, Op::Curl, test, mesh);
    case FormKind::DivDiv:
      require(trial.kind == test.kind &&
              (vector_h1 || trial.kind == SpaceKind::FaceRT0));
      return assemble_pairing(Op::Div, trial, Op::Div, test, mesh);
    case FormKind::PressureDiv:
      require(trial.kind == SpaceKind::PressureP1 &&
              test.kind == SpaceKind::VelocityMINI);
      return assemble_pairing(Op::Value, trial, Op::Div, test, mesh);
    case FormKind::PotentialDiv:
      require(trial.kind == SpaceKind::ConstP0 &&
              test.kind == SpaceKind::FaceRT0);
      return assemble_pairing(Op::Value, trial, Op::Div, test, mesh);
    case FormKind::CurlPairing:
      require(trial.kind == SpaceKind::EdgeNE0 &&
              test.kind == SpaceKind::FaceRT0);
      return assemble_pairing(Op::Curl, trial, Op::Value, test, mesh);
    case FormKind::ScalarCurl:
      require(trial.kind == SpaceKind::AngularP1 &&
              test.kind == SpaceKind::VelocityMINI);
      return assemble_pairing(Op::Value, trial, Op::Curl, test, mesh);
  }
  throw InvalidArgument("unknown form");
}

namespace {

SparseMatrix select_block(const SparseMatrix& full, const DofMap& trial,
                          const DofMap& test, bool free_cols) {
  std::vector<Index> col_map(trial.n_dofs, -1);
  Index ncols = 0;
  for (Index j = 0; j < trial.n_dofs; ++j)
    if (static_cast<bool>(trial.constrained[j]) != free_cols)
      col_map[j] = ncols++;
  Triplets trip;
  for (Index j = 0; j < full.outerSize(); ++j) {
    if (col_map[j] < 0) continue;
    for (SparseMatrix::InnerIterator it(full, j); it; ++it) {
      const Index r = test.free_index[it.row()];
      if (r >= 0) trip.emplace_back(r, col_map[j], it.value());
    }
  }
  SparseMatrix out(test.n_free(), ncols);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

}  // namespace

SparseMatrix free_block(const SparseMatrix& full, const DofMap& trial,
                        const DofMap& test) {
  return select_block(full, trial, test, true);
}

SparseMatrix lifting_block(const SparseMatrix& full, const DofMap& trial,
                           const DofMap& test) {
  return select_block(full, trial, test, false);
}

// ---------------------------------------------------------------------------

FieldSampler::FieldSampler(const FeFunction& fe, const DofMap& dofs)
    : fe_(fe), dofs_(dofs) {
  if (fe.kind != dofs.kind ||
      fe.coeffs.size() != static_cast<Eigen::Index>(dofs.n_dofs))
    throw InvalidArgument("FieldSampler: function does not match its space");
}

PointValue FieldSampler::at(Index cell, const CellGeometry& geo,
                            const Eigen::Vector4d& bary) const {
  return eval_point(dofs_, cell, geo, bary, fe_.coeffs);
}

SparseMatrix assemble_convection(const FeFunction& w, const DofMap& w_dofs,
                                 const DofMap& space, const Mesh& mesh) {
  if (space.kind != SpaceKind::VelocityMINI &&
      space.kind != SpaceKind::AngularP1)
    throw InvalidArgument("assemble_convection: unsupported space " +
                          std::string(to_string(space.kind)));
  const FieldSampler ws(w, w_dofs);
  const int degree = ws.degree(Op::Value) + op_degree(space.kind, Op::Grad) +
                     op_degree(space.kind, Op::Value);
  const auto& rule = tet_rule(degree);

  Triplets trip;
  BasisTable t;
  Eigen::Matrix<double, 3, kMaxLocal> gw;
  Eigen::Matrix<double, kMaxLocal, kMaxLocal> local;
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry geo = cell_geometry(mesh, c);
    local.setZero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      eval_basis(space, c, geo, rule.points[q], t);
      const Eigen::Vector3d wv = ws.at(c, geo, rule.points[q]).value;
      for (int i = 0; i < t.n; ++i)
        gw.col(i) = Eigen::Map<const Eigen::Matrix3d>(t.grad.col(i).data()) * wv;
      const double wq = 0.5 * 6.0 * geo.volume * rule.weights[q];
      // local(i,j) = 1/2[(w.grad)phi_j . phi_i - (w.grad)phi_i . phi_j]
      for (int j = 0; j < t.n; ++j)
        for (int i = 0; i < t.n; ++i)
          local(i, j) += wq * (t.value.col(i).dot(gw.col(j)) -
                               gw.col(i).dot(t.value.col(j)));
    }
    add_local(space, space, c, local, space.n_local, space.n_local, trip);
  }
  SparseMatrix N(space.n_dofs, space.n_dofs);
  N.setFromTriplets(trip.begin(), trip.end());
  return N;
}

SparseMatrix assemble_c_form(const FeFunction& v, const DofMap& v_dofs,
                             const DofMap& rt0, const Mesh& mesh) {
  if (rt0.kind != SpaceKind::FaceRT0)
    throw InvalidArgument("assemble_c_form: space must be FaceRT0");
  const FieldSampler vs(v, v_dofs);
  const auto& rule = tet_rule(vs.degree(Op::Value) + 1);
  Triplets trip;
  BasisTable t;
  Eigen::Matrix<double, kMaxLocal, kMaxLocal> local;
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry geo = cell_geometry(mesh, c);
    local.setZero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      eval_basis(rt0, c, geo, rule.points[q], t);
      const Eigen::Vector3d vv = vs.at(c, geo, rule.points[q]).value;
      const double wq = 0.5 * 6.0 * geo.volume * rule.weights[q];
      // local(i,j) = 1/2[(phi_j.v) div phi_i - (phi_i.v) div phi_j]
      const Eigen::Matrix<double, 1, kMaxLocal> pv = vv.transpose() * t.value;
      for (int j = 0; j < t.n; ++j)
        for (int i = 0; i < t.n; ++i)
          local(i, j) += wq * (t.div(i) * pv(j) - pv(i) * t.div(j));
    }
    add_local(rt0, rt0, c, local, rt0.n_local, rt0.n_local, trip);
  }
  SparseMatrix X(rt0.n_dofs, rt0.n_dofs);
  X.setFromTriplets(trip.begin(), trip.end());
  return X;
}

SparseMatrix assemble_cross(const FrozenField& w, const Operand& a,
                            const Operand& b, const Mesh& mesh) {
  auto check = [](const Operand& o) {
    const bool vec = is_vector_valued(o.dofs.kind);
    const bool ok = (o.op == Op::Value && vec) ||
                    (o.op == Op::Curl && o.dofs.kind == SpaceKind::VelocityMINI);
    if (!ok)
      throw InvalidArgument("assemble_cross: unsupported operand on " +
                            std::string(to_string(o.dofs.kind)));
  };
  check(a);
  check(b);
  if (w.op != Op::Value && w.op != Op::Curl)
    throw InvalidArgument("assemble_cross: frozen field must be a value or curl");
  const FieldSampler ws(w.fe, w.dofs);
  const int degree = ws.degree(w.op) + op_degree(a.dofs.kind, a.op) +
                     op_degree(b.dofs.kind, b.op);
  const auto& rule = tet_rule(degree);

  Triplets trip;
  BasisTable ta, tb;
  OpMatrix oa, ob;
  Eigen::Matrix<double, 3, kMaxLocal> wxa;
  Eigen::Matrix<double, kMaxLocal, kMaxLocal> local;
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry geo = cell_geometry(mesh, c);
    local.setZero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      eval_basis(a.dofs, c, geo, rule.points[q], ta);
      eval_basis(b.dofs, c, geo, rule.points[q], tb);
      extract(ta, a.op, oa);
      extract(tb, b.op, ob);
      const Eigen::Vector3d wv = pick(ws.at(c, geo, rule.points[q]), w.op);
      for (int j = 0; j < ta.n; ++j)
        wxa.col(j) = wv.cross(oa.block<3, 1>(0, j));
      const double wq = 6.0 * geo.volume * rule.weights[q];
      for (int j = 0; j < ta.n; ++j)
        for (int i = 0; i < tb.n; ++i)
          local(i, j) += wq * ob.block<3, 1>(0, i).dot(wxa.col(j));
    }
    add_local(b.dofs, a.dofs, c, local, b.dofs.n_local, a.dofs.n_local, trip);
  }
  SparseMatrix M(b.dofs.n_dofs, a.dofs.n_dofs);
  M.setFromTriplets(trip.begin(), trip.end());
  return M;
}

Vector assemble_functional(const DofMap& test, const Mesh& mesh, int degree,
                           const QpIntegrand& integrand) {
  const auto& rule = tet_rule(degree);
  Vector out = Vector::Zero(test.n_dofs);
  BasisTable t;
  const bool has_grad = test.kind == SpaceKind::VelocityMINI ||
                        test.kind == SpaceKind::AngularP1 ||
                        test.kind == SpaceKind::PressureP1;
  const bool vector_h1 = test.kind == SpaceKind::VelocityMINI ||
                         test.kind == SpaceKind::AngularP1;
  double phi[5];
  Eigen::Matrix<double, 3, 5> dphi;
  Eigen::Matrix<double, kMaxLocal, 1> local;
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry geo = cell_geometry(mesh, c);
    local.setZero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Eigen::Vector4d& bary = rule.points[q];
      const QpContext ctx{c, geo, bary, geo.point(bary)};
      TestWeights tw;
      integrand(ctx, tw);
      const double wq = 6.0 * geo.volume * rule.weights[q];
      if (vector_h1) {
        // Per component c and scalar shape a: value, Jacobian row c,
        // curl(phi e_c) = grad phi x e_c and div(phi e_c) = d_c phi.
        const int n = scalar_h1_shapes(test.kind, geo, bary, phi, dphi);
        for (int a = 0; a < n; ++a) {
          const Eigen::Vector3d cw = tw.curl.cross(dphi.col(a));
          for (int k = 0; k < 3; ++k) {
            double s = tw.value(k) * phi[a] + cw(k) + tw.div * dphi(k, a);
            for (int j = 0; j < 3; ++j) s += tw.grad(k + 3 * j) * dphi(j, a);
            local(k * n + a) += wq * s;
          }
        }
        continue;
      }
      eval_basis(test, c, geo, bary, t);
      for (int i = 0; i < t.n; ++i) {
        double s = tw.value.dot(t.value.col(i)) + tw.curl.dot(t.curl.col(i)) +
                   tw.div * t.div(i);
        if (has_grad) s += tw.grad.dot(t.grad.col(i));
        local(i) += wq * s;
      }
    }
    const auto ids = test.dofs(c);
    for (int i = 0; i < test.n_local; ++i) out(ids[i]) += local(i);
  }
  return out;
}

Vector assemble_load(const VectorField& f, const DofMap& test,
                     const Mesh& mesh, double t, int degree) {
  if (!is_vector_valued(test.kind))
    throw InvalidArgument("assemble_load: vector field on scalar space");
  return assemble_functional(test, mesh, degree,
                             [&](const QpContext& ctx, TestWeights& w) {
                               w.value = f(ctx.x, t);
                             });
}

Vector assemble_load(const ScalarField& f, const DofMap& test,
                     const Mesh& mesh, double t, int degree) {
  if (is_vector_valued(test.kind))
    throw InvalidArgument("assemble_load: scalar field on vector space");
  return assemble_functional(test, mesh, degree,
                             [&](const QpContext& ctx, TestWeights& w) {
                               w.value.x() = f(ctx.x, t);
                             });
}

}  // namespace fhd
