#include "fhd/spaces.hpp"

#include <vector>

#include "fhd/error.hpp"
#include "fhd/quadrature.hpp"

namespace fhd {

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::VelocityMINI: return "VelocityMINI";
    case SpaceKind::PressureP1: return "PressureP1";
    case SpaceKind::AngularP1: return "AngularP1";
    case SpaceKind::EdgeNE0: return "EdgeNE0";
    case SpaceKind::FaceRT0: return "FaceRT0";
    case SpaceKind::ConstP0: return "ConstP0";
  }
  return "?";
}

bool is_vector_valued(SpaceKind kind) {
  return kind != SpaceKind::PressureP1 && kind != SpaceKind::ConstP0;
}

namespace {

bool default_constrained(SpaceKind kind) {
  return kind != SpaceKind::PressureP1 && kind != SpaceKind::ConstP0;
}

void finalize(DofMap& d) {
  d.free_index.assign(d.n_dofs, -1);
  d.free_dofs.clear();
  for (Index i = 0; i < d.n_dofs; ++i) {
    if (d.constrained[i]) continue;
    d.free_index[i] = static_cast<Index>(d.free_dofs.size());
    d.free_dofs.push_back(i);
  }
}

}  // namespace

DofMap build_dofmap(SpaceKind kind, const Mesh& mesh, BoundaryTrace trace) {
  DofMap d;
  d.kind = kind;
  const bool constrain =
      trace == BoundaryTrace::Default ? default_constrained(kind)
                                      : trace == BoundaryTrace::Constrained;
  const Index nv = mesh.num_vertices();
  const Index nc = mesh.num_cells();

  switch (kind) {
    case SpaceKind::VelocityMINI:
    case SpaceKind::AngularP1: {
      const bool mini = kind == SpaceKind::VelocityMINI;
      const int ns_local = mini ? 5 : 4;
      d.scalar_size = mini ? nv + nc : nv;
      d.n_dofs = 3 * d.scalar_size;
      d.n_local = 3 * ns_local;
      d.cell_dofs.reserve(static_cast<std::size_t>(nc) * d.n_local);
      for (Index c = 0; c < nc; ++c)
        for (int comp = 0; comp < 3; ++comp) {
          for (int a = 0; a < 4; ++a)
            d.cell_dofs.push_back(comp * d.scalar_size + mesh.cells[c][a]);
          if (mini) d.cell_dofs.push_back(comp * d.scalar_size + nv + c);
        }
      d.cell_signs.assign(d.cell_dofs.size(), 1);
      d.constrained.assign(d.n_dofs, 0);
      if (constrain)
        for (int comp = 0; comp < 3; ++comp)
          for (Index v = 0; v < nv; ++v)
            if (mesh.boundary_vertex[v])
              d.constrained[comp * d.scalar_size + v] = 1;
      break;
    }
    case SpaceKind::PressureP1: {
      d.n_dofs = nv;
      d.n_local = 4;
      for (Index c = 0; c < nc; ++c)
        for (int a = 0; a < 4; ++a) d.cell_dofs.push_back(mesh.cells[c][a]);
      d.cell_signs.assign(d.cell_dofs.size(), 1);
      d.constrained.assign(d.n_dofs, 0);
      if (constrain)
        for (Index v = 0; v < nv; ++v)
          d.constrained[v] = mesh.boundary_vertex[v];
      d.zero_mean = !constrain;
      d.mean_weights = Vector::Zero(nv);
      for (Index c = 0; c < nc; ++c) {
        const double vol = cell_volume(mesh, c);
        for (int a = 0; a < 4; ++a) d.mean_weights(mesh.cells[c][a]) += vol / 4;
      }
      break;
    }
    case SpaceKind::EdgeNE0: {
      d.n_dofs = mesh.num_edges();
      d.n_local = 6;
      for (Index c = 0; c < nc; ++c)
        for (int e = 0; e < 6; ++e) {
          d.cell_dofs.push_back(mesh.cell_edges[c][e]);
          d.cell_signs.push_back(mesh.cell_edge_signs[c][e]);
        }
      d.constrained.assign(d.n_dofs, 0);
      if (constrain) d.constrained = mesh.boundary_edge;
      break;
    }
    case SpaceKind::FaceRT0: {
      d.n_dofs = mesh.num_faces();
      d.n_local = 4;
      for (Index c = 0; c < nc; ++c)
        for (int f = 0; f < 4; ++f) {
          d.cell_dofs.push_back(mesh.cell_faces[c][f]);
          d.cell_signs.push_back(mesh.cell_face_signs[c][f]);
        }
      d.constrained.assign(d.n_dofs, 0);
      if (constrain) d.constrained = mesh.boundary_face;
      break;
    }
    case SpaceKind::ConstP0: {
      d.n_dofs = nc;
      d.n_local = 1;
      for (Index c = 0; c < nc; ++c) d.cell_dofs.push_back(c);
      d.cell_signs.assign(d.cell_dofs.size(), 1);
      d.constrained.assign(d.n_dofs, 0);
      d.zero_mean = true;
      d.mean_weights.resize(nc);
      for (Index c = 0; c < nc; ++c) d.mean_weights(c) = cell_volume(mesh, c);
      break;
    }
  }
  finalize(d);
  return d;
}

FeFunction zero_function(const DofMap& dofs) {
  return FeFunction{dofs.kind, Vector::Zero(dofs.n_dofs), std::nullopt};
}

Vector gather_free(const DofMap& dofs, const Vector& full) {
  Vector out(dofs.n_free());
  for (Index i = 0; i < dofs.n_free(); ++i) out(i) = full(dofs.free_dofs[i]);
  return out;
}

void scatter_free(const DofMap& dofs, const Vector& free, Vector& full) {
  for (Index i = 0; i < dofs.n_free(); ++i) full(dofs.free_dofs[i]) = free(i);
}

void clear_constrained(const DofMap& dofs, FeFunction& fe) {
  for (Index i = 0; i < dofs.n_dofs; ++i)
    if (dofs.constrained[i]) fe.coeffs(i) = 0.0;
}

FeFunction interpolate(const DofMap& dofs, const Mesh& mesh,
                       const VectorField& f, double t) {
  FeFunction fe = zero_function(dofs);
  fe.time = t;
  auto& x = fe.coeffs;
  const auto& verts = mesh.vertices;
  switch (dofs.kind) {
    case SpaceKind::VelocityMINI:
    case SpaceKind::AngularP1:
      for (Index v = 0; v < mesh.num_vertices(); ++v) {
        const Eigen::Vector3d val = f(verts[v], t);
        for (int c = 0; c < 3; ++c) x(c * dofs.scalar_size + v) = val(c);
      }
      break;
    case SpaceKind::EdgeNE0: {
      const auto& rule = edge_rule();
      for (Index e = 0; e < mesh.num_edges(); ++e) {
        const Eigen::Vector3d a = verts[mesh.edges[e][0]];
        const Eigen::Vector3d tangent = verts[mesh.edges[e][1]] - a;
        double s = 0.0;
        for (std::size_t q = 0; q < rule.w.size(); ++q)
          s += rule.w[q] * f(a + rule.s[q] * tangent, t).dot(tangent);
        x(e) = s;
      }
      break;
    }
    case SpaceKind::FaceRT0: {
      const auto& rule = face_rule();
      for (Index fi = 0; fi < mesh.num_faces(); ++fi) {
        const auto& s = mesh.faces[fi];
        const Eigen::Vector3d& a = verts[s[0]];
        const Eigen::Vector3d& b = verts[s[1]];
        const Eigen::Vector3d& c = verts[s[2]];
        // |normal| = 2 * area, so the rule weights (summing to 1) need 1/2.
        const Eigen::Vector3d normal = (b - a).cross(c - a);
        double flux = 0.0;
        for (std::size_t q = 0; q < rule.w.size(); ++q) {
          const Eigen::Vector3d p =
              rule.bary[q](0) * a + rule.bary[q](1) * b + rule.bary[q](2) * c;
          flux += rule.w[q] * f(p, t).dot(normal);
        }
        x(fi) = 0.5 * flux;
      }
      break;
    }
    case SpaceKind::PressureP1:
    case SpaceKind::ConstP0:
      throw InvalidArgument("interpolate: vector field into scalar space " +
                            std::string(to_string(dofs.kind)));
  }
  return fe;
}

FeFunction interpolate(const DofMap& dofs, const Mesh& mesh,
                       const ScalarField& f, double t) {
  FeFunction fe = zero_function(dofs);
  fe.time = t;
  if (dofs.kind == SpaceKind::PressureP1) {
    for (Index v = 0; v < mesh.num_vertices(); ++v)
      fe.coeffs(v) = f(mesh.vertices[v], t);
  } else if (dofs.kind == SpaceKind::ConstP0) {
    const auto& rule = tet_rule(4);
    double total = 0.0;
    for (Index c = 0; c < mesh.num_cells(); ++c) {
      const CellGeometry geo = cell_geometry(mesh, c);
      double s = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q)
        s += 6.0 * rule.weights[q] * f(geo.point(rule.points[q]), t);
      fe.coeffs(c) = s;
      total += s * geo.volume;
    }
    if (dofs.zero_mean) {
      const double mean = total / dofs.mean_weights.sum();
      fe.coeffs.array() -= mean;
    }
  } else {
    throw InvalidArgument("interpolate: scalar field into vector space " +
                          std::string(to_string(dofs.kind)));
  }
  return fe;
}

// ---------------------------------------------------------------------------

namespace {

// Fills a vector H1 table from scalar values/gradients (n_scalar of them).
void fill_vector_h1(int n_scalar, const double* phi,
                    const Eigen::Matrix<double, 3, 5>& dphi, BasisTable& t) {
  t.n = 3 * n_scalar;
  t.value_dim = 3;
  t.value.setZero();
  t.grad.setZero();
  t.curl.setZero();
  t.div.setZero();
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < n_scalar; ++a) {
      const int i = c * n_scalar + a;
      t.value(c, i) = phi[a];
      for (int j = 0; j < 3; ++j) t.grad(c + 3 * j, i) = dphi(j, a);
      // curl(phi e_c) = grad(phi) x e_c
      t.curl.col(i) = dphi.col(a).cross(Eigen::Vector3d::Unit(c));
      t.div(i) = dphi(c, a);
    }
}

}  // namespace

int scalar_h1_shapes(SpaceKind kind, const CellGeometry& geo,
                     const Eigen::Vector4d& l, double* phi,
                     Eigen::Matrix<double, 3, 5>& dphi) {
  const auto& G = geo.grad_l;
  for (int a = 0; a < 4; ++a) phi[a] = l(a);
  dphi.leftCols<4>() = G;
  if (kind != SpaceKind::VelocityMINI) return 4;
  phi[4] = 256.0 * l.prod();
  dphi.col(4) = 256.0 * (l(1) * l(2) * l(3) * G.col(0) +
                         l(0) * l(2) * l(3) * G.col(1) +
                         l(0) * l(1) * l(3) * G.col(2) +
                         l(0) * l(1) * l(2) * G.col(3));
  return 5;
}

void eval_basis(const DofMap& dofs, Index cell, const CellGeometry& geo,
                const Eigen::Vector4d& l, BasisTable& t) {
  const auto signs = dofs.signs(cell);
  const auto& G = geo.grad_l;
  switch (dofs.kind) {
    case SpaceKind::VelocityMINI:
    case SpaceKind::AngularP1: {
      double phi[5];
      Eigen::Matrix<double, 3, 5> dphi;
      const int n = scalar_h1_shapes(dofs.kind, geo, l, phi, dphi);
      fill_vector_h1(n, phi, dphi, t);
      break;
    }
    case SpaceKind::PressureP1:
      t.n = 4;
      t.value_dim = 1;
      t.value.setZero();
      t.grad.setZero();
      t.curl.setZero();
      t.div.setZero();
      for (int a = 0; a < 4; ++a) {
        t.value(0, a) = l(a);
        t.grad.block<3, 1>(0, a) = G.col(a);
      }
      break;
    case SpaceKind::EdgeNE0:
      t.n = 6;
      t.value_dim = 3;
      t.value.setZero();
      t.grad.setZero();
      t.curl.setZero();
      t.div.setZero();
      for (int e = 0; e < 6; ++e) {
        const int i = Mesh::kLocalEdges[e][0];
        const int j = Mesh::kLocalEdges[e][1];
        const double s = signs[e];
        t.value.col(e) = s * (l(i) * G.col(j) - l(j) * G.col(i));
        t.curl.col(e) = 2.0 * s * G.col(i).cross(G.col(j));
      }
      break;
    case SpaceKind::FaceRT0: {
      t.n = 4;
      t.value_dim = 3;
      t.value.setZero();
      t.grad.setZero();
      t.curl.setZero();
      t.div.setZero();
      const Eigen::Vector3d x = geo.x * l;
      const double scale = 1.0 / (3.0 * geo.volume);
      for (int f = 0; f < 4; ++f) {
        const double s = signs[f];
        t.value.col(f) = s * scale * (x - geo.x.col(f));
        t.div(f) = s / geo.volume;
      }
      break;
    }
    case SpaceKind::ConstP0:
      t.n = 1;
      t.value_dim = 1;
      t.value.setZero();
      t.grad.setZero();
      t.curl.setZero();
      t.div.setZero();
      t.value(0, 0) = 1.0;
      break;
  }
}

PointValue combine(const DofMap& dofs, Index cell, const BasisTable& t,
                   const Vector& coeffs) {
  const auto ids = dofs.dofs(cell);
  PointValue p;
  Eigen::Matrix<double, 9, 1> g = Eigen::Matrix<double, 9, 1>::Zero();
  for (int i = 0; i < t.n; ++i) {
    const double c = coeffs(ids[i]);
    if (c == 0.0) continue;
    p.value += c * t.value.col(i);
    g += c * t.grad.col(i);
    p.curl += c * t.curl.col(i);
    p.div += c * t.div(i);
  }
  if (t.value_dim == 1) {
    // scalar: gradient stored in rows 0..2 -> row 0 of p.grad
    p.grad.row(0) = g.head<3>().transpose();
  } else {
    p.grad = Eigen::Map<const Eigen::Matrix3d>(g.data());
  }
  return p;
}

PointValue eval_point(const DofMap& dofs, Index cell, const CellGeometry& geo,
                      const Eigen::Vector4d& bary, const Vector& coeffs) {
  if (dofs.kind != SpaceKind::VelocityMINI && dofs.kind != SpaceKind::AngularP1) {
    BasisTable t;
    eval_basis(dofs, cell, geo, bary, t);
    return combine(dofs, cell, t, coeffs);
  }
  // Vector H1: combine the scalar shapes per component.
  double phi[5];
  Eigen::Matrix<double, 3, 5> dphi;
  const int n = scalar_h1_shapes(dofs.kind, geo, bary, phi, dphi);
  const auto ids = dofs.dofs(cell);
  PointValue p;
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < n; ++a) {
      const double k = coeffs(ids[c * n + a]);
      p.value(c) += k * phi[a];
      p.grad.row(c) += k * dphi.col(a).transpose();
    }
  const auto& g = p.grad;
  p.curl = Eigen::Vector3d(g(2, 1) - g(1, 2), g(0, 2) - g(2, 0), g(1, 0) - g(0, 1));
  p.div = g.trace();
  return p;
}

PointValue eval(const FeFunction& fe, const DofMap& dofs, const Mesh& mesh,
                Index cell, const Eigen::Vector4d& bary) {
  if (fe.kind != dofs.kind) throw InvalidArgument("eval: space mismatch");
  return eval_point(dofs, cell, cell_geometry(mesh, cell), bary, fe.coeffs);
}

// ---------------------------------------------------------------------------

SparseMatrix gradient_incidence(const Mesh& mesh) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * mesh.edges.size());
  for (Index e = 0; e < mesh.num_edges(); ++e) {
    trip.emplace_back(e, mesh.edges[e][0], -1.0);
    trip.emplace_back(e, mesh.edges[e][1], 1.0);
  }
  SparseMatrix G(mesh.num_edges(), mesh.num_vertices());
  G.setFromTriplets(trip.begin(), trip.end());
  return G;
}

SparseMatrix curl_incidence(const Mesh& mesh) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(3 * mesh.faces.size());
  for (Index f = 0; f < mesh.num_faces(); ++f) {
    const auto& s = mesh.faces[f];
    trip.emplace_back(f, mesh.edge_index(s[0], s[1]), 1.0);
    trip.emplace_back(f, mesh.edge_index(s[1], s[2]), 1.0);
    trip.emplace_back(f, mesh.edge_index(s[0], s[2]), -1.0);
  }
  SparseMatrix C(mesh.num_faces(), mesh.num_edges());
  C.setFromTriplets(trip.begin(), trip.end());
  return C;
}

SparseMatrix divergence_incidence(const Mesh& mesh) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(4 * mesh.cells.size());
  for (Index c = 0; c < mesh.num_cells(); ++c)
    for (int f = 0; f < 4; ++f)
      trip.emplace_back(c, mesh.cell_faces[c][f], mesh.cell_face_signs[c][f]);
  SparseMatrix D(mesh.num_cells(), mesh.num_faces());
  D.setFromTriplets(trip.begin(), trip.end());
  return D;
}

}  // namespace fhd
