#include "fhd/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/LU>

#include "fhd/error.hpp"

namespace fhd {

namespace {

template <std::size_t N>
Index find_sorted(const std::vector<std::array<Index, N>>& list,
                  const std::array<Index, N>& key) {
  auto it = std::lower_bound(list.begin(), list.end(), key);
  if (it == list.end() || *it != key) {
    throw InternalError("mesh entity lookup failed");
  }
  return static_cast<Index>(it - list.begin());
}

double signed_volume(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                     const Eigen::Vector3d& c, const Eigen::Vector3d& d) {
  return (b - a).cross(c - a).dot(d - a) / 6.0;
}

}  // namespace

double Mesh::h() const { return std::sqrt(3.0) / K; }

Index Mesh::edge_index(Index a, Index b) const {
  if (a > b) std::swap(a, b);
  return find_sorted(edges, {a, b});
}

Index Mesh::face_index(Index a, Index b, Index c) const {
  std::array<Index, 3> f{a, b, c};
  std::sort(f.begin(), f.end());
  return find_sorted(faces, f);
}

Mesh build_uniform_mesh(int K) {
  if (K < 1) throw InvalidArgument("build_uniform_mesh: K must be >= 1");

  Mesh mesh;
  mesh.K = K;
  const int n1 = K + 1;
  auto vid = [n1](int i, int j, int k) { return i + n1 * (j + n1 * k); };

  mesh.vertices.resize(static_cast<std::size_t>(n1) * n1 * n1);
  for (int k = 0; k < n1; ++k)
    for (int j = 0; j < n1; ++j)
      for (int i = 0; i < n1; ++i)
        mesh.vertices[vid(i, j, k)] =
            Eigen::Vector3d(double(i) / K, double(j) / K, double(k) / K);

  // Paths from corner (0,0,0) to (1,1,1) along the axes, one per permutation.
  static constexpr std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

  mesh.cells.reserve(6 * static_cast<std::size_t>(K) * K * K);
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < K; ++j)
      for (int i = 0; i < K; ++i)
        for (const auto& p : perms) {
          std::array<int, 3> c{i, j, k};
          std::array<Index, 4> tet{};
          tet[0] = vid(c[0], c[1], c[2]);
          for (int s = 0; s < 3; ++s) {
            ++c[p[s]];
            tet[s + 1] = vid(c[0], c[1], c[2]);
          }
          const auto& v = mesh.vertices;
          if (signed_volume(v[tet[0]], v[tet[1]], v[tet[2]], v[tet[3]]) < 0)
            std::swap(tet[2], tet[3]);
          mesh.cells.push_back(tet);
        }

  for (const auto& t : mesh.cells) {
    for (const auto& le : Mesh::kLocalEdges) {
      std::array<Index, 2> e{t[le[0]], t[le[1]]};
      std::sort(e.begin(), e.end());
      mesh.edges.push_back(e);
    }
    for (int f = 0; f < 4; ++f) {
      std::array<Index, 3> face{};
      int n = 0;
      for (int v = 0; v < 4; ++v)
        if (v != f) face[n++] = t[v];
      std::sort(face.begin(), face.end());
      mesh.faces.push_back(face);
    }
  }
  std::sort(mesh.edges.begin(), mesh.edges.end());
  mesh.edges.erase(std::unique(mesh.edges.begin(), mesh.edges.end()),
                   mesh.edges.end());
  std::sort(mesh.faces.begin(), mesh.faces.end());
  mesh.faces.erase(std::unique(mesh.faces.begin(), mesh.faces.end()),
                   mesh.faces.end());

  const auto nc = mesh.cells.size();
  mesh.cell_edges.resize(nc);
  mesh.cell_edge_signs.resize(nc);
  mesh.cell_faces.resize(nc);
  mesh.cell_face_signs.resize(nc);
  mesh.face_cells.assign(mesh.faces.size(), {-1, -1});

  for (std::size_t c = 0; c < nc; ++c) {
    const auto& t = mesh.cells[c];
    for (int e = 0; e < 6; ++e) {
      const Index a = t[Mesh::kLocalEdges[e][0]];
      const Index b = t[Mesh::kLocalEdges[e][1]];
      mesh.cell_edges[c][e] = mesh.edge_index(a, b);
      mesh.cell_edge_signs[c][e] = a < b ? 1 : -1;
    }
    for (int f = 0; f < 4; ++f) {
      std::array<Index, 3> face{};
      int n = 0;
      for (int v = 0; v < 4; ++v)
        if (v != f) face[n++] = t[v];
      const Index id = mesh.face_index(face[0], face[1], face[2]);
      const auto& s = mesh.faces[id];
      const auto& x = mesh.vertices;
      const Eigen::Vector3d normal = (x[s[1]] - x[s[0]]).cross(x[s[2]] - x[s[0]]);
      const double out = normal.dot(x[s[0]] - x[t[f]]);
      mesh.cell_faces[c][f] = id;
      mesh.cell_face_signs[c][f] = out > 0 ? 1 : -1;
      auto& fc = mesh.face_cells[id];
      if (fc[0] < 0)
        fc[0] = static_cast<Index>(c);
      else if (fc[1] < 0)
        fc[1] = static_cast<Index>(c);
      else
        throw InternalError("face shared by more than two cells");
    }
  }

  mesh.boundary_vertex.assign(mesh.vertices.size(), 0);
  mesh.boundary_edge.assign(mesh.edges.size(), 0);
  mesh.boundary_face.assign(mesh.faces.size(), 0);
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    if (mesh.face_cells[f][1] >= 0) continue;
    mesh.boundary_face[f] = 1;
    const auto& s = mesh.faces[f];
    for (int a = 0; a < 3; ++a) {
      mesh.boundary_vertex[s[a]] = 1;
      for (int b = a + 1; b < 3; ++b)
        mesh.boundary_edge[mesh.edge_index(s[a], s[b])] = 1;
    }
  }
  return mesh;
}

BoundaryEntities boundary_entities(const Mesh& mesh) {
  BoundaryEntities out;
  for (Index v = 0; v < mesh.num_vertices(); ++v)
    if (mesh.boundary_vertex[v]) out.vertices.push_back(v);
  for (Index e = 0; e < mesh.num_edges(); ++e)
    if (mesh.boundary_edge[e]) out.edges.push_back(e);
  for (Index f = 0; f < mesh.num_faces(); ++f)
    if (mesh.boundary_face[f]) out.faces.push_back(f);
  return out;
}

Eigen::Vector3d AffineMap::covariant(const Eigen::Vector3d& v_hat) const {
  return J.transpose().partialPivLu().solve(v_hat);
}

Eigen::Vector3d AffineMap::contravariant(const Eigen::Vector3d& v_hat) const {
  return J * v_hat / det;
}

AffineMap reference_map(const Mesh& mesh, Index cell) {
  const auto& t = mesh.cells.at(cell);
  const auto& x = mesh.vertices;
  AffineMap map;
  map.origin = x[t[0]];
  map.J.col(0) = x[t[1]] - x[t[0]];
  map.J.col(1) = x[t[2]] - x[t[0]];
  map.J.col(2) = x[t[3]] - x[t[0]];
  map.det = map.J.determinant();
  if (std::abs(map.det) <= 1e-300) throw InternalError("degenerate cell");
  return map;
}

CellGeometry cell_geometry(const Mesh& mesh, Index cell) {
  const auto& t = mesh.cells[cell];
  CellGeometry g;
  for (int a = 0; a < 4; ++a) g.x.col(a) = mesh.vertices[t[a]];
  Eigen::Matrix3d J;
  J.col(0) = g.x.col(1) - g.x.col(0);
  J.col(1) = g.x.col(2) - g.x.col(0);
  J.col(2) = g.x.col(3) - g.x.col(0);
  const double det = J.determinant();
  if (std::abs(det) <= 1e-300) throw InternalError("degenerate cell");
  // Rows of J^{-1} are the gradients of lambda_1..lambda_3.
  const Eigen::Matrix3d Jinv = J.inverse();
  for (int a = 0; a < 3; ++a) g.grad_l.col(a + 1) = Jinv.row(a).transpose();
  g.grad_l.col(0) = -(g.grad_l.col(1) + g.grad_l.col(2) + g.grad_l.col(3));
  g.volume = std::abs(det) / 6.0;
  return g;
}

double cell_volume(const Mesh& mesh, Index cell) {
  return std::abs(reference_map(mesh, cell).det) / 6.0;
}

void write_mesh(std::ostream& os, const Mesh& mesh) {
  os.precision(17);
  os << "vertices " << mesh.num_vertices() << '\n';
  for (const auto& v : mesh.vertices)
    os << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  os << "cells " << mesh.num_cells() << '\n';
  for (const auto& c : mesh.cells)
    os << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3] << '\n';
}

}  // namespace fhd
