#ifndef FHD_MESH_HPP
#define FHD_MESH_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace fhd {

using Index = int;

/// Uniform tetrahedral triangulation of the unit cube.
///
/// Each of the K^3 sub-cubes is split into six tetrahedra around its main
/// diagonal (Kuhn/Freudenthal split). Every sub-cube uses the same split, so
/// faces of neighbouring cubes match without further work.
///
/// Entities are numbered deterministically:
///   - vertex (i,j,k) has index i + (K+1)*(j + (K+1)*k);
///   - edges and faces are sorted vertex tuples, enumerated lexicographically.
/// Global edge orientation runs from the lower to the higher vertex index.
/// Global face normal is (x_b - x_a) x (x_c - x_a) for the sorted tuple (a,b,c).
struct Mesh {
  int K = 0;
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<Index, 4>> cells;
  std::vector<std::array<Index, 2>> edges;
  std::vector<std::array<Index, 3>> faces;

  /// Local edge e of a cell joins local vertices kLocalEdges[e].
  static constexpr std::array<std::array<int, 2>, 6> kLocalEdges{
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

  // Per cell: global edge ids (local edge order above) and +-1 if the local
  // direction agrees with the global one.
  std::vector<std::array<Index, 6>> cell_edges;
  std::vector<std::array<std::int8_t, 6>> cell_edge_signs;
  // Per cell: global face id of the face opposite local vertex i and +1 if
  // the global face normal points out of the cell.
  std::vector<std::array<Index, 4>> cell_faces;
  std::vector<std::array<std::int8_t, 4>> cell_face_signs;

  // Incident cells of each face; the second entry is -1 on the boundary.
  std::vector<std::array<Index, 2>> face_cells;

  std::vector<std::uint8_t> boundary_vertex;
  std::vector<std::uint8_t> boundary_edge;
  std::vector<std::uint8_t> boundary_face;

  Index num_vertices() const { return static_cast<Index>(vertices.size()); }
  Index num_cells() const { return static_cast<Index>(cells.size()); }
  Index num_edges() const { return static_cast<Index>(edges.size()); }
  Index num_faces() const { return static_cast<Index>(faces.size()); }

  /// Mesh size: diameter of a tetrahedron, sqrt(3)/K.
  double h() const;

  Index edge_index(Index a, Index b) const;
  Index face_index(Index a, Index b, Index c) const;
};

Mesh build_uniform_mesh(int K);

struct BoundaryEntities {
  std::vector<Index> vertices;
  std::vector<Index> edges;
  std::vector<Index> faces;
};

BoundaryEntities boundary_entities(const Mesh& mesh);

/// Affine map x = origin + J * xi from the reference tetrahedron
/// {(0,0,0),(1,0,0),(0,1,0),(0,0,1)} onto a cell.
struct AffineMap {
  Eigen::Vector3d origin;
  Eigen::Matrix3d J;
  double det = 0.0;  // signed; |det| = 6 * volume

  Eigen::Vector3d operator()(const Eigen::Vector3d& xi) const {
    return origin + J * xi;
  }
  /// Covariant Piola transform (edge elements): J^{-T} v_hat.
  Eigen::Vector3d covariant(const Eigen::Vector3d& v_hat) const;
  /// Contravariant Piola transform (face elements): J v_hat / det.
  Eigen::Vector3d contravariant(const Eigen::Vector3d& v_hat) const;
};

AffineMap reference_map(const Mesh& mesh, Index cell);

/// Geometry of one cell needed by every local basis.
struct CellGeometry {
  Eigen::Matrix<double, 3, 4> x;        // vertex coordinates (columns)
  Eigen::Matrix<double, 3, 4> grad_l;   // gradients of barycentric coords
  double volume = 0.0;

  Eigen::Vector3d point(const Eigen::Vector4d& bary) const { return x * bary; }
};

CellGeometry cell_geometry(const Mesh& mesh, Index cell);

double cell_volume(const Mesh& mesh, Index cell);

/// Plain-text dump: "vertices N" followed by coordinates, "cells M" followed
/// by vertex quadruples.
void write_mesh(std::ostream& os, const Mesh& mesh);

}  // namespace fhd

#endif  // FHD_MESH_HPP
