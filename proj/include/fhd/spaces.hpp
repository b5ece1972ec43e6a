#ifndef FHD_SPACES_HPP
#define FHD_SPACES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "fhd/mesh.hpp"

namespace fhd {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

using ScalarField = std::function<double(const Eigen::Vector3d&, double)>;
using VectorField =
    std::function<Eigen::Vector3d(const Eigen::Vector3d&, double)>;

enum class SpaceKind {
  VelocityMINI,  // vector P1 + cell bubble, zero trace
  PressureP1,    // scalar P1, zero mean
  AngularP1,     // vector P1, zero trace
  EdgeNE0,       // lowest-order Nedelec, tangential trace constrained
  FaceRT0,       // lowest-order Raviart-Thomas, normal trace constrained
  ConstP0,       // piecewise constants, zero mean
};

std::string_view to_string(SpaceKind kind);
bool is_vector_valued(SpaceKind kind);

/// Whether the DoFs sitting on boundary entities are essential (fixed).
/// Default: MINI/AngularP1/EdgeNE0/FaceRT0 constrained; P1/P0 free.
enum class BoundaryTrace { Default, Constrained, Free };

/// Global numbering of one finite element space.
///
/// DoFs are numbered over all mesh entities; boundary DoFs of zero-trace
/// spaces are flagged as constrained and get no free index. Vector H1 spaces
/// are stored component-blocked: dof = component * scalar_size + scalar dof.
/// MINI scalar dofs are the vertices followed by one bubble per cell.
struct DofMap {
  SpaceKind kind{};
  Index n_dofs = 0;
  int n_local = 0;
  Index scalar_size = 0;  // vector H1 spaces only
  std::vector<Index> cell_dofs;
  std::vector<std::int8_t> cell_signs;
  std::vector<std::uint8_t> constrained;
  std::vector<Index> free_index;
  std::vector<Index> free_dofs;
  bool zero_mean = false;
  /// Integral of each basis function (scalar spaces); borders the mean
  /// constraint row.
  Vector mean_weights;

  Index n_free() const { return static_cast<Index>(free_dofs.size()); }
  std::span<const Index> dofs(Index cell) const {
    return {cell_dofs.data() + static_cast<std::size_t>(cell) * n_local,
            static_cast<std::size_t>(n_local)};
  }
  std::span<const std::int8_t> signs(Index cell) const {
    return {cell_signs.data() + static_cast<std::size_t>(cell) * n_local,
            static_cast<std::size_t>(n_local)};
  }
};

DofMap build_dofmap(SpaceKind kind, const Mesh& mesh,
                    BoundaryTrace trace = BoundaryTrace::Default);

/// A discrete field: coefficients over all DoFs of its space (constrained
/// entries hold their prescribed values).
struct FeFunction {
  SpaceKind kind{};
  Vector coeffs;
  std::optional<double> time;
};

FeFunction zero_function(const DofMap& dofs);

/// Restrict a full coefficient vector to the free DoFs and back.
Vector gather_free(const DofMap& dofs, const Vector& full);
void scatter_free(const DofMap& dofs, const Vector& free, Vector& full);

/// Classical interpolants: nodal values for P1/MINI (bubbles zero), edge
/// circulations for NE0 (2-point Gauss), face fluxes for RT0 (3-point rule),
/// cell averages for P0 (mean removed when the space is zero-mean). All DoFs
/// are filled, including constrained ones.
FeFunction interpolate(const DofMap& dofs, const Mesh& mesh,
                       const VectorField& f, double t);
FeFunction interpolate(const DofMap& dofs, const Mesh& mesh,
                       const ScalarField& f, double t);

/// Sets every constrained coefficient to zero.
void clear_constrained(const DofMap& dofs, FeFunction& fe);

// ---------------------------------------------------------------------------
// Local basis evaluation

inline constexpr int kMaxLocal = 15;

/// All local basis functions of one cell at one point, already carrying the
/// global orientation signs.
///
/// `grad` stores the 3x3 Jacobian of a vector basis function column-major
/// (entry (r,c) = d_c v_r at row r + 3c); scalar spaces use rows 0..2 for the
/// gradient.
struct BasisTable {
  int n = 0;
  int value_dim = 1;
  Eigen::Matrix<double, 3, kMaxLocal> value;
  Eigen::Matrix<double, 9, kMaxLocal> grad;
  Eigen::Matrix<double, 3, kMaxLocal> curl;
  Eigen::Matrix<double, 1, kMaxLocal> div;
};

void eval_basis(const DofMap& dofs, Index cell, const CellGeometry& geo,
                const Eigen::Vector4d& bary, BasisTable& table);

/// Scalar shape functions behind the vector H1 spaces (VelocityMINI,
/// AngularP1): the barycentric coordinates, plus the cubic bubble for MINI.
/// Local DoF c * n + a is shape a times unit vector e_c. Returns n.
int scalar_h1_shapes(SpaceKind kind, const CellGeometry& geo,
                     const Eigen::Vector4d& bary, double* phi,
                     Eigen::Matrix<double, 3, 5>& dphi);

/// Value and derivatives of a discrete field at one point.
struct PointValue {
  Eigen::Vector3d value = Eigen::Vector3d::Zero();  // scalar fields: x()
  Eigen::Matrix3d grad = Eigen::Matrix3d::Zero();   // scalar fields: row 0
  Eigen::Vector3d curl = Eigen::Vector3d::Zero();
  double div = 0.0;
};

/// Combine a basis table with the cell's coefficients of `fe`.
PointValue combine(const DofMap& dofs, Index cell, const BasisTable& table,
                   const Vector& coeffs);

/// Same as eval_basis followed by combine, with a shortcut for the vector
/// H1 spaces.
PointValue eval_point(const DofMap& dofs, Index cell, const CellGeometry& geo,
                      const Eigen::Vector4d& bary, const Vector& coeffs);

PointValue eval(const FeFunction& fe, const DofMap& dofs, const Mesh& mesh,
                Index cell, const Eigen::Vector4d& bary);

// ---------------------------------------------------------------------------
// Integer incidence matrices of the discrete de Rham complex.

/// Edges x vertices: circulation of grad s along each edge.
SparseMatrix gradient_incidence(const Mesh& mesh);
/// Faces x edges: flux of curl z through each face.
SparseMatrix curl_incidence(const Mesh& mesh);
/// Cells x faces: integral over each cell of div m.
SparseMatrix divergence_incidence(const Mesh& mesh);

}  // namespace fhd

#endif  // FHD_SPACES_HPP
