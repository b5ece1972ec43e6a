#ifndef FHD_FORMS_HPP
#define FHD_FORMS_HPP

#include <functional>

#include <Eigen/Core>

#include "fhd/mesh.hpp"
#include "fhd/spaces.hpp"

namespace fhd {

/// Physical constants of the ferrofluid model (all strictly positive).
struct ModelParams {
  double rho = 1.0;
  double kappa = 1.0;
  double eta = 1.0;
  double zeta = 1.0;
  double mu0 = 1.0;
  double sigma = 1.0;
  double eta_p = 1.0;     // eta'
  double lambda_p = 1.0;  // lambda'
  double tau = 1.0;
  double chi0 = 1.0;

  void validate() const;
  bool operator==(const ModelParams&) const = default;
};

/// Differential operator applied to a basis function inside a pairing.
enum class Op { Value, Grad, Curl, Div };

/// Polynomial degree of `op` applied to the local basis of `kind`; throws
/// InvalidArgument when the operator does not exist on that space.
int op_degree(SpaceKind kind, Op op);

enum class FormKind {
  Mass,          // (u, v)
  GradGrad,      // (grad u, grad v)
  CurlCurl,      // (curl u, curl v), vector H1
  DivDiv,        // (div u, div v), vector H1 or RT0
  PressureDiv,   // (q, div v): PressureP1 trial, VelocityMINI test
  PotentialDiv,  // (phi, div G): ConstP0 trial, FaceRT0 test
  CurlPairing,   // (curl Theta, F): EdgeNE0 trial, FaceRT0 test
  ScalarCurl,    // (s, curl v): AngularP1 trial, VelocityMINI test
};

/// Matrix A(i,j) = integral of op_test(psi_i) . op_trial(phi_j) over all
/// DoFs (constrained ones included). Integration is exact for the
/// polynomial integrand unless `degree` overrides it.
SparseMatrix assemble_pairing(Op trial_op, const DofMap& trial, Op test_op,
                              const DofMap& test, const Mesh& mesh,
                              int degree = -1);

SparseMatrix assemble_bilinear(FormKind form, const DofMap& trial,
                               const DofMap& test, const Mesh& mesh);

/// Keeps only the rows of free test DoFs and the columns of free trial DoFs.
SparseMatrix free_block(const SparseMatrix& full, const DofMap& trial,
                        const DofMap& test);
/// Free test rows, constrained trial columns (moves lifted boundary values
/// to the right-hand side).
SparseMatrix lifting_block(const SparseMatrix& full, const DofMap& trial,
                           const DofMap& test);

/// A frozen discrete field entering a nonlinear term: the field itself
/// (Op::Value) or its curl (Op::Curl).
struct FrozenField {
  const FeFunction& fe;
  const DofMap& dofs;
  Op op = Op::Value;
};

/// One side of a cross-product pairing.
struct Operand {
  const DofMap& dofs;
  Op op = Op::Value;
};

/// Skew convection matrix N(i,j) = b(w, phi_j, psi_i) with
/// b(w,v,s) = 1/2[((w.grad)v, s) - ((w.grad)s, v)].
/// The space must be VelocityMINI or AngularP1; w lives in VelocityMINI.
SparseMatrix assemble_convection(const FeFunction& w, const DofMap& w_dofs,
                                 const DofMap& space, const Mesh& mesh);

/// X(i,j) = c(v, phi_j, phi_i) on FaceRT0 with
/// c(v,m,F) = 1/2[(m.v, div F) - (F.v, div m)].
SparseMatrix assemble_c_form(const FeFunction& v, const DofMap& v_dofs,
                             const DofMap& rt0, const Mesh& mesh);

/// M(i,j) = ((w x a_j), b_i).
SparseMatrix assemble_cross(const FrozenField& w, const Operand& a,
                            const Operand& b, const Mesh& mesh);

/// Coefficients multiplying each operator of the test function at one
/// quadrature point: the integrand is value.psi + grad:grad psi +
/// curl.curl psi + div*div psi. Scalar spaces read value.x().
struct TestWeights {
  Eigen::Vector3d value = Eigen::Vector3d::Zero();
  Eigen::Matrix<double, 9, 1> grad = Eigen::Matrix<double, 9, 1>::Zero();
  Eigen::Vector3d curl = Eigen::Vector3d::Zero();
  double div = 0.0;
};

struct QpContext {
  Index cell;
  const CellGeometry& geo;
  const Eigen::Vector4d& bary;
  Eigen::Vector3d x;
};

using QpIntegrand = std::function<void(const QpContext&, TestWeights&)>;

/// Generic linear functional over a test space, full DoF numbering.
Vector assemble_functional(const DofMap& test, const Mesh& mesh, int degree,
                           const QpIntegrand& integrand);

inline constexpr int kDefaultLoadDegree = 8;

/// (f, psi_i) for an analytic vector (or scalar) field at time t.
Vector assemble_load(const VectorField& f, const DofMap& test,
                     const Mesh& mesh, double t,
                     int degree = kDefaultLoadDegree);
Vector assemble_load(const ScalarField& f, const DofMap& test,
                     const Mesh& mesh, double t,
                     int degree = kDefaultLoadDegree);

/// Evaluates a discrete field at quadrature points of a given cell.
class FieldSampler {
 public:
  FieldSampler(const FeFunction& fe, const DofMap& dofs);
  PointValue at(Index cell, const CellGeometry& geo,
                const Eigen::Vector4d& bary) const;
  int degree(Op op) const { return op_degree(dofs_.kind, op); }

 private:
  const FeFunction& fe_;
  const DofMap& dofs_;
};

}  // namespace fhd

#endif  // FHD_FORMS_HPP
