#ifndef FHD_QUADRATURE_HPP
#define FHD_QUADRATURE_HPP

#include <array>
#include <vector>

#include <Eigen/Core>

namespace fhd {

/// Quadrature rule on the reference tetrahedron. Points are barycentric
/// coordinates; weights are in reference-volume measure and sum to 1/6.
struct QuadratureRule {
  std::vector<Eigen::Vector4d> points;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return weights.size(); }
};

/// Gauss-Jacobi nodes/weights on [0,1] for the weight (1-x)^alpha, computed
/// with the Golub-Welsch eigenvalue method.
void gauss_jacobi(int n, double alpha, Eigen::VectorXd& nodes,
                  Eigen::VectorXd& weights);

/// Conical (collapsed) product rule exact for polynomials of total degree
/// <= `degree`. All weights are positive. Rules are cached per degree.
const QuadratureRule& tet_rule(int degree);

/// Gauss rules on edges ([0,1]) and faces (collapsed product on the
/// reference triangle) used by the edge and face interpolants. Both are
/// exact to degree 2 * kEntityRulePoints - 1, so DoFs are line and flux
/// integrals to near machine precision for smooth fields.
inline constexpr int kEntityRulePoints = 6;
struct EdgeRule {
  std::vector<double> s;
  std::vector<double> w;  // sum to 1 (multiply by edge length)
};
const EdgeRule& edge_rule();
struct FaceRule {
  std::vector<Eigen::Vector3d> bary;
  std::vector<double> w;  // sum to 1 (multiply by face area)
};
const FaceRule& face_rule();

}  // namespace fhd

#endif  // FHD_QUADRATURE_HPP
