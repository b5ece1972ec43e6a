#ifndef FHD_MMS_HPP
#define FHD_MMS_HPP

#include <cmath>
#include <string_view>

#include <Eigen/Core>

#include "fhd/forms.hpp"
#include "fhd/spaces.hpp"

namespace fhd {

/// Spatial profiles of the manufactured solutions, written generically so
/// they can be evaluated with automatic-differentiation scalars. Every
/// time-dependent field is g(t) times its profile; the modified pressure is
/// time-independent.
template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

namespace profile {

template <typename S>
Vec3<S> velocity(const Vec3<S>& x) {
  using std::sin;
  const double pi = M_PI;
  return Vec3<S>(sin(pi * x(1)), sin(pi * x(2)), sin(pi * x(0)));
}

template <typename S>
S pressure(const Vec3<S>& x) {
  return 120.0 * x(0) * x(0) * x(1) * x(2) - 40.0 * x(1) * x(1) * x(1) * x(2) -
         40.0 * x(1) * x(2) * x(2) * x(2);
}

template <typename S>
Vec3<S> rotation(const Vec3<S>& x) {
  const S b = (x(0) * x(0) - x(0)) * (x(1) * x(1) - x(1)) * (x(2) * x(2) - x(2));
  return Vec3<S>(b, S(0.0), S(0.0));
}

template <typename S>
Vec3<S> magnetization(const Vec3<S>& x) {
  using std::sin;
  const double pi = M_PI;
  return Vec3<S>(sin(pi * x(0)) * sin(pi * x(1)) * sin(pi * x(2)), S(0.0), S(0.0));
}

template <typename S>
S potential(const Vec3<S>& x) {
  const S a = x(0) * x(0) - x(0);
  const S b = x(1) * x(1) - x(1);
  const S c = x(2) * x(2) - x(2);
  return 1000.0 * a * a * b * b * c * c;
}

/// The demagnetizing field exactly as listed with the examples; it equals
/// the gradient of `potential`.
template <typename S>
Vec3<S> field(const Vec3<S>& x) {
  const S a = x(0) * x(0) - x(0);
  const S b = x(1) * x(1) - x(1);
  const S c = x(2) * x(2) - x(2);
  return Vec3<S>(2000.0 * (2.0 * x(0) - 1.0) * a * b * b * c * c,
                 2000.0 * a * a * (2.0 * x(1) - 1.0) * b * c * c,
                 2000.0 * a * a * b * b * (2.0 * x(2) - 1.0) * c);
}

}  // namespace profile

/// Value and spatial derivatives of a vector profile: grad(r,c) = d_c v_r.
struct SpatialVectorJet {
  Eigen::Vector3d value = Eigen::Vector3d::Zero();
  Eigen::Matrix3d grad = Eigen::Matrix3d::Zero();
  Eigen::Vector3d laplacian = Eigen::Vector3d::Zero();
  Eigen::Vector3d grad_div = Eigen::Vector3d::Zero();

  double div() const { return grad.trace(); }
  Eigen::Vector3d curl() const {
    return {grad(2, 1) - grad(1, 2), grad(0, 2) - grad(2, 0),
            grad(1, 0) - grad(0, 1)};
  }
};

struct SpatialScalarJet {
  double value = 0.0;
  Eigen::Vector3d grad = Eigen::Vector3d::Zero();
  double laplacian = 0.0;
};

/// A time-dependent exact field with its derivatives at one point.
struct VectorJet {
  Eigen::Vector3d value = Eigen::Vector3d::Zero();
  Eigen::Vector3d dt = Eigen::Vector3d::Zero();
  Eigen::Matrix3d grad = Eigen::Matrix3d::Zero();
  Eigen::Vector3d laplacian = Eigen::Vector3d::Zero();
  Eigen::Vector3d grad_div = Eigen::Vector3d::Zero();

  double div() const { return grad.trace(); }
  Eigen::Vector3d curl() const {
    return {grad(2, 1) - grad(1, 2), grad(0, 2) - grad(2, 0),
            grad(1, 0) - grad(0, 1)};
  }
};

struct ScalarJet {
  double value = 0.0;
  double dt = 0.0;
  Eigen::Vector3d grad = Eigen::Vector3d::Zero();
  double laplacian = 0.0;
};

/// Named exact fields; scalar fields are returned in the x component.
enum class ExactField {
  Velocity,
  Pressure,
  Angular,
  Magnetization,
  Z,
  K,
  DemagField,
  Potential
};

/// Equations that carry a manufactured source term.
enum class Equation { Momentum, Angular, Magnetization, Gauss };

ExactField exact_field_from_string(std::string_view name);
Equation equation_from_string(std::string_view name);
std::string_view to_string(ExactField f);
bool is_scalar(ExactField f);

/// The manufactured problems: 1 (sin t), 2 (exp(-t)) and 3, which defines
/// initial data only and carries no source terms.
class Manufactured {
 public:
  Manufactured(int example, const ModelParams& params);

  int example() const { return example_; }
  const ModelParams& params() const { return params_; }
  /// False for the initial-value problem of example 3.
  bool has_exact_solution() const { return example_ != 3; }
  /// Whether the velocity trace on the boundary is nonzero (lifted data).
  bool has_velocity_lifting() const { return has_exact_solution(); }

  double time_factor(double t) const;
  double time_factor_dt(double t) const;

  VectorJet velocity(const Eigen::Vector3d& x, double t) const;
  ScalarJet pressure(const Eigen::Vector3d& x, double t) const;
  VectorJet angular(const Eigen::Vector3d& x, double t) const;
  VectorJet magnetization(const Eigen::Vector3d& x, double t) const;
  VectorJet demag_field(const Eigen::Vector3d& x, double t) const;
  ScalarJet potential(const Eigen::Vector3d& x, double t) const;
  Eigen::Vector3d z(const Eigen::Vector3d& x, double t) const;
  Eigen::Vector3d k(const Eigen::Vector3d& x, double t) const;

  /// Field value (scalars in x()). Example 3 only provides the velocity,
  /// angular velocity and magnetization at t = 0.
  Eigen::Vector3d value(ExactField f, const Eigen::Vector3d& x, double t) const;

  Eigen::Vector3d momentum_forcing(const Eigen::Vector3d& x, double t) const;
  Eigen::Vector3d angular_forcing(const Eigen::Vector3d& x, double t) const;
  Eigen::Vector3d magnetization_forcing(const Eigen::Vector3d& x, double t) const;
  /// div H_e.
  double gauss_forcing(const Eigen::Vector3d& x, double t) const;

  VectorField vector_field(ExactField f) const;
  ScalarField scalar_field(ExactField f) const;
  VectorField forcing_field(Equation e) const;
  ScalarField div_he_field() const;

 private:
  void require_exact(double t) const;

  int example_;
  ModelParams params_;
};

/// Free-function access mirroring the class, for one-off evaluations.
Eigen::Vector3d exact(int example, ExactField field, const Eigen::Vector3d& x,
                      double t, const ModelParams& params = {});
Eigen::Vector3d exact(int example, std::string_view field,
                      const Eigen::Vector3d& x, double t,
                      const ModelParams& params = {});
Eigen::Vector3d forcing(int example, Equation eq, const Eigen::Vector3d& x,
                        double t, const ModelParams& params = {});

}  // namespace fhd

#endif  // FHD_MMS_HPP
