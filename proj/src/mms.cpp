#include "fhd/mms.hpp"

#include <array>
#include <string>

#include "fhd/error.hpp"
#include "mms_generated.hpp"

namespace fhd {

namespace {

constexpr std::array<std::pair<ExactField, std::string_view>, 8> kFieldNames{{
    {ExactField::Velocity, "u"},
    {ExactField::Pressure, "p"},
    {ExactField::Angular, "omega"},
    {ExactField::Magnetization, "m"},
    {ExactField::Z, "z"},
    {ExactField::K, "k"},
    {ExactField::DemagField, "H"},
    {ExactField::Potential, "phi"},
}};

constexpr std::array<std::pair<Equation, std::string_view>, 4> kEquationNames{{
    {Equation::Momentum, "momentum"},
    {Equation::Angular, "angular"},
    {Equation::Magnetization, "magnetization"},
    {Equation::Gauss, "gauss"},
}};

VectorJet scale(const SpatialVectorJet& s, double g, double dg) {
  VectorJet j;
  j.value = g * s.value;
  j.dt = dg * s.value;
  j.grad = g * s.grad;
  j.laplacian = g * s.laplacian;
  j.grad_div = g * s.grad_div;
  return j;
}

ScalarJet scale(const SpatialScalarJet& s, double g, double dg) {
  return {g * s.value, dg * s.value, g * s.grad, g * s.laplacian};
}

}  // namespace

ExactField exact_field_from_string(std::string_view name) {
  for (const auto& [f, n] : kFieldNames)
    if (n == name) return f;
  throw InvalidArgument("unknown exact field '" + std::string(name) + "'");
}

Equation equation_from_string(std::string_view name) {
  for (const auto& [e, n] : kEquationNames)
    if (n == name) return e;
  throw InvalidArgument("unknown equation '" + std::string(name) + "'");
}

std::string_view to_string(ExactField f) {
  for (const auto& [g, n] : kFieldNames)
    if (g == f) return n;
  return "?";
}

bool is_scalar(ExactField f) {
  return f == ExactField::Pressure || f == ExactField::Potential;
}

Manufactured::Manufactured(int example, const ModelParams& params)
    : example_(example), params_(params) {
  if (example < 1 || example > 3)
    throw InvalidArgument("unknown example id " + std::to_string(example));
  params_.validate();
}

double Manufactured::time_factor(double t) const {
  switch (example_) {
    case 1: return std::sin(t);
    case 2: return std::exp(-t);
    default: return 1.0;
  }
}

double Manufactured::time_factor_dt(double t) const {
  switch (example_) {
    case 1: return std::cos(t);
    case 2: return -std::exp(-t);
    default: return 0.0;
  }
}

void Manufactured::require_exact(double t) const {
  if (!has_exact_solution() && t != 0.0)
    throw InvalidArgument("example 3 defines initial data only");
}

VectorJet Manufactured::velocity(const Eigen::Vector3d& x, double t) const {
  require_exact(t);
  return scale(mms_generated::velocity_profile(x), time_factor(t),
               time_factor_dt(t));
}

ScalarJet Manufactured::pressure(const Eigen::Vector3d& x, double t) const {
  if (!has_exact_solution())
    throw InvalidArgument("example 3 has no exact pressure");
  (void)t;
  return scale(mms_generated::pressure_profile(x), 1.0, 0.0);
}

VectorJet Manufactured::angular(const Eigen::Vector3d& x, double t) const {
  require_exact(t);
  return scale(mms_generated::rotation_profile(x), time_factor(t),
               time_factor_dt(t));
}

VectorJet Manufactured::magnetization(const Eigen::Vector3d& x,
                                      double t) const {
  require_exact(t);
  return scale(mms_generated::magnetization_profile(x), time_factor(t),
               time_factor_dt(t));
}

VectorJet Manufactured::demag_field(const Eigen::Vector3d& x, double t) const {
  if (!has_exact_solution())
    throw InvalidArgument("example 3 has no exact demagnetizing field");
  return scale(mms_generated::field_profile(x), time_factor(t),
               time_factor_dt(t));
}

ScalarJet Manufactured::potential(const Eigen::Vector3d& x, double t) const {
  if (!has_exact_solution())
    throw InvalidArgument("example 3 has no exact potential");
  return scale(mms_generated::potential_profile(x), time_factor(t),
               time_factor_dt(t));
}

Eigen::Vector3d Manufactured::z(const Eigen::Vector3d& x, double t) const {
  return velocity(x, t).value.cross(magnetization(x, t).value);
}

Eigen::Vector3d Manufactured::k(const Eigen::Vector3d& x, double t) const {
  return magnetization(x, t).curl();
}

Eigen::Vector3d Manufactured::value(ExactField f, const Eigen::Vector3d& x,
                                    double t) const {
  switch (f) {
    case ExactField::Velocity: return velocity(x, t).value;
    case ExactField::Pressure: return {pressure(x, t).value, 0.0, 0.0};
    case ExactField::Angular: return angular(x, t).value;
    case ExactField::Magnetization: return magnetization(x, t).value;
    case ExactField::Z: return z(x, t);
    case ExactField::K: return k(x, t);
    case ExactField::DemagField: return demag_field(x, t).value;
    case ExactField::Potential: return {potential(x, t).value, 0.0, 0.0};
  }
  throw InvalidArgument("unknown exact field");
}

Eigen::Vector3d Manufactured::momentum_forcing(const Eigen::Vector3d& x,
                                               double t) const {
  if (!has_exact_solution()) return Eigen::Vector3d::Zero();
  return mms_generated::momentum_forcing(x, time_factor(t), time_factor_dt(t),
                                         params_);
}

Eigen::Vector3d Manufactured::angular_forcing(const Eigen::Vector3d& x,
                                              double t) const {
  if (!has_exact_solution()) return Eigen::Vector3d::Zero();
  return mms_generated::angular_forcing(x, time_factor(t), time_factor_dt(t),
                                        params_);
}

Eigen::Vector3d Manufactured::magnetization_forcing(const Eigen::Vector3d& x,
                                                    double t) const {
  if (!has_exact_solution()) return Eigen::Vector3d::Zero();
  return mms_generated::magnetization_forcing(x, time_factor(t),
                                              time_factor_dt(t), params_);
}

double Manufactured::gauss_forcing(const Eigen::Vector3d& x, double t) const {
  if (!has_exact_solution()) return 0.0;
  return mms_generated::gauss_forcing(x, time_factor(t), time_factor_dt(t),
                                      params_);
}

VectorField Manufactured::vector_field(ExactField f) const {
  if (is_scalar(f))
    throw InvalidArgument("field '" + std::string(to_string(f)) +
                          "' is scalar");
  return [self = *this, f](const Eigen::Vector3d& x, double t) {
    return self.value(f, x, t);
  };
}

ScalarField Manufactured::scalar_field(ExactField f) const {
  if (!is_scalar(f))
    throw InvalidArgument("field '" + std::string(to_string(f)) +
                          "' is vector-valued");
  return [self = *this, f](const Eigen::Vector3d& x, double t) {
    return self.value(f, x, t).x();
  };
}

VectorField Manufactured::forcing_field(Equation e) const {
  switch (e) {
    case Equation::Momentum:
      return [self = *this](const Eigen::Vector3d& x, double t) {
        return self.momentum_forcing(x, t);
      };
    case Equation::Angular:
      return [self = *this](const Eigen::Vector3d& x, double t) {
        return self.angular_forcing(x, t);
      };
    case Equation::Magnetization:
      return [self = *this](const Eigen::Vector3d& x, double t) {
        return self.magnetization_forcing(x, t);
      };
    case Equation::Gauss: break;
  }
  throw InvalidArgument("the Gauss forcing is scalar; use div_he_field");
}

ScalarField Manufactured::div_he_field() const {
  return [self = *this](const Eigen::Vector3d& x, double t) {
    return self.gauss_forcing(x, t);
  };
}

Eigen::Vector3d exact(int example, ExactField field, const Eigen::Vector3d& x,
                      double t, const ModelParams& params) {
  return Manufactured(example, params).value(field, x, t);
}

Eigen::Vector3d exact(int example, std::string_view field,
                      const Eigen::Vector3d& x, double t,
                      const ModelParams& params) {
  return exact(example, exact_field_from_string(field), x, t, params);
}

Eigen::Vector3d forcing(int example, Equation eq, const Eigen::Vector3d& x,
                        double t, const ModelParams& params) {
  const Manufactured mf(example, params);
  switch (eq) {
    case Equation::Momentum: return mf.momentum_forcing(x, t);
    case Equation::Angular: return mf.angular_forcing(x, t);
    case Equation::Magnetization: return mf.magnetization_forcing(x, t);
    case Equation::Gauss: return {mf.gauss_forcing(x, t), 0.0, 0.0};
  }
  throw InvalidArgument("unknown equation");
}

}  // namespace fhd
