#ifndef FHD_DIAGNOSTICS_HPP
#define FHD_DIAGNOSTICS_HPP

#include <array>
#include <span>
#include <string_view>

#include "fhd/forms.hpp"
#include "fhd/mms.hpp"
#include "fhd/stepper.hpp"

namespace fhd {

/// E = rho|u|^2 + rho kappa|omega|^2 + |m|^2 + mu0|H|^2.
struct EnergyBreakdown {
  double velocity = 0.0;
  double angular = 0.0;
  double magnetization = 0.0;
  double field = 0.0;

  double total() const { return velocity + angular + magnetization + field; }
};

/// Terms of the dissipation F, each already multiplied by its coefficient.
struct DissipationBreakdown {
  double velocity_gradient = 0.0;  // eta |grad u|^2
  double angular_gradient = 0.0;   // eta' |grad omega|^2
  double angular_div = 0.0;        // (eta' + lambda') |div omega|^2
  double magnetization = 0.0;      // |m|^2 / tau
  double field = 0.0;              // c_H |H|^2
  double magnetization_div = 0.0;  // sigma |div m|^2
  double curl_m = 0.0;             // sigma |k|^2
  double field_div = 0.0;          // mu0 sigma |div H|^2
  double micropolar = 0.0;         // zeta |curl u - 2 omega|^2

  double total() const;
};

struct EnergyRecord {
  int n = 0;
  double t = 0.0;
  EnergyBreakdown energy;
  DissipationBreakdown dissipation;

  double E() const { return energy.total(); }
  double F() const { return dissipation.total(); }
};

/// Coefficient of |H|^2 in F: (chi0 + mu0 (1 + chi0)) / tau.
double field_dissipation_coefficient(const ModelParams& p);

EnergyBreakdown energy(const State& s, const Discretization& d,
                       const ModelParams& p);
DissipationBreakdown dissipation(const State& s, const Discretization& d,
                                 const ModelParams& p);
EnergyRecord energy_record(const State& s, const Discretization& d,
                           const ModelParams& p);

/// Squared L2 norm of op(f) by quadrature exact for the squared integrand.
double squared_norm(const FeFunction& f, const DofMap& dofs, const Mesh& mesh,
                    Op op = Op::Value);

/// The twelve relative errors, in table order.
enum class ErrorColumn {
  VelocityL2,
  VelocityH1,
  Pressure,
  MagnetizationL2,
  MagnetizationDiv,
  FieldL2,
  FieldDiv,
  Z,
  K,
  AngularL2,
  AngularH1,
  Potential,
};
inline constexpr int kErrorColumns = 12;
using ErrorRecord = std::array<double, kErrorColumns>;

/// Column labels: u_L2, u_H1, p_L2, m_L2, divm_L2, H_L2, divH_L2, z_L2, k_L2,
/// omega_L2, omega_H1, phi_L2.
std::string_view column_name(ErrorColumn c);
std::string_view column_name(int c);

inline constexpr int kErrorQuadratureDegree = 10;

/// Relative errors against the exact solution at time t. The potential is
/// compared up to its mean; H1 columns are seminorms.
ErrorRecord errors(const State& s, const Discretization& d,
                   const Manufactured& exact, double t);

/// Least-squares slope of log(error) against log(h).
double convergence_order(std::span<const double> h,
                         std::span<const double> error);
/// Slope between the last two pairs.
double last_pair_order(std::span<const double> h,
                       std::span<const double> error);

}  // namespace fhd

#endif  // FHD_DIAGNOSTICS_HPP
