#ifndef FHD_STEPPER_HPP
#define FHD_STEPPER_HPP

#include <functional>
#include <memory>
#include <optional>

#include "fhd/forms.hpp"
#include "fhd/linsolve.hpp"
#include "fhd/mesh.hpp"
#include "fhd/spaces.hpp"

namespace fhd {

/// Boundary treatment of the spaces that admit a choice.
struct DiscretizationOptions {
  /// Tangential trace of the auxiliary NE0 fields z and k.
  BoundaryTrace edge_trace = BoundaryTrace::Free;
  /// Normal trace of the demagnetizing field H.
  BoundaryTrace field_trace = BoundaryTrace::Constrained;

  bool operator==(const DiscretizationOptions&) const = default;
};

/// The mesh together with the DoF maps of every unknown.
struct Discretization {
  Discretization(int K, DiscretizationOptions options = {});

  DiscretizationOptions options;
  Mesh mesh;
  DofMap velocity;       // u, MINI
  DofMap pressure;       // p~, P1 zero-mean
  DofMap angular;        // omega, vector P1
  DofMap magnetization;  // m, RT0 normal-zero
  DofMap edge;           // z and k, NE0
  DofMap field;          // H, RT0
  DofMap potential;      // phi, P0 zero-mean
};

struct State {
  FeFunction u, p, omega, m, z, k, H, phi;
  double t = 0.0;
  int step = 0;
};

State zero_state(const Discretization& disc);

/// Problem data. Empty closures mean zero.
struct Sources {
  VectorField u0, omega0, m0;
  VectorField f_u, f_omega, f_m;
  ScalarField div_he;
  /// Dirichlet trace of u; empty means no-slip.
  VectorField u_boundary;
};

/// Initial data, forcings and boundary data of a manufactured example.
Sources example_sources(int example, const ModelParams& params);

struct RunConfig {
  ModelParams params;
  int K = 4;
  double dt = 0.25;
  double T = 1.0;
  /// Quasi-Newton sweeps per step.
  int sweeps = 2;
  /// Iterate each step until the relative update drops below strict_tol.
  bool strict = false;
  double strict_tol = 1e-10;
  int max_strict_sweeps = 200;
  /// Manufactured example supplying data (1, 2, 3); 0 means none.
  int example = 1;
  /// Overrides div H_e of the example when set.
  ScalarField div_he;
  SolverOptions solver;
  DiscretizationOptions discretization;

  /// Throws ConfigError naming the offending key.
  void validate() const;
  int num_steps() const;
};

/// Per-step bookkeeping of the quasi-Newton iteration.
struct StepInfo {
  int sweeps = 0;
  // Largest relative change of the last sweep over the blocks (u, p),
  // omega and (m, z, k).
  double update = 0.0;
};

/// The decoupled time integrator. Constant matrices are assembled and
/// factorized once; the magnetization block, which depends on the frozen
/// velocity, is refactorized every sweep.
class Stepper {
 public:
  Stepper(const Discretization& disc, const ModelParams& params, double dt,
          Sources sources, SolverOptions solver = {});
  ~Stepper();
  Stepper(Stepper&&) noexcept;

  const Discretization& discretization() const { return disc_; }
  const ModelParams& params() const { return params_; }
  double dt() const { return dt_; }

  State initialize() const;

  /// (H, phi) from the magnetostatic saddle system with data m and
  /// div H_e(., t).
  std::pair<FeFunction, FeFunction> magnetostatic_step(const FeFunction& m,
                                                       double t) const;

  FeFunction angular_step(const FeFunction& u_minus,
                          const FeFunction& omega_minus,
                          const FeFunction& omega_prev,
                          const FeFunction& m_minus, const FeFunction& H,
                          double t) const;

  struct MagnetizationResult {
    FeFunction m, z, k;
  };
  MagnetizationResult magnetization_step(const FeFunction& u_minus,
                                         const FeFunction& m_prev,
                                         const FeFunction& m_minus,
                                         const FeFunction& omega,
                                         const FeFunction& H, double t) const;

  struct FlowResult {
    FeFunction u, p;
  };
  FlowResult ns_step(const FeFunction& u_prev, const FeFunction& u_minus,
                     const FeFunction& m, const FeFunction& k,
                     const FeFunction& H, const FeFunction& omega,
                     double t) const;

  /// One time step with a fixed number of sweeps, or until the relative
  /// update is below `strict_tol` when `strict` is set.
  State advance(const State& prev, int sweeps, bool strict = false,
                double strict_tol = 1e-10, int max_sweeps = 200,
                StepInfo* info = nullptr) const;

  /// Residual norms of the discrete constraints for a state.
  struct Residuals {
    double incompressibility = 0.0;  // |B^T u| / max(1, |u|)
    double magnetostatic = 0.0;      // |mu0 D(H + m) + Q_h div H_e|
    double k_consistency = 0.0;      // |M_U k - C^T m|
  };
  Residuals residuals(const State& s) const;

 private:
  struct Impl;
  const Discretization& disc_;
  ModelParams params_;
  double dt_;
  std::unique_ptr<Impl> impl_;
};

using StepSink = std::function<void(const State&, const StepInfo&)>;

/// Runs N = T/dt steps, calling `sink` with the initial state (info.sweeps
/// = 0) and after every step; returns the final state. Step failures carry
/// the step index.
State run(const RunConfig& config, const Discretization& disc,
          const StepSink& sink = {});
State run(const RunConfig& config, const StepSink& sink = {});

}  // namespace fhd

#endif  // FHD_STEPPER_HPP
