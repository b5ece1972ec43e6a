#include <gtest/gtest.h>

#include <random>

#include "fhd/error.hpp"
#include "fhd/mms.hpp"
#include "fhd/quadrature.hpp"
#include "mms_oracle.hpp"

using namespace fhd;
using Eigen::Matrix3d;
using Eigen::Vector3d;

using namespace fhd::oracle;

TEST(Mms, SpecExamples) {
  const Vector3d c(0.5, 0.5, 0.5);
  EXPECT_LT((exact(1, ExactField::Velocity, c, M_PI / 2) - Vector3d(1, 1, 1)).norm(), 1e-15);
  for (ExactField f : {ExactField::Velocity, ExactField::Angular, ExactField::Magnetization,
                       ExactField::DemagField, ExactField::Potential})
    EXPECT_EQ(exact(1, f, Vector3d(0.3, 0.6, 0.7), 0.0).norm(), 0.0);
  EXPECT_EQ(exact(1, "p", c, 0.0), exact(1, "p", c, 0.8));
  EXPECT_EQ(forcing(1, Equation::Gauss, Vector3d(0.2, 0.4, 0.9), 0.0).x(), 0.0);
  // sin(0) = 0 and sin'(0) = 1: only rho * U + grad p~ survive
  ModelParams p;
  p.rho = 2.5;
  const Vector3d fu = forcing(1, Equation::Momentum, c, 0.0, p);
  EXPECT_LT((fu - Vector3d(p.rho + 30.0, p.rho - 5.0, p.rho - 5.0)).norm(), 1e-12);
}

TEST(Mms, UnknownIdsThrow) {
  EXPECT_THROW(Manufactured(0, {}), InvalidArgument);
  EXPECT_THROW(Manufactured(4, {}), InvalidArgument);
  EXPECT_THROW(exact(1, "velocity", Vector3d::Zero(), 0.0), InvalidArgument);
  EXPECT_THROW(equation_from_string("energy"), InvalidArgument);
  EXPECT_THROW(exact(3, ExactField::Pressure, Vector3d::Zero(), 0.0), InvalidArgument);
  EXPECT_THROW(exact(3, ExactField::Velocity, Vector3d::Zero(), 0.5), InvalidArgument);
  ModelParams bad;
  bad.sigma = 0.0;
  EXPECT_THROW(Manufactured(1, bad), InvalidArgument);
}

TEST(Mms, ExampleThreeInitialDataAndNoSources) {
  const Manufactured m3(3, {});
  const Vector3d x(0.3, 0.2, 0.6);
  EXPECT_LT((m3.value(ExactField::Velocity, x, 0.0) - profile::velocity<double>(x)).norm(), 1e-15);
  EXPECT_LT((m3.value(ExactField::Magnetization, x, 0.0) - profile::magnetization<double>(x)).norm(), 1e-15);
  EXPECT_EQ(m3.momentum_forcing(x, 0.4).norm(), 0.0);
  EXPECT_EQ(m3.gauss_forcing(x, 0.4), 0.0);
  EXPECT_FALSE(m3.has_exact_solution());
}

TEST(Mms, GeneratedJetsMatchAutomaticDifferentiation) {
  Sampler s;
  const Manufactured m(2, {});
  for (int n = 0; n < 100; ++n) {
    const Vector3d x = s.point();
    const struct {
      SpatialVectorJet ad;
      VectorJet gen;
    } cases[] = {{ad_vector_jet(U, x), m.velocity(x, 0.0)},
                 {ad_vector_jet(W, x), m.angular(x, 0.0)},
                 {ad_vector_jet(Mg, x), m.magnetization(x, 0.0)},
                 {ad_vector_jet(Hf, x), m.demag_field(x, 0.0)}};
    for (const auto& c : cases) {
      EXPECT_LT(rel(c.gen.value, c.ad.value), 1e-12);
      EXPECT_LT((c.gen.grad - c.ad.grad).norm() / (1 + c.ad.grad.norm()), 1e-12);
      EXPECT_LT(rel(c.gen.laplacian, c.ad.laplacian), 1e-12);
      EXPECT_LT(rel(c.gen.grad_div, c.ad.grad_div), 1e-12);
    }
    const SpatialScalarJet p = ad_scalar_jet(P, x);
    EXPECT_NEAR(m.pressure(x, 0.0).value, p.value, 1e-12);
    EXPECT_LT(rel(m.pressure(x, 0.0).grad, p.grad), 1e-12);
    const SpatialScalarJet phi = ad_scalar_jet(Phi, x);
    EXPECT_NEAR(m.potential(x, 0.0).value, phi.value, 1e-12);
    EXPECT_NEAR(m.potential(x, 0.0).laplacian, phi.laplacian, 1e-10);
  }
}

TEST(Mms, FieldIsGradientOfPotentialAndCurlFree) {
  Sampler s;
  for (int n = 0; n < 100; ++n) {
    const Vector3d x = s.point();
    const SpatialScalarJet phi = ad_scalar_jet(Phi, x);
    EXPECT_LT((profile::field<double>(x) - phi.grad).norm(), 1e-12);
    const SpatialVectorJet h = ad_vector_jet(Hf, x);
    EXPECT_LT(curl_of(h.grad).norm(), 1e-12);
    EXPECT_NEAR(h.div(), phi.laplacian, 1e-10);
  }
}

TEST(Mms, BoundaryConditionsOfExactFields) {
  Sampler s;
  const Manufactured m(1, {});
  for (int n = 0; n < 50; ++n) {
    Vector3d x = s.point();
    const int axis = n % 3;
    x(axis) = (n / 3) % 2;
    const double t = 0.7;
    EXPECT_LT(std::abs(m.value(ExactField::Magnetization, x, t)(axis)), 1e-15);
    EXPECT_LT(std::abs(m.value(ExactField::DemagField, x, t)(axis)), 1e-15);
    EXPECT_LT(m.value(ExactField::Angular, x, t).norm(), 1e-15);
    EXPECT_LT(m.value(ExactField::Z, x, t).norm(), 1e-15);
  }
}

TEST(Mms, PressureHasZeroMean) {
  // exact on a single Kuhn cube decomposition with a degree-5 rule
  const Mesh mesh = build_uniform_mesh(1);
  const auto& rule = tet_rule(5);
  double total = 0.0;
  for (Index c = 0; c < mesh.num_cells(); ++c) {
    const CellGeometry g = cell_geometry(mesh, c);
    for (std::size_t q = 0; q < rule.size(); ++q)
      total += 6 * g.volume * rule.weights[q] * profile::pressure<double>(g.point(rule.points[q]));
  }
  EXPECT_NEAR(total, 0.0, 1e-13);
}

TEST(Mms, AnalyticDerivativesMatchFiniteDifferences) {
  Sampler s;
  for (int example : {1, 2}) {
    const Manufactured m(example, {});
    for (int n = 0; n < 50; ++n) {
      const Vector3d x = s.point();
      EXPECT_LT(finite_difference_defect(m, x, s.time(2.0)), 1e-6);
    }
  }
}

TEST(Mms, ForcingsZeroTheStrongResiduals) {
  Sampler s;
  for (int example : {1, 2}) {
    for (int n = 0; n < 100; ++n) {
      const ModelParams p = s.params();
      const Manufactured m(example, p);
      const Vector3d x = s.point();
      const StrongResiduals r = strong_residuals(m, p, x, s.time(2.0));
      EXPECT_LT(r.momentum, 1e-10);
      EXPECT_LT(r.angular, 1e-10);
      EXPECT_LT(r.magnetization, 1e-10);
      EXPECT_LT(r.gauss, 1e-10);
      EXPECT_LT(r.divergence, 1e-12);
    }
  }
}

TEST(Mms, ClosuresMatchPointEvaluation) {
  const Manufactured m(1, {});
  const Vector3d x(0.1, 0.5, 0.8);
  EXPECT_EQ(m.vector_field(ExactField::K)(x, 0.3), m.k(x, 0.3));
  EXPECT_EQ(m.scalar_field(ExactField::Potential)(x, 0.3), m.potential(x, 0.3).value);
  EXPECT_EQ(m.forcing_field(Equation::Angular)(x, 0.3), m.angular_forcing(x, 0.3));
  EXPECT_EQ(m.div_he_field()(x, 0.3), m.gauss_forcing(x, 0.3));
  EXPECT_THROW(m.vector_field(ExactField::Pressure), InvalidArgument);
  EXPECT_THROW(m.scalar_field(ExactField::Velocity), InvalidArgument);
  EXPECT_THROW(m.forcing_field(Equation::Gauss), InvalidArgument);
}

TEST(Mms, InitialMagnetizationInterpolatesToZero) {
  const Mesh mesh = build_uniform_mesh(2);
  const DofMap rt = build_dofmap(SpaceKind::FaceRT0, mesh);
  const Manufactured m(1, {});
  EXPECT_EQ(interpolate(rt, mesh, m.vector_field(ExactField::Magnetization), 0.0).coeffs.norm(), 0.0);
}
